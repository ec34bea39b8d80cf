"""Finite categories given by explicit object and morphism lists."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence

from freedeg import delta


class CategoryError(ValueError):
    """Composition or unit data is inconsistent."""


class FiniteCategory:
    """Objects and morphisms are dense integers; labels are kept for reports.

    ``morphisms[m] = (src, tgt, label)``; labels are unique within each
    hom-set.  Composition is either a complete table keyed by ``(g, f)``
    (meaning ``g o f``) or a callable on labels that is tabulated lazily.
    """

    def __init__(
        self,
        objects: Sequence[Hashable],
        morphisms: Sequence[tuple[int, int, Hashable]],
        identities: Sequence[int],
        table: dict[tuple[int, int], int] | None = None,
        compose_labels: Callable[[Hashable, Hashable], Hashable] | None = None,
        name: str = "",
    ):
        if (table is None) == (compose_labels is None):
            raise ValueError("give exactly one of table or compose_labels")
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.identities = tuple(identities)
        self.name = name
        self._table = dict(table) if table is not None else {}
        self._compose_labels = compose_labels
        self._index = {(s, t, lab): m for m, (s, t, lab) in enumerate(self.morphisms)}
        self._hom: dict[tuple[int, int], list[int]] = {}
        for m, (s, t, _) in enumerate(self.morphisms):
            self._hom.setdefault((s, t), []).append(m)

    @classmethod
    def generate(
        cls,
        objects: Sequence[Hashable],
        hom: Callable[[Hashable, Hashable], Iterable[Hashable]],
        compose: Callable[[Hashable, Hashable], Hashable],
        identity: Callable[[Hashable], Hashable],
        name: str = "",
    ) -> FiniteCategory:
        """Build from label-level structure: ``compose(g, f)`` means ``g o f``."""
        objects = list(objects)
        morphisms = []
        for a, b in itertools.product(range(len(objects)), repeat=2):
            for lab in hom(objects[a], objects[b]):
                morphisms.append((a, b, lab))
        index = {(s, t, lab): m for m, (s, t, lab) in enumerate(morphisms)}
        identities = [index[(a, a, identity(objects[a]))] for a in range(len(objects))]
        return cls(objects, morphisms, identities, compose_labels=compose, name=name)

    @property
    def num_morphisms(self) -> int:
        return len(self.morphisms)

    def src(self, m: int) -> int:
        return self.morphisms[m][0]

    def tgt(self, m: int) -> int:
        return self.morphisms[m][1]

    def label(self, m: int) -> Hashable:
        return self.morphisms[m][2]

    def identity(self, a: int) -> int:
        return self.identities[a]

    def is_identity(self, m: int) -> bool:
        return self.identities[self.src(m)] == m

    def hom(self, a: int, b: int) -> list[int]:
        return self._hom.get((a, b), [])

    def morphism(self, a: int, b: int, label: Hashable) -> int:
        return self._index[(a, b, label)]

    def compose(self, g: int, f: int) -> int:
        """``g o f``."""
        key = (g, f)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        if self.tgt(f) != self.src(g):
            raise CategoryError(f"morphisms {g} and {f} are not composable")
        if self._compose_labels is None:
            raise CategoryError(f"composition table has no entry for {g} o {f}")
        lab = self._compose_labels(self.label(g), self.label(f))
        try:
            h = self._index[(self.src(f), self.tgt(g), lab)]
        except KeyError:
            raise CategoryError(f"composite {lab!r} is not a listed morphism") from None
        self._table[key] = h
        return h

    def composition_table(self) -> list[list[int | None]]:
        """Dense matrix ``T[g][f] = g o f`` (None where not composable)."""
        n = self.num_morphisms
        out: list[list[int | None]] = [[None] * n for _ in range(n)]
        for f in range(n):
            for g in self.out_of(self.tgt(f)):
                out[g][f] = self.compose(g, f)
        return out

    def out_of(self, a: int) -> list[int]:
        return [m for b in range(len(self.objects)) for m in self.hom(a, b)]

    def validate_shape(self) -> None:
        for a, m in enumerate(self.identities):
            if self.src(m) != a or self.tgt(m) != a:
                raise CategoryError(f"identity of object {a} has wrong endpoints")

    def violations(self) -> list[str]:
        """Exhaustive check of the unit and associativity laws."""
        problems = []
        try:
            self.validate_shape()
        except CategoryError as exc:
            return [str(exc)]
        for f in range(self.num_morphisms):
            try:
                if self.compose(self.identity(self.tgt(f)), f) != f:
                    problems.append(f"left unit fails at {f}")
                if self.compose(f, self.identity(self.src(f))) != f:
                    problems.append(f"right unit fails at {f}")
            except CategoryError as exc:
                problems.append(str(exc))
        for f in range(self.num_morphisms):
            for g in self.out_of(self.tgt(f)):
                for h in self.out_of(self.tgt(g)):
                    try:
                        if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                            problems.append(f"associativity fails at ({h},{g},{f})")
                    except CategoryError as exc:
                        problems.append(str(exc))
        return problems

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise CategoryError("; ".join(problems[:5]))

    def __repr__(self) -> str:
        return (
            f"FiniteCategory({self.name or '?'}: {len(self.objects)} objects, "
            f"{self.num_morphisms} morphisms)"
        )


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: tuple[int, ...]
    on_morphisms: tuple[int, ...]

    def violations(self) -> list[str]:
        S, T = self.source, self.target
        problems = []
        for a in range(len(S.objects)):
            if self.on_morphisms[S.identity(a)] != T.identity(self.on_objects[a]):
                problems.append(f"identity of {a} not preserved")
        for f in range(S.num_morphisms):
            Ff = self.on_morphisms[f]
            if (T.src(Ff), T.tgt(Ff)) != (self.on_objects[S.src(f)], self.on_objects[S.tgt(f)]):
                problems.append(f"endpoints of {f} not preserved")
            for g in S.out_of(S.tgt(f)):
                if self.on_morphisms[S.compose(g, f)] != T.compose(self.on_morphisms[g], Ff):
                    problems.append(f"composite {g} o {f} not preserved")
        return problems

    def is_fully_faithful(self) -> bool:
        S, T = self.source, self.target
        for a, b in itertools.product(range(len(S.objects)), repeat=2):
            image = sorted(self.on_morphisms[m] for m in S.hom(a, b))
            if image != sorted(T.hom(self.on_objects[a], self.on_objects[b])):
                return False
        return True

    def is_bijective_on_objects(self) -> bool:
        return sorted(self.on_objects) == list(range(len(self.target.objects)))


def full_subcategory(
    C: FiniteCategory, keep: Callable[[int], bool], name: str = ""
) -> tuple[FiniteCategory, Functor]:
    """Full subcategory on objects satisfying ``keep``, with its inclusion."""
    objs = [a for a in range(len(C.objects)) if keep(a)]
    new_of = {a: i for i, a in enumerate(objs)}
    morphs, old = [], []
    for a in objs:
        for b in objs:
            for m in C.hom(a, b):
                morphs.append((new_of[a], new_of[b], C.label(m)))
                old.append(m)
    new_m = {m: i for i, m in enumerate(old)}
    table = {}
    for f_new, f in enumerate(old):
        for g in C.out_of(C.tgt(f)):
            if g in new_m:
                table[(new_m[g], f_new)] = new_m[C.compose(g, f)]
    sub = FiniteCategory(
        [C.objects[a] for a in objs],
        morphs,
        [new_m[C.identity(a)] for a in objs],
        table=table,
        name=name or f"sub({C.name})",
    )
    return sub, Functor(sub, C, tuple(objs), tuple(old))


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, tuple(range(len(C.objects))), tuple(range(C.num_morphisms)))


def from_table(
    objects: Sequence[Any],
    morphisms: Sequence[tuple[int, int]],
    compose: Sequence[Sequence[int | None]],
    ids: Sequence[int],
    name: str = "",
) -> FiniteCategory:
    """Build from the dense serialized form ``compose[g][f] = g o f``."""
    table = {}
    for g, row in enumerate(compose):
        for f, h in enumerate(row):
            if h is not None:
                table[(g, f)] = h
    morphs = [(s, t, m) for m, (s, t) in enumerate(morphisms)]
    return FiniteCategory(objects, morphs, ids, table=table, name=name)


def poset_category(k: int) -> FiniteCategory:
    """The linear order [k] as a category."""
    return FiniteCategory.generate(
        list(range(k + 1)),
        lambda a, b: [(a, b)] if a <= b else [],
        lambda g, f: (f[0], g[1]),
        lambda a: (a, a),
        name=f"[{k}]",
    )


def terminal_category() -> FiniteCategory:
    return poset_category(0)


def walking_isomorphism() -> FiniteCategory:
    """Objects a, b with inverse arrows f: a -> b and g: b -> a."""
    objects = ["a", "b"]
    morphisms = [(0, 0, "1a"), (1, 1, "1b"), (0, 1, "f"), (1, 0, "g")]
    t = {
        (0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3, (0, 3): 3,
        (3, 2): 0, (2, 3): 1,
    }
    return FiniteCategory(objects, morphisms, [0, 1], table=t, name="Iso")


def injective_ordinals(max_n: int) -> FiniteCategory:
    """Delta_inj restricted to the objects [0], ..., [max_n]."""
    return FiniteCategory.generate(
        list(range(max_n + 1)),
        lambda a, b: [f.values for f in delta.enumerate_maps(a, b, "mono")] if a <= b else [],
        lambda g, f: tuple(g[v] for v in f),
        lambda a: tuple(range(a + 1)),
        name=f"Delta_inj<={max_n}",
    )


def injective_ordinal_power(factors: int, max_total: int) -> FiniteCategory:
    """Full subcategory of ``Delta_inj^factors`` on ``([p_0], ..., [p_r])``
    with ``sum(p_i + 1) <= max_total + 1``.
    """
    objects = [
        p
        for p in itertools.product(range(max_total + 1), repeat=factors)
        if sum(x + 1 for x in p) <= max_total + 1
    ]

    def hom(a, b):
        if any(x > y for x, y in zip(a, b)):
            return []
        return list(
            itertools.product(
                *[[f.values for f in delta.enumerate_maps(x, y, "mono")] for x, y in zip(a, b)]
            )
        )

    return FiniteCategory.generate(
        objects,
        hom,
        lambda g, f: tuple(tuple(gi[v] for v in fi) for gi, fi in zip(g, f)),
        lambda a: tuple(tuple(range(x + 1)) for x in a),
        name=f"Delta_inj^{factors}<={max_total}",
    )


def initial_objects(C: FiniteCategory) -> list[int]:
    n = len(C.objects)
    return [a for a in range(n) if all(len(C.hom(a, b)) == 1 for b in range(n))]


def terminal_objects(C: FiniteCategory) -> list[int]:
    n = len(C.objects)
    return [a for a in range(n) if all(len(C.hom(b, a)) == 1 for b in range(n))]
