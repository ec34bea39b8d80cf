"""Truncated simplicial and semisimplicial sets stored as index tables.

A simplex is addressed by ``(dim, id)`` with ids dense per dimension.  Face
tables are ``faces[n][id] = (d_0, ..., d_n)``; degeneracy tables are
``degens[n][id] = (s_0, ..., s_n)`` for ``n < trunc_dim``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

from freedeg import delta
from freedeg.delta import PosetMap

DEFAULT_TRUNC_DIM = 6

Simplex = tuple[int, int]  # (dim, id)


class IntegrityError(ValueError):
    """A table violates the presheaf identities."""


class ClosureError(ValueError):
    """A simplex set offered as a subcomplex is not closed."""


class TruncationError(ValueError):
    """An operation needs data above the truncation dimension."""


@dataclass(frozen=True, eq=False)
class SemisimplicialSet:
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    labels: tuple[tuple[Any, ...], ...] | None = field(default=None, repr=False)

    @property
    def trunc_dim(self) -> int:
        return len(self.faces) - 1

    def count(self, n: int) -> int:
        return len(self.faces[n]) if 0 <= n <= self.trunc_dim else 0

    def counts(self) -> list[int]:
        return [len(level) for level in self.faces]

    def ids(self, n: int) -> range:
        return range(self.count(n))

    def face(self, n: int, sid: int, i: int) -> int:
        return self.faces[n][sid][i]

    def label(self, n: int, sid: int) -> Any:
        return self.labels[n][sid] if self.labels is not None else (n, sid)

    def act_mono(self, f: PosetMap, sid: int) -> int:
        """Pull the ``f.target``-simplex ``sid`` back along an injection."""
        n = f.target
        for i in delta.mono_as_cofaces(f):
            sid = self.faces[n][sid][i]
            n -= 1
        return sid

    def vertices(self, n: int, sid: int) -> tuple[int, ...]:
        return tuple(
            self.act_mono(PosetMap(1, n + 1, (i,)), sid) for i in range(n + 1)
        )

    def face_violations(self) -> list[str]:
        problems = []
        for n in range(self.trunc_dim + 1):
            below = self.count(n - 1)
            for sid, fs in enumerate(self.faces[n]):
                if len(fs) != (n + 1 if n > 0 else 0):
                    problems.append(f"({n},{sid}) has {len(fs)} faces")
                    continue
                if any(not 0 <= x < below for x in fs):
                    problems.append(f"({n},{sid}) has a dangling face")
                    continue
                if n < 2:
                    continue
                for j in range(n + 1):
                    for i in range(j):
                        a = self.faces[n - 1][fs[j]][i]
                        b = self.faces[n - 1][fs[i]][j - 1]
                        if a != b:
                            problems.append(f"d{i}d{j} != d{j - 1}d{i} on ({n},{sid})")
        return problems

    def validate(self) -> None:
        problems = self.face_violations()
        if problems:
            raise IntegrityError("; ".join(problems[:5]))

    def truncate(self, dim: int) -> SemisimplicialSet:
        labels = self.labels[: dim + 1] if self.labels is not None else None
        return SemisimplicialSet(self.faces[: dim + 1], labels)

    def same_tables(self, other: SemisimplicialSet) -> bool:
        return type(self) is type(other) and self.faces == other.faces


@dataclass(frozen=True, eq=False)
class SimplicialSet(SemisimplicialSet):
    degens: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def degen(self, n: int, sid: int, i: int) -> int:
        if n >= self.trunc_dim:
            raise TruncationError(f"s_{i} of a {n}-simplex exceeds trunc_dim {self.trunc_dim}")
        return self.degens[n][sid][i]

    def act(self, f: PosetMap, sid: int) -> int:
        """Simplicial operator ``f^*`` applied to the ``f.target``-simplex ``sid``."""
        if f.source > self.trunc_dim:
            raise TruncationError(f"{f} lands above trunc_dim {self.trunc_dim}")
        epi, mono = delta.epi_mono_factorize(f)
        sid = self.act_mono(mono, sid)
        n = epi.target
        for i in delta.epi_as_codegeneracies(epi):
            sid = self.degens[n][sid][i]
            n += 1
        return sid

    @cached_property
    def _degenerate(self) -> tuple[frozenset[int], ...]:
        hit: list[set[int]] = [set() for _ in range(self.trunc_dim + 1)]
        for n, level in enumerate(self.degens):
            for row in level:
                hit[n + 1].update(row)
        return tuple(frozenset(h) for h in hit)

    def is_degenerate(self, n: int, sid: int) -> bool:
        return sid in self._degenerate[n]

    def nondegenerate(self, n: int) -> list[int]:
        deg = self._degenerate[n]
        return [sid for sid in range(self.count(n)) if sid not in deg]

    @cached_property
    def _normal_forms(self) -> tuple[tuple[tuple[int, int, PosetMap], ...], ...]:
        table: list[list[tuple[int, int, PosetMap]]] = []
        for n in range(self.trunc_dim + 1):
            row = []
            for sid in range(self.count(n)):
                candidates = set()
                for i in range(n):
                    tau = self.faces[n][sid][i]
                    if self.degens[n - 1][tau][i] == sid:
                        ydim, yid, s = table[n - 1][tau]
                        candidates.add((ydim, yid, delta.compose(s, delta.codegeneracy(n - 1, i))))
                if not candidates:
                    row.append((n, sid, delta.identity(n)))
                elif len(candidates) == 1:
                    row.append(candidates.pop())
                else:
                    raise IntegrityError(
                        f"({n},{sid}) has {len(candidates)} distinct Eilenberg-Zilber decompositions"
                    )
            table.append(row)
        return tuple(tuple(r) for r in table)

    def normalize(self, n: int, sid: int) -> tuple[int, PosetMap]:
        """Return ``(y, s)`` with ``y`` nondegenerate and ``sid = s^* y``."""
        ydim, yid, s = self._normal_forms[n][sid]
        return yid, s

    def degeneracy_violations(self) -> list[str]:
        D = self.trunc_dim
        problems = []
        if len(self.degens) != D:
            return [f"expected {D} degeneracy levels, got {len(self.degens)}"]
        for n in range(D):
            above = self.count(n + 1)
            for sid, ss in enumerate(self.degens[n]):
                if len(ss) != n + 1 or any(not 0 <= y < above for y in ss):
                    problems.append(f"({n},{sid}) has malformed degeneracies")
                    continue
                for j in range(n + 1):
                    up = self.faces[n + 1][ss[j]]
                    if up[j] != sid or up[j + 1] != sid:
                        problems.append(f"d s_{j} != id on ({n},{sid})")
                    for i in range(n + 2):
                        if i < j:
                            want = self.degens[n - 1][self.faces[n][sid][i]][j - 1]
                        elif i > j + 1:
                            want = self.degens[n - 1][self.faces[n][sid][i - 1]][j]
                        else:
                            continue
                        if up[i] != want:
                            problems.append(f"d{i}s{j} identity fails on ({n},{sid})")
                    if n + 1 < D:
                        for i in range(j + 1):
                            lhs = self.degens[n + 1][ss[j]][i]
                            rhs = self.degens[n + 1][ss[i]][j + 1]
                            if lhs != rhs:
                                problems.append(f"s{i}s{j} != s{j + 1}s{i} on ({n},{sid})")
        return problems

    def validate(self) -> None:
        problems = self.face_violations()
        if not problems:
            problems = self.degeneracy_violations()
        if problems:
            raise IntegrityError("; ".join(problems[:5]))
        self._normal_forms  # noqa: B018  (raises on broken Eilenberg-Zilber data)

    def truncate(self, dim: int) -> SimplicialSet:
        labels = self.labels[: dim + 1] if self.labels is not None else None
        return SimplicialSet(self.faces[: dim + 1], labels, self.degens[:dim])

    def same_tables(self, other: SemisimplicialSet) -> bool:
        return (
            isinstance(other, SimplicialSet)
            and self.faces == other.faces
            and self.degens == other.degens
        )


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Dimensionwise components ``components[n][id]`` of a map of presheaves."""

    source: SemisimplicialSet
    target: SemisimplicialSet
    components: tuple[tuple[int, ...], ...]

    def __call__(self, n: int, sid: int) -> int:
        return self.components[n][sid]

    def violations(self) -> list[str]:
        src, tgt = self.source, self.target
        problems = []
        for n in range(src.trunc_dim + 1):
            comp = self.components[n]
            if len(comp) != src.count(n):
                return [f"component {n} has wrong length"]
            for sid in range(src.count(n)):
                img = comp[sid]
                for i in range(n + 1 if n else 0):
                    if self.components[n - 1][src.faces[n][sid][i]] != tgt.faces[n][img][i]:
                        problems.append(f"d{i} not preserved at ({n},{sid})")
                if (
                    isinstance(src, SimplicialSet)
                    and isinstance(tgt, SimplicialSet)
                    and n < src.trunc_dim
                ):
                    for i in range(n + 1):
                        if self.components[n + 1][src.degens[n][sid][i]] != tgt.degens[n][img][i]:
                            problems.append(f"s{i} not preserved at ({n},{sid})")
        return problems

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise IntegrityError("; ".join(problems[:5]))

    def is_injective(self) -> bool:
        return all(len(set(c)) == len(c) for c in self.components)

    def is_surjective(self) -> bool:
        return all(
            set(c) == set(range(self.target.count(n)))
            for n, c in enumerate(self.components)
        )

    def then(self, other: SimplicialMap) -> SimplicialMap:
        """``other o self``."""
        comps = tuple(
            tuple(other.components[n][x] for x in comp)
            for n, comp in enumerate(self.components)
        )
        return SimplicialMap(self.source, other.target, comps)

    def is_identity(self) -> bool:
        return self.source.counts() == self.target.counts() and all(
            comp == tuple(range(len(comp))) for comp in self.components
        )


def build(
    levels: Sequence[Sequence[Hashable]],
    face: Callable[[Hashable, int, int], Hashable],
    degen: Callable[[Hashable, int, int], Hashable] | None = None,
) -> SemisimplicialSet:
    """Tabulate a presheaf given by labelled simplices and structure functions.

    ``face(label, n, i)`` is the label of ``d_i`` of an ``n``-simplex and
    ``degen(label, n, i)`` that of ``s_i``.  Without ``degen`` the result is
    semisimplicial.
    """
    index = [{lab: k for k, lab in enumerate(level)} for level in levels]
    faces = []
    for n, level in enumerate(levels):
        if n == 0:
            faces.append(tuple(() for _ in level))
        else:
            faces.append(
                tuple(tuple(index[n - 1][face(lab, n, i)] for i in range(n + 1)) for lab in level)
            )
    labels = tuple(tuple(level) for level in levels)
    if degen is None:
        return SemisimplicialSet(tuple(faces), labels)
    degens = tuple(
        tuple(tuple(index[n + 1][degen(lab, n, i)] for i in range(n + 1)) for lab in levels[n])
        for n in range(len(levels) - 1)
    )
    return SimplicialSet(tuple(faces), labels, degens)


def _drop(t: tuple, i: int) -> tuple:
    return t[:i] + t[i + 1 :]


def _repeat(t: tuple, i: int) -> tuple:
    return t[: i + 1] + t[i:]


def standard_simplex(k: int, D: int = DEFAULT_TRUNC_DIM) -> SimplicialSet:
    """Delta^k truncated at D; n-simplices are monotone maps [n] -> [k]."""
    levels = [
        [f.values for f in delta.enumerate_maps(n, k, "all")] for n in range(D + 1)
    ]
    return build(levels, lambda v, n, i: _drop(v, i), lambda v, n, i: _repeat(v, i))


def boundary_simplex(k: int, D: int = DEFAULT_TRUNC_DIM) -> SimplicialSet:
    """The boundary of Delta^k: simplices whose image misses some vertex."""
    levels = [
        [f.values for f in delta.enumerate_maps(n, k, "all") if len(set(f.values)) <= k]
        for n in range(D + 1)
    ]
    return build(levels, lambda v, n, i: _drop(v, i), lambda v, n, i: _repeat(v, i))


def nerve(C, D: int = DEFAULT_TRUNC_DIM) -> SimplicialSet:
    """Nerve of a finite category: n-simplices are chains of n composable arrows."""
    C.validate_shape()
    out = {a: [] for a in range(len(C.objects))}
    for m in range(C.num_morphisms):
        out[C.src(m)].append(m)
    levels: list[list[Hashable]] = [list(range(len(C.objects)))]
    if D >= 1:
        levels.append([(m,) for m in range(C.num_morphisms)])
    for _ in range(2, D + 1):
        levels.append([ch + (m,) for ch in levels[-1] for m in out[C.tgt(ch[-1])]])

    def face(ch, n, i):
        if n == 1:
            return C.tgt(ch[0]) if i == 0 else C.src(ch[0])
        if i == 0:
            return ch[1:]
        if i == n:
            return ch[:-1]
        return ch[: i - 1] + (C.compose(ch[i], ch[i - 1]),) + ch[i + 1 :]

    def degen(ch, n, i):
        if n == 0:
            return (C.identity(ch),)
        obj = C.src(ch[i]) if i < n else C.tgt(ch[-1])
        return ch[:i] + (C.identity(obj),) + ch[i:]

    return build(levels, face, degen)


def disjoint_union(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    if X.trunc_dim != Y.trunc_dim:
        raise TruncationError("disjoint union needs equal truncation dimensions")
    faces, degens = [], []
    for n in range(X.trunc_dim + 1):
        shift = X.count(n - 1) if n else 0
        faces.append(X.faces[n] + tuple(tuple(f + shift for f in fs) for fs in Y.faces[n]))
    for n in range(X.trunc_dim):
        shift = X.count(n + 1)
        degens.append(X.degens[n] + tuple(tuple(s + shift for s in ss) for ss in Y.degens[n]))
    return SimplicialSet(tuple(faces), None, tuple(degens))


def product(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """Levelwise product; the pair (x, y) gets id ``x * |Y_n| + y``."""
    if X.trunc_dim != Y.trunc_dim:
        raise TruncationError("product needs equal truncation dimensions")
    faces, degens = [], []
    for n in range(X.trunc_dim + 1):
        w = Y.count(n - 1)
        faces.append(
            tuple(
                tuple(a * w + b for a, b in zip(fx, fy))
                for fx, fy in itertools.product(X.faces[n], Y.faces[n])
            )
        )
    for n in range(X.trunc_dim):
        w = Y.count(n + 1)
        degens.append(
            tuple(
                tuple(a * w + b for a, b in zip(sx, sy))
                for sx, sy in itertools.product(X.degens[n], Y.degens[n])
            )
        )
    return SimplicialSet(tuple(faces), None, tuple(degens))


def closure(X: SemisimplicialSet, simplices: Iterable[Simplex]) -> set[Simplex]:
    """Smallest subcomplex containing ``simplices`` (faces and degeneracies)."""
    todo = list(simplices)
    seen: set[Simplex] = set()
    while todo:
        n, sid = todo.pop()
        if (n, sid) in seen:
            continue
        seen.add((n, sid))
        if n > 0:
            todo.extend((n - 1, f) for f in X.faces[n][sid])
        if isinstance(X, SimplicialSet) and n < X.trunc_dim:
            todo.extend((n + 1, s) for s in X.degens[n][sid])
    return seen


def collapse(
    X: SimplicialSet, subcomplexes: Sequence[Iterable[Simplex]]
) -> tuple[SimplicialSet, SimplicialMap]:
    """Pushout collapsing each listed subcomplex to its own point.

    Returns the quotient and the quotient map.  Simplices outside every
    subcomplex survive untouched; each subcomplex becomes the constant
    simplex of a fresh vertex in every dimension.
    """
    groups = [set(s) for s in subcomplexes]
    owner: dict[Simplex, int] = {}
    for g, sub in enumerate(groups):
        if closure(X, sub) != sub:
            raise ClosureError(f"subcomplex #{g} is not closed under faces and degeneracies")
        for simplex in sub:
            if simplex in owner:
                raise ClosureError(f"subcomplexes #{owner[simplex]} and #{g} overlap")
            owner[simplex] = g

    D = X.trunc_dim
    comps: list[tuple[int, ...]] = []
    point_ids: list[dict[int, int]] = []
    survivors: list[list[int]] = []
    for n in range(D + 1):
        ids: dict[int, int] = {}
        comp = []
        kept = []
        for sid in range(X.count(n)):
            g = owner.get((n, sid))
            if g is None:
                comp.append(len(kept) + len(ids))
                kept.append(sid)
            else:
                if g not in ids:
                    ids[g] = len(kept) + len(ids)
                comp.append(ids[g])
        nxt = len(kept) + len(ids)
        for g in range(len(groups)):
            if g not in ids:
                ids[g] = nxt
                nxt += 1
        comps.append(tuple(comp))
        point_ids.append(ids)
        survivors.append(kept)

    size = [len(survivors[n]) + len(groups) for n in range(D + 1)]
    faces: list[list[tuple[int, ...]]] = [[()] * size[n] for n in range(D + 1)]
    degens: list[list[tuple[int, ...]]] = [[()] * size[n] for n in range(D)]
    for n in range(D + 1):
        for sid in survivors[n]:
            new = comps[n][sid]
            if n:
                faces[n][new] = tuple(comps[n - 1][f] for f in X.faces[n][sid])
            if n < D:
                degens[n][new] = tuple(comps[n + 1][s] for s in X.degens[n][sid])
        for g, new in point_ids[n].items():
            if n:
                faces[n][new] = (point_ids[n - 1][g],) * (n + 1)
            if n < D:
                degens[n][new] = (point_ids[n + 1][g],) * (n + 1)
    Y = SimplicialSet(
        tuple(tuple(f) for f in faces), None, tuple(tuple(s) for s in degens)
    )
    return Y, SimplicialMap(X, Y, tuple(comps))


def is_connected(X: SemisimplicialSet) -> bool:
    n0 = X.count(0)
    if n0 == 0:
        return False
    parent = list(range(n0))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for d0, d1 in X.faces[1] if X.trunc_dim >= 1 else ():
        parent[find(d0)] = find(d1)
    return len({find(v) for v in range(n0)}) == 1


def compatible_boundaries(
    X: SemisimplicialSet, n: int, missing: int | None = None
) -> Iterable[tuple[int | None, ...]]:
    """Tuples ``(f_0, ..., f_n)`` of (n-1)-simplices satisfying
    ``d_i f_j = d_{j-1} f_i`` for ``i < j``; position ``missing`` is None.
    """
    if n < 1 or n > X.trunc_dim + 1:
        raise TruncationError(f"no {n}-dimensional boundaries in trunc_dim {X.trunc_dim}")
    below = range(X.count(n - 1))
    faces = X.faces[n - 1]
    slots = [j for j in range(n + 1) if j != missing]
    chosen: list[int | None] = [None] * (n + 1)

    def fits(j: int, f: int) -> bool:
        if n < 2:
            return True
        for i in range(j):
            if i == missing:
                continue
            if faces[f][i] != faces[chosen[i]][j - 1]:
                return False
        return True

    def extend(k: int):
        if k == len(slots):
            yield tuple(chosen)
            return
        j = slots[k]
        for f in below:
            if fits(j, f):
                chosen[j] = f
                yield from extend(k + 1)
        chosen[j] = None

    yield from extend(0)
