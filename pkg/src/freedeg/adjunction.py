"""Restriction to injective maps and its left adjoint, which adds
degeneracies freely.

An N-simplex of ``plus(X)`` is a pair ``(S, s)`` with ``S`` an N'-simplex of
``X`` and ``s: [N] ->> [N']`` a surjection.  A poset map ``g: [M] -> [N]``
acts by factoring ``s o g = f' o s'`` (surjection then injection) and sending
``(S, s)`` to ``(f'^* S, s')``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from freedeg import delta
from freedeg.delta import PosetMap
from freedeg.sset import (
    SemisimplicialSet,
    SimplicialMap,
    SimplicialSet,
    build,
    compatible_boundaries,
)


class PlusSimplex(NamedTuple):
    base: int
    surj: PosetMap

    @property
    def base_dim(self) -> int:
        return self.surj.target

    @property
    def is_nondegenerate(self) -> bool:
        return self.surj.is_identity


def restrict(X: SimplicialSet) -> SemisimplicialSet:
    """Forget the degeneracies."""
    return SemisimplicialSet(X.faces, X.labels)


def plus_act(X: SemisimplicialSet, p: PlusSimplex, g: PosetMap) -> PlusSimplex:
    """Structure map of ``plus(X)`` along ``g``, computed from the pair formula."""
    epi, mono = delta.epi_mono_factorize(delta.compose(p.surj, g))
    return PlusSimplex(X.act_mono(mono, p.base), epi)


def plus(X: SemisimplicialSet) -> SimplicialSet:
    """Free simplicial set on a semisimplicial set, truncated at ``X.trunc_dim``.

    Simplices are labelled by :class:`PlusSimplex` and ordered by
    (base dimension, base id, surjection).
    """
    levels = []
    for N in range(X.trunc_dim + 1):
        level = []
        for Np in range(N + 1):
            surjs = delta.enumerate_maps(N, Np, "epi")
            level.extend(PlusSimplex(b, s) for b in X.ids(Np) for s in surjs)
        levels.append(level)
    return build(
        levels,
        lambda p, n, i: plus_act(X, p, delta.coface(n, i)),
        lambda p, n, i: PlusSimplex(p.base, delta.compose(p.surj, delta.codegeneracy(n, i))),
    )


def plus_index(P: SimplicialSet) -> list[dict[PlusSimplex, int]]:
    return [{lab: k for k, lab in enumerate(level)} for level in P.labels]


def counit(X: SimplicialSet, source: SimplicialSet | None = None) -> SimplicialMap:
    """The map ``plus(restrict(X)) -> X`` sending ``(S, s)`` to ``s^* S``."""
    P = plus(restrict(X)) if source is None else source
    comps = tuple(
        tuple(X.act(p.surj, p.base) for p in P.labels[n]) for n in range(P.trunc_dim + 1)
    )
    return SimplicialMap(P, X, comps)


def unit(X: SemisimplicialSet, target: SimplicialSet | None = None) -> SimplicialMap:
    """The semisimplicial map ``X -> restrict(plus(X))``, ``x -> (x, id)``."""
    P = plus(X) if target is None else target
    index = plus_index(P)
    comps = tuple(
        tuple(index[n][PlusSimplex(x, delta.identity(n))] for x in X.ids(n))
        for n in range(X.trunc_dim + 1)
    )
    return SimplicialMap(X, restrict(P), comps)


def plus_map(
    phi: SimplicialMap, source: SimplicialSet, target: SimplicialSet
) -> SimplicialMap:
    """Apply ``plus`` to a semisimplicial map: ``(S, s) -> (phi(S), s)``."""
    index = plus_index(target)
    comps = tuple(
        tuple(index[n][PlusSimplex(phi(p.base_dim, p.base), p.surj)] for p in source.labels[n])
        for n in range(source.trunc_dim + 1)
    )
    return SimplicialMap(source, target, comps)


@dataclass
class TriangleReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"checked": self.checked, "violations": self.violations, "ok": self.ok}


def _identity_violations(m: SimplicialMap, what: str) -> tuple[int, list[str]]:
    out = []
    checked = 0
    for n, comp in enumerate(m.components):
        for sid, img in enumerate(comp):
            checked += 1
            if img != sid:
                out.append(f"{what}: ({n},{sid}) -> ({n},{img})")
    if m.source.counts() != m.target.counts():
        out.append(f"{what}: source and target sizes differ")
    return checked, out


def check_triangle_identities(
    X: SemisimplicialSet | None = None, Y: SimplicialSet | None = None
) -> TriangleReport:
    """Verify both zigzag identities simplex by simplex.

    For ``X``: ``counit(plus X) o plus(unit X) = id``.
    For ``Y``: ``restrict(counit Y) o unit(restrict Y) = id``.
    """
    report = TriangleReport()
    if X is not None:
        PX = plus(X)
        eta = unit(X, PX)
        PRPX = plus(restrict(PX))
        composite = plus_map(eta, PX, PRPX).then(counit(PX, PRPX))
        for m, name in ((eta, "unit"), (composite, "zigzag-plus")):
            report.violations.extend(m.violations())
        n, bad = _identity_violations(composite, "plus-side")
        report.checked += n
        report.violations.extend(bad)
    if Y is not None:
        RY = restrict(Y)
        PRY = plus(RY)
        eps = counit(Y, PRY)
        report.violations.extend(eps.violations())
        eta = unit(RY, PRY)
        composite = eta.then(SimplicialMap(restrict(PRY), RY, eps.components))
        n, bad = _identity_violations(composite, "restrict-side")
        report.checked += n
        report.violations.extend(bad)
    return report


def random_semisimplicial(
    rng: random.Random, max_per_dim: int = 5, trunc_dim: int = 4
) -> SemisimplicialSet:
    """Random semisimplicial set with at most ``max_per_dim`` simplices per level.

    Each new simplex gets a boundary drawn uniformly from the compatible
    ones, so the result satisfies the face identities by construction.
    """
    faces: list[tuple[tuple[int, ...], ...]] = [tuple(() for _ in range(rng.randint(1, max_per_dim)))]
    for n in range(1, trunc_dim + 1):
        partial = SemisimplicialSet(tuple(faces))
        options = list(compatible_boundaries(partial, n))
        if not options:
            faces.append(())
            continue
        count = rng.randint(0 if n > 1 else 1, max_per_dim)
        faces.append(tuple(rng.choice(options) for _ in range(count)))
    return SemisimplicialSet(tuple(faces))
