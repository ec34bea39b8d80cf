"""Necklaces, bounded comma categories of necklaces over a simplicial set,
and the finality and mapping-space checks built on them.

A necklace ``T = Delta^{m_0} v ... v Delta^{m_a}`` has vertices ``0..M``
with ``M = sum(m_i)``; bead ``i`` spans ``joins[i]..joins[i+1]``.  The
one-vertex necklace is represented by the single bead ``(0,)``.  A necklace
map is a monotone vertex map fixing both endpoints and sending each bead
into some bead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

from freedeg import delta
from freedeg.adjunction import plus, restrict
from freedeg.category import FiniteCategory, Functor, full_subcategory, injective_ordinal_power
from freedeg.delta import PosetMap
from freedeg.homotopy.groups import DEFAULT_BUDGET
from freedeg.homotopy.probe import contractibility_probe
from freedeg.sset import SimplicialMap, SimplicialSet, build, collapse, nerve, standard_simplex

DEFAULT_BOUND = 3
DEFAULT_MAX_BEADS = 3


@dataclass(frozen=True)
class Necklace:
    beads: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.beads != (0,) and (not self.beads or min(self.beads) < 1):
            raise ValueError(f"beads must be positive (or the point necklace (0,)): {self.beads}")

    @property
    def total_dim(self) -> int:
        return sum(self.beads)

    @property
    def joins(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.beads, initial=0))

    def bead_containing(self, lo: int, hi: int) -> int | None:
        J = self.joins
        for j in range(len(self.beads)):
            if J[j] <= lo and hi <= J[j + 1]:
                return j
        return None


class NecklaceMapOver(NamedTuple):
    """A necklace with one simplex of X per bead; ``vertices`` is the
    induced vertex sequence in X."""

    necklace: Necklace
    images: tuple[int, ...]
    vertices: tuple[int, ...]

    def describe(self) -> dict:
        return {"beads": list(self.necklace.beads), "images": list(self.images)}


def compositions(total: int, max_parts: int) -> list[tuple[int, ...]]:
    out = []
    for parts in range(1, min(total, max_parts) + 1):
        for cuts in itertools.combinations(range(1, total), parts - 1):
            edges = (0,) + cuts + (total,)
            out.append(tuple(b - a for a, b in zip(edges, edges[1:])))
    return out


def _endpoint_index(X: SimplicialSet, max_dim: int) -> list[dict[tuple[int, int], list[int]]]:
    index = []
    for m in range(max_dim + 1):
        table: dict[tuple[int, int], list[int]] = {}
        first, last = PosetMap(1, m + 1, (0,)), PosetMap(1, m + 1, (m,))
        for sid in range(X.count(m)):
            key = (X.act_mono(first, sid), X.act_mono(last, sid))
            table.setdefault(key, []).append(sid)
        index.append(table)
    return index


def necklace_objects(
    X: SimplicialSet, x: int, y: int, max_total_dim: int, max_beads: int = DEFAULT_MAX_BEADS
) -> list[NecklaceMapOver]:
    """Every map from a necklace of total dimension <= bound sending the
    first vertex to ``x`` and the last to ``y``."""
    if max_total_dim > X.trunc_dim:
        raise ValueError(f"bound {max_total_dim} exceeds trunc_dim {X.trunc_dim}")
    ends = _endpoint_index(X, max_total_dim)
    vertex_cache: dict[tuple[int, int], tuple[int, ...]] = {}

    def verts(m: int, sid: int) -> tuple[int, ...]:
        key = (m, sid)
        if key not in vertex_cache:
            vertex_cache[key] = X.vertices(m, sid)
        return vertex_cache[key]

    out = []
    if x == y:
        out.append(NecklaceMapOver(Necklace((0,)), (x,), (x,)))
    shapes = [c for M in range(1, max_total_dim + 1) for c in compositions(M, max_beads)]
    for beads in shapes:
        def extend(i: int, start: int, images: tuple[int, ...], vs: tuple[int, ...]):
            m = beads[i]
            last = i == len(beads) - 1
            for (a, b), sids in ends[m].items():
                if a != start or (last and b != y):
                    continue
                for sid in sids:
                    nv = vs + verts(m, sid)[1:]
                    if last:
                        out.append(NecklaceMapOver(Necklace(beads), images + (sid,), nv))
                    else:
                        extend(i + 1, b, images + (sid,), nv)

        extend(0, x, (), (x,))
    return out


def necklace_maps(
    X: SimplicialSet, src: NecklaceMapOver, tgt: NecklaceMapOver
) -> list[tuple[int, ...]]:
    """Vertex maps of the necklace maps ``src -> tgt`` commuting with the maps to X."""
    T, U = src.necklace, tgt.necklace
    M, Mp = T.total_dim, U.total_dim
    if M == 0:
        return [(0,)] if Mp == 0 else []
    found = []
    JT, JU = T.joins, U.joins
    for middle in itertools.combinations_with_replacement(range(Mp + 1), M - 1):
        phi = (0,) + middle + (Mp,)
        if any(src.vertices[t] != tgt.vertices[phi[t]] for t in range(M + 1)):
            continue
        ok = True
        for i, m in enumerate(T.beads):
            lo, hi = phi[JT[i]], phi[JT[i + 1]]
            j = U.bead_containing(lo, hi)
            if j is None:
                ok = False
                break
            psi = PosetMap(m + 1, U.beads[j] + 1, tuple(v - JU[j] for v in phi[JT[i] : JT[i + 1] + 1]))
            if X.act(psi, tgt.images[j]) != src.images[i]:
                ok = False
                break
        if ok:
            found.append(phi)
    return found


def comma_category(
    X: SimplicialSet,
    x: int,
    y: int,
    max_total_dim: int = DEFAULT_BOUND,
    max_beads: int = DEFAULT_MAX_BEADS,
) -> FiniteCategory:
    """The category of necklaces over X from x to y, truncated by total dimension."""
    objects = necklace_objects(X, x, y, max_total_dim, max_beads)
    return FiniteCategory.generate(
        objects,
        lambda a, b: necklace_maps(X, a, b),
        lambda g, f: tuple(g[v] for v in f),
        lambda a: tuple(range(a.necklace.total_dim + 1)),
        name=f"(Nec|X)_{x},{y}<={max_total_dim}",
    )


def is_flagged(X: SimplicialSet, obj: NecklaceMapOver) -> bool:
    """Every bead lands on a nondegenerate simplex."""
    return all(not X.is_degenerate(m, sid) for m, sid in zip(obj.necklace.beads, obj.images))


def full_subcategory_N(C: FiniteCategory, X: SimplicialSet) -> tuple[FiniteCategory, Functor]:
    return full_subcategory(C, lambda a: is_flagged(X, C.objects[a]), name="N")


def vertex_ranks(P: SimplicialSet) -> dict[int, int]:
    """Vertex id -> position in [k] for a localization built here."""
    return {vid: lab.vertex for vid, lab in enumerate(P.labels[0])}


def full_subcategory_F(
    C: FiniteCategory,
    X: SimplicialSet,
    x: int,
    y: int,
    ranks: dict[int, int] | None = None,
) -> tuple[FiniteCategory, Functor]:
    """Single-bead objects of C hitting every vertex ranked between x and y."""
    ranks = vertex_ranks(X) if ranks is None else ranks
    lo, hi = ranks[x], ranks[y]
    needed = {v for v, r in ranks.items() if lo <= r <= hi}

    def keep(a: int) -> bool:
        obj = C.objects[a]
        return len(obj.necklace.beads) == 1 and needed <= set(obj.vertices)

    return full_subcategory(C, keep, name="F")


# -- finality --------------------------------------------------------------


@dataclass
class FiberResult:
    obj: int
    size: int
    initial: list[int]
    terminal: list[int]
    connected: bool

    def as_dict(self) -> dict:
        return {
            "object": self.obj,
            "fiber_objects": self.size,
            "has_initial": bool(self.initial),
            "has_terminal": bool(self.terminal),
            "connected": self.connected,
        }


@dataclass
class FinalityReport:
    mode: str
    fibers: list[FiberResult] = field(default_factory=list)

    @property
    def failures(self) -> list[FiberResult]:
        key = "initial" if self.mode == "initial" else "terminal"
        return [f for f in self.fibers if not getattr(f, key)]

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "fibers": len(self.fibers),
            "failures": [f.as_dict() for f in self.failures],
            "passed": self.passed,
            "connected_fibers": sum(f.connected for f in self.fibers),
        }


def under_fiber(small: FiniteCategory, big: FiniteCategory, inc: Functor, T: int):
    """Objects ``(N, g: T -> inc N)`` and hom counts of ``small x_big big_{T/}``."""
    objs = [
        (N, g) for N in range(len(small.objects)) for g in big.hom(T, inc.on_objects[N])
    ]
    n = len(objs)
    counts = [[0] * n for _ in range(n)]
    for a, (N, g) in enumerate(objs):
        for b, (Np, gp) in enumerate(objs):
            for h in small.hom(N, Np):
                if big.compose(inc.on_morphisms[h], g) == gp:
                    counts[a][b] += 1
    return objs, counts


def check_finality(
    small: FiniteCategory, big: FiniteCategory, inc: Functor, mode: str = "initial"
) -> FinalityReport:
    """For each object T of ``big``, look for an initial (or terminal) object
    in the fiber ``small x_big big_{T/}`` by exhaustive hom-set inspection."""
    if mode not in ("initial", "terminal"):
        raise ValueError(f"mode must be initial or terminal, not {mode!r}")
    report = FinalityReport(mode)
    for T in range(len(big.objects)):
        objs, counts = under_fiber(small, big, inc, T)
        n = len(objs)
        initial = [a for a in range(n) if all(counts[a][b] == 1 for b in range(n))]
        terminal = [a for a in range(n) if all(counts[b][a] == 1 for b in range(n))]
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a in range(n):
            for b in range(n):
                if counts[a][b]:
                    parent[find(a)] = find(b)
        connected = n > 0 and len({find(a) for a in range(n)}) == 1
        report.fibers.append(FiberResult(T, n, initial, terminal, connected))
    return report


check_finality_initial = check_finality


# -- the localization and the F = Delta_inj^(1+k) comparison -----------------


class PairLabel(NamedTuple):
    """A surviving simplex ``(f, s)``: ``f`` values of a simplex of Delta^k and
    ``s`` the surjection values."""

    f: tuple[int, ...]
    s: tuple[int, ...]


class PointLabel(NamedTuple):
    vertex: int


def localization_pushout(k: int, D: int) -> SimplicialSet:
    """Collapse each vertex copy of ``Delta^0_+`` inside ``(Delta^k)_+`` to a point.

    Vertices of the result are labelled ``PointLabel(i)`` for ``i`` in [k];
    all other simplices keep their ``(f, s)`` description.
    """
    simplex = standard_simplex(k, D)
    Cp = plus(restrict(simplex))
    groups: list[set[tuple[int, int]]] = [set() for _ in range(k + 1)]
    for n in range(D + 1):
        for sid, p in enumerate(Cp.labels[n]):
            f = simplex.labels[p.base_dim][p.base]
            if len(set(f)) == 1:
                groups[f[0]].add((n, sid))
    P, q = collapse(Cp, groups)
    labels: list[list] = [[None] * P.count(n) for n in range(D + 1)]
    for n in range(D + 1):
        for sid, p in enumerate(Cp.labels[n]):
            f = simplex.labels[p.base_dim][p.base]
            new = q(n, sid)
            labels[n][new] = PointLabel(f[0]) if len(set(f)) == 1 else PairLabel(f, p.surj.values)
    return replace(P, labels=tuple(tuple(level) for level in labels))


def localization_map(k: int, D: int) -> tuple[SimplicialSet, SimplicialSet, SimplicialMap]:
    """``(Delta^k)_+``, the pushout, and the quotient map between them."""
    simplex = standard_simplex(k, D)
    Cp = plus(restrict(simplex))
    P = localization_pushout(k, D)
    index = [{lab: i for i, lab in enumerate(level)} for level in P.labels]
    comps = []
    for n in range(D + 1):
        row = []
        for p in Cp.labels[n]:
            f = simplex.labels[p.base_dim][p.base]
            lab = PointLabel(f[0]) if len(set(f)) == 1 else PairLabel(f, p.surj.values)
            row.append(index[n][lab])
        comps.append(tuple(row))
    return Cp, P, SimplicialMap(Cp, P, tuple(comps))


def point_vertex(P: SimplicialSet, i: int) -> int:
    return P.labels[0].index(PointLabel(i))


def _fiber_sizes(f: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(sum(1 for v in f if v == i) - 1 for i in range(k + 1))


def _fiber_components(f_small: Sequence[int], f_big: Sequence[int], g: Sequence[int], k: int):
    out = []
    for i in range(k + 1):
        dom = [t for t, v in enumerate(f_small) if v == i]
        cod = [t for t, v in enumerate(f_big) if v == i]
        out.append(tuple(cod.index(g[t]) for t in dom))
    return tuple(out)


@dataclass
class FIsoReport:
    k: int
    max_m: int
    F_objects: int
    F_morphisms: int
    power_objects: int
    power_morphisms: int
    bijective_on_objects: bool
    fully_faithful: bool
    functor_violations: list[str]

    @property
    def passed(self) -> bool:
        return (
            self.bijective_on_objects
            and self.fully_faithful
            and not self.functor_violations
            and self.F_objects == self.power_objects
            and self.F_morphisms == self.power_morphisms
        )

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def build_F(k: int, max_m: int) -> tuple[SimplicialSet, FiniteCategory]:
    """F_{0,k} over the localization of Delta^k with bead dimension <= max_m."""
    P = localization_pushout(k, max(max_m, 1))
    C = comma_category(P, point_vertex(P, 0), point_vertex(P, k), max_m, max_beads=1)
    N, _ = full_subcategory_N(C, P)
    F, _ = full_subcategory_F(N, P, point_vertex(P, 0), point_vertex(P, k))
    return P, F


def F_iso_check(k: int, max_m: int) -> FIsoReport:
    """Compare F_{0,k} with ``Delta_inj^(1+k)`` via fiber sizes of the surjection."""
    P, F = build_F(k, max_m)
    power = injective_ordinal_power(k + 1, max_m)
    power_index = {obj: a for a, obj in enumerate(power.objects)}

    def surjection(a: int) -> tuple[int, ...]:
        obj = F.objects[a]
        if obj.necklace.beads == (0,):
            return (0,)
        lab = P.labels[obj.necklace.beads[0]][obj.images[0]]
        return lab.f

    on_obj = []
    for a in range(len(F.objects)):
        on_obj.append(power_index.get(_fiber_sizes(surjection(a), k), -1))
    on_mor = []
    violations = []
    if -1 in on_obj:
        violations.append("some object of F has no counterpart")
    else:
        for m in range(F.num_morphisms):
            a, b, g = F.morphisms[m]
            comp = _fiber_components(surjection(a), surjection(b), g, k)
            try:
                on_mor.append(power.morphism(on_obj[a], on_obj[b], comp))
            except KeyError:
                violations.append(f"morphism {m} has no counterpart")
                on_mor.append(-1)
    if violations:
        return FIsoReport(
            k, max_m, len(F.objects), F.num_morphisms, len(power.objects),
            power.num_morphisms, False, False, violations,
        )
    phi = Functor(F, power, tuple(on_obj), tuple(on_mor))
    return FIsoReport(
        k,
        max_m,
        len(F.objects),
        F.num_morphisms,
        len(power.objects),
        power.num_morphisms,
        phi.is_bijective_on_objects() and len(F.objects) == len(power.objects),
        phi.is_fully_faithful(),
        phi.violations(),
    )


# -- mapping-space probe ---------------------------------------------------


def mapping_space_probe(
    k: int,
    x: int,
    y: int,
    bound: int = DEFAULT_BOUND,
    max_deg: int = 2,
    budget: int = DEFAULT_BUDGET,
    finality: bool = True,
    max_beads: int = DEFAULT_MAX_BEADS,
) -> dict:
    """Homology and pi1 of the nerve of F_{x,y} over the localization of Delta^k.

    The comma category, N and F are truncated at necklace total dimension
    ``bound``.  ``verdict`` reflects the probe of N(F) alone; the finality
    checks relating the three categories are attached separately, so a
    reader can see whether the reduction itself held within the bound.
    """
    if not 0 <= x <= y <= k:
        raise ValueError(f"need 0 <= x <= y <= k, got x={x}, y={y}, k={k}")
    P = localization_pushout(k, max(bound, 1))
    vx, vy = point_vertex(P, x), point_vertex(P, y)
    big = comma_category(P, vx, vy, bound, max_beads)
    N, n_inc = full_subcategory_N(big, P)
    F, f_inc = full_subcategory_F(N, P, vx, vy)
    report: dict = {
        "reduction_chain": [
            {"category": "Nec|P", "objects": len(big.objects), "morphisms": big.num_morphisms},
            {"category": "N", "objects": len(N.objects), "morphisms": N.num_morphisms},
            {"category": "F", "objects": len(F.objects), "morphisms": F.num_morphisms},
        ],
    }
    if finality:
        report["finality"] = {
            "N_in_Nec_initial": check_finality(N, big, n_inc, "initial").as_dict(),
            "F_in_N_terminal": check_finality(F, N, f_inc, "terminal").as_dict(),
        }
    probe = contractibility_probe(nerve(F, max_deg + 1), max_deg, budget)
    report["homology"] = {str(n): g.as_dict() for n, g in enumerate(probe.homology)}
    report["contractibility"] = probe.as_dict()
    report["verdict"] = "pass" if probe.passed else "fail"
    report["bounds"] = {"k": k, "x": x, "y": y, "max_total_dim": bound, "max_beads": max_beads,
                        "max_deg": max_deg, "budget": budget}
    return report


def necklace_simplicial_set(beads: Sequence[int], D: int) -> SimplicialSet:
    """The necklace as a simplicial set: simplices are monotone vertex
    sequences lying inside one bead."""
    T = Necklace(tuple(beads))
    M = T.total_dim
    levels = [
        [f.values for f in delta.enumerate_maps(n, M, "all") if T.bead_containing(f.values[0], f.values[-1]) is not None]
        for n in range(D + 1)
    ]
    return build(levels, lambda v, n, i: v[:i] + v[i + 1 :], lambda v, n, i: v[: i + 1] + v[i:])
