from __future__ import annotations

import itertools

import pytest

from freedeg.category import identity_functor, injective_ordinal_power, poset_category
from freedeg.delta import PosetMap
from freedeg.necklace import (
    Necklace,
    PairLabel,
    PointLabel,
    build_F,
    check_finality,
    comma_category,
    compositions,
    full_subcategory_F,
    full_subcategory_N,
    localization_map,
    localization_pushout,
    mapping_space_probe,
    necklace_simplicial_set,
    point_vertex,
)
from freedeg.sset import SimplicialMap, standard_simplex


def test_necklace_joins_and_beads():
    T = Necklace((2, 1, 3))
    assert T.total_dim == 6
    assert T.joins == (0, 2, 3, 6)
    assert T.bead_containing(0, 2) == 0
    assert T.bead_containing(3, 5) == 2
    assert T.bead_containing(1, 3) is None
    with pytest.raises(ValueError):
        Necklace((1, 0))


def test_compositions_count():
    # compositions of 4 into at most 2 parts: (4), (1,3), (2,2), (3,1)
    assert sorted(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1), (4,)]
    assert len(compositions(4, 4)) == 2 ** 3


def test_comma_over_interval():
    X = standard_simplex(1, 3)
    C = comma_category(X, 0, 1, 2)
    C.validate()
    edge = X.labels[1].index((0, 1))
    assert any(o.necklace.beads == (1,) and o.images == (edge,) for o in C.objects)
    two_beads = [o for o in C.objects if o.necklace.beads == (2,)]
    assert two_beads and all(X.is_degenerate(2, o.images[0]) for o in two_beads)


def test_comma_over_a_point_is_degenerate_beads():
    X = standard_simplex(0, 3)
    C = comma_category(X, 0, 0, 3)
    for o in C.objects:
        if o.necklace.beads == (0,):
            continue
        assert all(X.is_degenerate(m, s) for m, s in zip(o.necklace.beads, o.images))


def _structure_map(T_beads, images, X, T):
    """The map T -> X determined by the bead simplices."""
    joins = Necklace(T_beads).joins
    comps = []
    for n in range(T.trunc_dim + 1):
        row = []
        for v in T.labels[n]:
            i = Necklace(T_beads).bead_containing(v[0], v[-1])
            f = PosetMap(n + 1, T_beads[i] + 1, tuple(x - joins[i] for x in v))
            row.append(X.act(f, images[i]))
        comps.append(tuple(row))
    return SimplicialMap(T, X, tuple(comps))


def brute_force_hom_count(X, A, B, D):
    """Count simplicial maps T_A -> T_B fixing endpoints and commuting with the maps to X,
    by trying every assignment of bead simplices of T_A to simplices of T_B."""
    TA = necklace_simplicial_set(A.necklace.beads, D)
    TB = necklace_simplicial_set(B.necklace.beads, D)
    alpha = _structure_map(A.necklace.beads, A.images, X, TA)
    beta = _structure_map(B.necklace.beads, B.images, X, TB)
    ja = A.necklace.joins
    count = 0
    for choice in itertools.product(*[range(TB.count(m)) for m in A.necklace.beads]):
        verts = [TB.labels[m][c] for m, c in zip(A.necklace.beads, choice)]
        if verts[0][0] != 0 or verts[-1][-1] != B.necklace.total_dim:
            continue
        if any(verts[i][-1] != verts[i + 1][0] for i in range(len(verts) - 1)):
            continue
        comps = []
        for n in range(D + 1):
            row = []
            for v in TA.labels[n]:
                i = A.necklace.bead_containing(v[0], v[-1])
                f = PosetMap(n + 1, A.necklace.beads[i] + 1, tuple(x - ja[i] for x in v))
                row.append(TB.act(f, choice[i]))
            comps.append(tuple(row))
        h = SimplicialMap(TA, TB, tuple(comps))
        if h.violations():
            continue
        if h.then(beta).components == alpha.components:
            count += 1
    return count


def test_morphisms_match_brute_force_over_delta2():
    X = standard_simplex(2, 2)
    C = comma_category(X, 0, 2, 2)
    for a, A in enumerate(C.objects):
        for b, B in enumerate(C.objects):
            assert len(C.hom(a, b)) == brute_force_hom_count(X, A, B, 2), (A, B)


def test_subcategories_over_localization():
    P = localization_pushout(1, 3)
    vx, vy = point_vertex(P, 0), point_vertex(P, 1)
    C = comma_category(P, vx, vy, 3)
    N, n_inc = full_subcategory_N(C, P)
    F, f_inc = full_subcategory_F(N, P, vx, vy)
    assert n_inc.violations() == [] and f_inc.violations() == []
    for o in N.objects:
        assert all(not P.is_degenerate(m, s) for m, s in zip(o.necklace.beads, o.images))
    # F objects <-> surjections [m] -> [1] for m <= 3: 1 + 2 + 3
    assert len(F.objects) == 6
    fs = sorted(P.labels[o.necklace.beads[0]][o.images[0]].f for o in F.objects)
    assert fs == [(0, 0, 0, 1), (0, 0, 1), (0, 0, 1, 1), (0, 1), (0, 1, 1), (0, 1, 1, 1)]


def test_localization_shapes():
    assert localization_pushout(0, 4).counts() == [1] * 5
    P1 = localization_pushout(1, 4)
    assert [len(P1.nondegenerate(n)) for n in range(2)] == [2, 1]
    for k in range(3):
        P = localization_pushout(k, 3)
        P.validate()
        assert P.count(0) == k + 1
        assert sorted(P.labels[0]) == [PointLabel(i) for i in range(k + 1)]
    Cp, P, q = localization_map(2, 3)
    assert q.violations() == [] and q.is_surjective()


def test_localization_nondegenerate_cells_are_surviving_pairs():
    P = localization_pushout(2, 3)
    for n in range(1, 4):
        for sid in P.nondegenerate(n):
            lab = P.labels[n][sid]
            assert isinstance(lab, PairLabel)
            assert lab.s == tuple(range(n + 1)) and len(set(lab.f)) > 1


def test_finality_on_identity_inclusion():
    C = poset_category(2)
    for mode in ("initial", "terminal"):
        assert check_finality(C, C, identity_functor(C), mode).passed


def test_finality_over_a_nerve():
    # over Delta^k faces of nondegenerate simplices are nondegenerate, so the
    # flagged quotient is initial in every fiber
    for k in (1, 2):
        X = standard_simplex(k, 3)
        big = comma_category(X, 0, k, 3)
        N, inc = full_subcategory_N(big, X)
        assert check_finality(N, big, inc, "initial").passed
        F, finc = full_subcategory_F(N, X, 0, k, ranks={v: v for v in range(k + 1)})
        assert check_finality(F, N, finc, "terminal").passed


def test_finality_over_localization_has_disconnected_fibers():
    # in P the 2-simplex (f=(0,0,1), id) has a degenerate face, which splits fibers
    P = localization_pushout(1, 3)
    vx, vy = point_vertex(P, 0), point_vertex(P, 1)
    big = comma_category(P, vx, vy, 3)
    N, inc = full_subcategory_N(big, P)
    rep = check_finality(N, big, inc, "initial")
    assert not rep.passed
    assert any(not f.connected for f in rep.failures)


def test_F_over_interval_morphisms_fix_endpoints():
    # F_{0,1} with beads <= 2: objects ([0],[0]), ([1],[0]), ([0],[1]); the two
    # non-identity arrows must send 0 to 0 and the last vertex to the last vertex
    P, F = build_F(1, 2)
    assert len(F.objects) == 3
    assert F.num_morphisms == 5
    power = injective_ordinal_power(2, 2)
    assert power.num_morphisms == 7


def test_mapping_space_probe_report_shape():
    rep = mapping_space_probe(1, 0, 1, 3, 2)
    assert list(rep) == ["reduction_chain", "finality", "homology", "contractibility", "verdict", "bounds"]
    assert [step["category"] for step in rep["reduction_chain"]] == ["Nec|P", "N", "F"]
    assert rep["verdict"] == "pass"
    assert mapping_space_probe(2, 1, 1, 3, 2)["verdict"] == "pass"


def test_necklace_simplicial_set_counts():
    # Delta^1 v Delta^1: two edges glued, n-simplices = 2 (n+2) - 1
    T = necklace_simplicial_set((1, 1), 3)
    T.validate()
    assert T.counts() == [3, 5, 7, 9]
