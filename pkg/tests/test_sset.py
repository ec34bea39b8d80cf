from __future__ import annotations

from dataclasses import replace
from math import comb

import pytest

from freedeg import delta
from freedeg.category import poset_category, walking_isomorphism
from freedeg.sset import (
    ClosureError,
    IntegrityError,
    SimplicialSet,
    TruncationError,
    boundary_simplex,
    closure,
    collapse,
    compatible_boundaries,
    disjoint_union,
    is_connected,
    nerve,
    product,
    standard_simplex,
)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_standard_simplex_counts(k):
    X = standard_simplex(k, 4)
    # N-simplices are monotone maps [N] -> [k]
    assert X.counts() == [comb(N + k + 1, k) for N in range(5)]
    assert [len(X.nondegenerate(N)) for N in range(5)] == [comb(k + 1, N + 1) for N in range(5)]


def test_frozen_small_counts():
    assert standard_simplex(1, 4).counts() == [2, 3, 4, 5, 6]
    assert standard_simplex(2, 4).counts() == [3, 6, 10, 15, 21]


def test_action_on_standard_simplex_is_precomposition():
    X = standard_simplex(2, 3)
    for n in range(4):
        for sid, sigma in enumerate(X.labels[n]):
            for m in range(4):
                for f in delta.enumerate_maps(m, n):
                    got = X.labels[m][X.act(f, sid)]
                    assert got == tuple(sigma[v] for v in f.values)


def test_boundary_simplex_nondegenerate_counts():
    X = boundary_simplex(2, 3)
    assert [len(X.nondegenerate(n)) for n in range(4)] == [3, 3, 0, 0]
    Y = boundary_simplex(3, 4)
    assert [len(Y.nondegenerate(n)) for n in range(5)] == [4, 6, 4, 0, 0]


def test_nerve_of_poset_matches_simplex():
    for k in range(4):
        assert nerve(poset_category(k), 4).counts() == standard_simplex(k, 4).counts()


def test_nerve_face_convention():
    C = poset_category(2)
    N = nerve(C, 3)
    f = C.morphism(0, 1, (0, 1))
    g = C.morphism(1, 2, (1, 2))
    gf = C.morphism(0, 2, (0, 2))
    chain = N.labels[2].index((f, g))
    d0, d1, d2 = N.faces[2][chain]
    assert N.labels[1][d0] == (g,)
    assert N.labels[1][d1] == (gf,)
    assert N.labels[1][d2] == (f,)
    edge = N.labels[1].index((f,))
    assert N.faces[1][edge] == (1, 0)  # (target, source)


def test_walking_isomorphism_nerve_has_two_cells_per_dimension():
    N = nerve(walking_isomorphism(), 5)
    assert [len(N.nondegenerate(n)) for n in range(6)] == [2] * 6


def test_product_of_intervals_is_a_square():
    X = product(standard_simplex(1, 3), standard_simplex(1, 3))
    X.validate()
    # two triangles, five edges, four vertices
    assert [len(X.nondegenerate(n)) for n in range(4)] == [4, 5, 2, 0]


def test_disjoint_union_counts_add():
    A, B = standard_simplex(1, 3), boundary_simplex(2, 3)
    U = disjoint_union(A, B)
    U.validate()
    assert U.counts() == [a + b for a, b in zip(A.counts(), B.counts())]
    assert not is_connected(U)
    assert is_connected(A)


def test_validate_catches_corrupted_face():
    X = standard_simplex(2, 3)
    faces = [list(level) for level in X.faces]
    faces[2] = list(faces[2])
    top = X.labels[2].index((0, 1, 2))
    d0, d1, d2 = faces[2][top]
    faces[2][top] = (d0, d0, d2)
    bad = replace(X, faces=tuple(tuple(level) for level in faces))
    with pytest.raises(IntegrityError):
        bad.validate()


def test_validate_catches_bad_degeneracy():
    X = standard_simplex(1, 3)
    degens = [list(level) for level in X.degens]
    degens[0][0] = (degens[0][1][0],)
    bad = replace(X, degens=tuple(tuple(level) for level in degens))
    with pytest.raises(IntegrityError):
        bad.validate()


def test_truncation_is_loud():
    X = standard_simplex(1, 2)
    with pytest.raises(TruncationError):
        X.degen(2, 0, 0)
    with pytest.raises(TruncationError):
        X.act(delta.codegeneracy(2, 0), 0)


def test_normal_form_of_degenerate_simplex():
    X = standard_simplex(1, 3)
    sid = X.labels[3].index((0, 0, 1, 1))
    y, s = X.normalize(3, sid)
    assert X.labels[1][y] == (0, 1)
    assert s.values == (0, 0, 1, 1)


def test_closure_and_collapse():
    X = standard_simplex(1, 3)
    v0 = closure(X, [(0, 0)])
    assert len(v0) == 4  # one constant simplex per dimension
    # collapsing both endpoints to a single point gives a circle
    ends = closure(X, [(0, 0), (0, 1)])
    Y, q = collapse(X, [ends])
    Y.validate()
    q.validate()
    assert [len(Y.nondegenerate(n)) for n in range(4)] == [1, 1, 0, 0]


def test_collapse_rejects_open_or_overlapping_groups():
    X = standard_simplex(1, 3)
    with pytest.raises(ClosureError):
        collapse(X, [{(1, 2)}])
    v0 = closure(X, [(0, 0)])
    with pytest.raises(ClosureError):
        collapse(X, [v0, v0])


def test_compatible_boundaries_in_a_nerve():
    # every compatible triangle boundary in Delta^2 is fixed by its vertices a <= b <= c
    X = standard_simplex(2, 3)
    assert len(list(compatible_boundaries(X, 2))) == comb(5, 3)


def test_truncate_keeps_type():
    X = standard_simplex(2, 4).truncate(2)
    assert isinstance(X, SimplicialSet)
    assert X.counts() == [3, 6, 10]
    X.validate()
