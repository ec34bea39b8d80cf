from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from freedeg.adjunction import plus, restrict
from freedeg.homotopy import (
    GroupPresentation,
    GroupVerdict,
    analyze_group,
    contractibility_probe,
    homology,
    normalized_chains,
    pi1_presentation,
    smith_normal_form,
)
from freedeg.homotopy.groups import (
    BudgetExceeded,
    abelianization,
    coset_enumeration,
    free_reduce,
    is_idempotent_relation,
    simplify,
)
from freedeg.homotopy.snf import matmul
from freedeg.sset import (
    SemisimplicialSet,
    TruncationError,
    boundary_simplex,
    product,
    standard_simplex,
)


def projective_plane() -> SemisimplicialSet:
    """One vertex, loops a and b, triangles (a, b, a) and (b, b, b).

    Boundaries 2a - b and b give H_1 = Z/2; the second triangle reads b b = b.
    """
    faces = (((),), ((0, 0), (0, 0)), ((0, 1, 0), (1, 1, 1)), ())
    return SemisimplicialSet(faces)


# -- Smith normal form -----------------------------------------------------


def test_snf_textbook_example():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    form = smith_normal_form(A, transforms=True)
    assert form.diagonal == [2, 6, 12]
    assert matmul(matmul(form.U, A), form.V) == form.D


def test_snf_of_empty_and_zero_matrices():
    assert smith_normal_form([], ncols=3).rank == 0
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == []


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_agrees_with_sympy(A):
    ours = smith_normal_form(A, transforms=True)
    theirs = [abs(int(d)) for d in invariant_factors(Matrix(A), domain=ZZ) if d != 0]
    assert ours.diagonal == theirs
    assert matmul(matmul(ours.U, A), ours.V) == ours.D
    for a, b in zip(ours.diagonal, ours.diagonal[1:]):
        assert b % a == 0


# -- homology --------------------------------------------------------------


def groups(X, max_deg):
    return [(g.betti, g.torsion) for g in homology(normalized_chains(X), max_deg)]


def test_homology_of_spheres_and_a_simplex():
    assert groups(boundary_simplex(2, 3), 2) == [(1, ()), (1, ()), (0, ())]
    assert groups(boundary_simplex(3, 3), 2) == [(1, ()), (0, ()), (1, ())]
    assert groups(standard_simplex(3, 4), 3) == [(1, ()), (0, ()), (0, ()), (0, ())]


def test_homology_of_torus():
    circle = boundary_simplex(2, 3)
    assert groups(product(circle, circle), 2) == [(1, ()), (2, ()), (1, ())]


def test_homology_torsion():
    X = plus(projective_plane())
    assert groups(X, 2) == [(1, ()), (0, (2,)), (0, ())]


def test_idem_homology():
    X = plus(restrict(standard_simplex(0, 8)))
    assert groups(X, 7) == [(1, ())] + [(0, ())] * 7


def test_boundary_squares_to_zero():
    for X in (plus(projective_plane()), standard_simplex(2, 4), boundary_simplex(3, 4)):
        assert normalized_chains(X).boundary_squared_violations() == []


def test_homology_needs_one_more_degree():
    with pytest.raises(TruncationError):
        homology(normalized_chains(standard_simplex(1, 2)), 2)


# -- fundamental group -----------------------------------------------------


def test_pi1_of_idem_is_trivial_by_idempotence():
    X = plus(restrict(standard_simplex(0, 4)))
    P = pi1_presentation(X)
    assert P.as_dict() == {"generators": [1], "relators": [[1, 1, -1]]}
    analysis = analyze_group(P)
    assert analysis.verdict is GroupVerdict.TRIVIAL
    assert analysis.steps[0].startswith("idempotent")


def test_pi1_of_circle_and_projective_plane():
    circle = analyze_group(pi1_presentation(boundary_simplex(2, 3)))
    assert circle.verdict is GroupVerdict.NONTRIVIAL
    assert circle.abelian_rank == 1
    rp2 = analyze_group(pi1_presentation(plus(projective_plane())))
    assert rp2.verdict is GroupVerdict.NONTRIVIAL
    assert rp2.abelian_torsion == (2,)


def test_word_helpers():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert is_idempotent_relation((1, 1, -1))
    assert is_idempotent_relation((-2, 2, 2)) is True
    assert not is_idempotent_relation((1, 1, 1))


def test_simplify_removes_tree_like_generators():
    # <a, b | a b^-1> is Z with one generator left
    out = simplify(GroupPresentation(["a", "b"], [(1, -2)]))
    assert len(out.presentation.generators) == 1
    assert out.presentation.relators == []


def test_coset_enumeration_orders():
    s3 = GroupPresentation(["a", "b"], [(1, 1), (2, 2, 2), (1, 2, 1, 2)])
    assert coset_enumeration(s3) == 6
    # b^-1 a b = a^2 and a^-1 b a = b^2 force a = b = 1
    trivial = GroupPresentation(["a", "b"], [(-2, 1, 2, -1, -1), (-1, 2, 1, -2, -2)])
    assert abelianization(trivial) == (0, ())
    assert coset_enumeration(trivial) == 1
    with pytest.raises(BudgetExceeded):
        coset_enumeration(trivial, max_cosets=2)


def test_budget_exhaustion_is_unknown():
    trivial = GroupPresentation(["a", "b"], [(-2, 1, 2, -1, -1), (-1, 2, 1, -2, -2)])
    assert analyze_group(trivial, budget=2).verdict is GroupVerdict.UNKNOWN


def test_commutator_group_is_nontrivial():
    zz = GroupPresentation(["a", "b"], [(1, 2, -1, -2)])
    assert analyze_group(zz).abelian_rank == 2


# -- contractibility probe -------------------------------------------------


def test_probe_verdicts():
    idem = contractibility_probe(plus(restrict(standard_simplex(0, 8))), 7)
    assert idem.passed and idem.verdict == "contractible up to degree 7"
    circle = contractibility_probe(boundary_simplex(2, 3), 2)
    assert not circle.passed and circle.verdict.startswith("not contractible")
    assert contractibility_probe(standard_simplex(3, 4), 3).passed
