from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, strategies as st

from freedeg import delta
from freedeg.delta import CompositionError, PosetMap


@st.composite
def monotone_maps(draw, max_n=5):
    m = draw(st.integers(0, max_n))
    n = draw(st.integers(0, max_n))
    values = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return PosetMap(m + 1, n + 1, tuple(values))


def test_coface_and_codegeneracy_values():
    # d^1 : [1] -> [2] skips 1; s^0 : [2] -> [1] repeats 0
    assert delta.coface(2, 1).values == (0, 2)
    assert delta.coface(2, 0).values == (1, 2)
    assert delta.codegeneracy(1, 0).values == (0, 0, 1)
    assert delta.codegeneracy(1, 1).values == (0, 1, 1)


def test_rejects_non_monotone_and_out_of_range():
    with pytest.raises(ValueError):
        PosetMap(2, 2, (1, 0))
    with pytest.raises(ValueError):
        PosetMap(2, 2, (0, 2))


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (2, 2), (3, 1), (2, 4)])
def test_map_counts_match_binomials(m, n):
    # monotone [m] -> [n]: multisets of size m+1 from n+1 values
    assert len(delta.enumerate_maps(m, n, "all")) == comb(m + n + 1, m + 1)
    assert len(delta.enumerate_maps(m, n, "mono")) == comb(n + 1, m + 1)
    # surjections [m] -> [n]: choose n jump positions among m gaps
    assert len(delta.enumerate_maps(m, n, "epi")) == comb(m, n)


def test_enumeration_is_lexicographic():
    maps = [f.values for f in delta.enumerate_maps(1, 2)]
    assert maps == sorted(maps)


def test_cosimplicial_identities():
    # d^j d^i = d^i d^{j-1} for i < j ; s^j s^i = s^i s^{j+1} for i <= j
    n = 4
    for j in range(n + 1):
        for i in range(j):
            lhs = delta.compose(delta.coface(n, j), delta.coface(n - 1, i))
            rhs = delta.compose(delta.coface(n, i), delta.coface(n - 1, j - 1))
            assert lhs == rhs
    for j in range(n):
        for i in range(j + 1):
            lhs = delta.compose(delta.codegeneracy(n - 1, j), delta.codegeneracy(n, i))
            rhs = delta.compose(delta.codegeneracy(n - 1, i), delta.codegeneracy(n, j + 1))
            assert lhs == rhs


def test_compose_checks_endpoints():
    with pytest.raises(CompositionError):
        delta.compose(delta.identity(2), delta.identity(1))


@given(monotone_maps())
def test_epi_mono_factorization(f):
    epi, mono = delta.epi_mono_factorize(f)
    assert epi.is_surjective and mono.is_injective
    assert delta.compose(mono, epi) == f
    assert mono.image() == f.image()


@given(monotone_maps())
def test_mono_and_epi_words_rebuild_the_map(f):
    epi, mono = delta.epi_mono_factorize(f)
    # f^* = d_{i_last} ... d_{i_first}, so f = d^{i_first} o ... o d^{i_last}
    rebuilt = delta.identity(mono.target)
    n = mono.target
    for i in delta.mono_as_cofaces(mono):
        rebuilt = delta.compose(rebuilt, delta.coface(n, i))
        n -= 1
    assert rebuilt == mono
    m = epi.target
    word = delta.identity(m)
    for i in delta.epi_as_codegeneracies(epi):
        word = delta.compose(word, delta.codegeneracy(m, i))
        m += 1
    assert word == epi


def test_surjections_from_three():
    # out of [3]: one onto [0], three onto [1], three onto [2], one onto [3]
    targets = sorted(s.target for s in delta.surjections_from(3))
    assert targets == [0, 1, 1, 1, 2, 2, 2, 3]
