from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, strategies as st

from mixedmult.closed_forms import (
    ORACLES,
    bernstein_simplex_bound,
    bigraded_free_mixed,
    colon_chain_length,
    complete_homogeneous,
    dsequence_rees_mixed,
    embedded_degree_formula,
    filter_regular_extended,
    filter_regular_rees,
    hoang_mixed,
    htu_rees,
    katz_verma_rhs,
    minors_mixed,
    regular_sequence_rees_mixed,
)
from mixedmult.errors import InputError, PreconditionError


def test_complete_homogeneous():
    assert complete_homogeneous(0, [2, 3]) == 1
    assert complete_homogeneous(2, [2, 3]) == 4 + 6 + 9
    assert complete_homogeneous(-1, [2]) == 0
    assert complete_homogeneous(3, [0, 0]) == 0


def test_htu_branches():
    # dim A/I_1 <= dim A - 2 gives e(A)
    assert htu_rees([5], [1], 3, 7) == 7
    # dim A/I_1 = dim A - 1 adds e(A)
    assert htu_rees([1, 2], [2, 1], 3, 1) == 1 + 2 + 1
    # dim A/I_1 = dim A
    assert htu_rees([1, 2], [2, 1], 2, 1) == 3
    with pytest.raises(InputError):
        htu_rees([1], [4], 3, 1)
    with pytest.raises(InputError):
        htu_rees([1, 2], [2], 3, 1)


def test_colon_chain():
    assert colon_chain_length([3, 2, 1]) == 3
    assert colon_chain_length([3, 3]) == 1


def test_hoang():
    assert hoang_mixed([1], [2], 2) == [1, 0]
    assert hoang_mixed([1, 1], [2, 1], 2) == [1, 1]
    assert hoang_mixed([1, 2, 6], [3, 2, 1], 5)[3:] == [0, 0]


def test_filter_regular():
    assert filter_regular_rees([1, 1]) == 2
    assert filter_regular_rees([2, 3]) == 3
    assert filter_regular_rees([2, 3], 4) == 12
    assert filter_regular_extended([1, 1, 1]) == 1
    assert filter_regular_extended([1, 2, 2]) == 1 + 1 + 2
    assert filter_regular_extended([2, 2]) == 1 + 1 + 2
    with pytest.raises(PreconditionError):
        filter_regular_rees([3, 2])
    with pytest.raises(PreconditionError):
        filter_regular_extended([2, 1])
    with pytest.raises(InputError):
        filter_regular_rees([0, 2])


def test_regular_sequence_rees():
    assert regular_sequence_rees_mixed([2], 1, 2) == [-2, 1]
    # all degrees one: the top entry is e(A) and nothing is negative
    out = regular_sequence_rees_mixed([1, 1, 1], 1, 3)
    assert out[-1] == 1 and min(out) >= 0
    with pytest.raises(PreconditionError):
        regular_sequence_rees_mixed([3, 2], 1, 3)


def test_dsequence_matches_regular_sequence():
    degs = [2, 3]
    n = 3
    e_list = [prod(degs[:j]) for j in range(len(degs))]
    dims = [n - j for j in range(len(degs))]
    assert dsequence_rees_mixed(degs, e_list, dims) == regular_sequence_rees_mixed(degs, 1, n)


def test_minors_regression():
    # pinned values of the displayed formula; r = 2 is a 1 x 2 matrix
    assert minors_mixed(2) == [-1, 1]
    assert minors_mixed(3)[-1] == 1
    with pytest.raises(InputError):
        minors_mixed(1)


def test_katz_verma():
    assert katz_verma_rhs(1, [1, 1], 2) == 1
    assert katz_verma_rhs(4, [4, 4], 2) == 4
    assert katz_verma_rhs(3, [2], 1) == Fraction(5, 2)
    with pytest.raises(InputError):
        katz_verma_rhs(1, [1], 2)


def test_bigraded_free():
    assert bigraded_free_mixed(2, 1, [0]) == [0, 1]
    assert bigraded_free_mixed(3, 2, [0, 0]) == [0, 0, 1, 0]
    assert bigraded_free_mixed(2, 1, [2]) == [-2, 1]
    assert bigraded_free_mixed(2, 3, [1, 2, 3])[2:] == [0, 0]
    with pytest.raises(InputError):
        bigraded_free_mixed(0, 1, [1])
    with pytest.raises(InputError):
        bigraded_free_mixed(2, 2, [1])


def test_embedded_and_bezout():
    assert embedded_degree_formula([-2, 1], 3, 1) == 1
    assert bernstein_simplex_bound([2, 3]) == 6


def test_oracle_table_names():
    assert set(ORACLES) >= {
        "htu", "hoang", "filter_regular", "extended_filter_regular", "regular_sequence_rees",
        "maximal_minors", "katz_verma", "bigraded_free", "embedded",
    }


@given(st.integers(0, 20), st.lists(st.integers(0, 20), min_size=1, max_size=4), st.integers(1, 4))
def test_katz_verma_is_linear(e, es, k):
    d = len(es)
    assert katz_verma_rhs(k * e, [k * x for x in es], d) == k * katz_verma_rhs(e, es, d)


@given(st.integers(1, 4), st.integers(1, 3))
def test_standard_free_case(m, n):
    out = bigraded_free_mixed(m, n, [0] * n)
    assert out == [int(i == m - 1) for i in range(m + n - 1)]


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4).map(sorted))
def test_extended_versus_rees(a):
    # with l ones in front, the partial products below l are all 1
    l = a.count(1)
    rees, ext = filter_regular_rees(a), filter_regular_extended(a)
    if l == 0:
        assert ext == rees + 1
    else:
        assert ext == rees - (l - 1)
