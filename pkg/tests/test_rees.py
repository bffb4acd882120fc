from math import comb, prod

import pytest
from hypothesis import given, settings, strategies as st

from mixedmult.closed_forms import bigraded_free_mixed, regular_sequence_rees_mixed
from mixedmult.errors import PreconditionError
from mixedmult.hilbert import diagonal_multiplicity, spot_check
from mixedmult.monomial import RingContext, ideal, pure_powers
from mixedmult.polynomial import Poly
from mixedmult.rees import (
    embedded_degree,
    free_bigraded_mixed,
    free_bigraded_presentation,
    nonstandard_mixed,
    quotient_degree_values,
    quotient_hilbert_polynomial,
    rees_function,
    rees_hilbert,
    rees_mixed_multiplicities,
    sdim_flag,
)

X1SQ = ideal(2, (2, 0))


def test_rees_table_examples():
    T = rees_hilbert(X1SQ, ((0, 0), (8, 3)))
    for (u, v), h in T.values.items():
        if u >= 2 * v:
            assert h == u - 2 * v + 1
    m = RingContext(3).maximal()
    h = rees_function(m)
    for u in range(6):
        for v in range(u + 1):
            assert h((u, v)) == comb(u + 2, 2)
    # v = 0 is the ring itself
    assert [h((u, 0)) for u in range(4)] == [1, 3, 6, 10]


def test_rees_single_square():
    data = rees_mixed_multiplicities(X1SQ)
    u, v = Poly.var(2, 0), Poly.var(2, 1)
    assert data.polynomial.poly == u - 2 * v + 1
    assert data.mixed == [-2, 1]
    assert data.s == 1 and data.rho == 1
    assert all(c.passed for c in data.checks)
    assert sdim_flag(data).passed


def test_rees_linear_generators():
    # deg (x_i t) = (1, 1) is still a non-standard bigrading, so signs can appear
    data = rees_mixed_multiplicities(ideal(3, (1, 0, 0), (0, 1, 0)))
    assert data.mixed == regular_sequence_rees_mixed([1, 1], 1, 3) == [-1, 0, 1]
    assert all(c.passed for c in data.checks)


@pytest.mark.parametrize("I", [X1SQ, ideal(2, (2, 0), (1, 1)), ideal(3, (1, 1, 0), (0, 0, 2)), RingContext(2).maximal()])
def test_cone_fit_spot_check(I):
    data = rees_mixed_multiplicities(I)
    assert spot_check(data.polynomial, rees_function(I), count=50, reach=25) == []


@pytest.mark.parametrize("I", [X1SQ, ideal(2, (2, 0), (1, 1)), pure_powers(3, (1, 2))])
def test_quotient_polynomial_matches_enumeration(I):
    data = rees_mixed_multiplicities(I)
    v0 = data.polynomial.region.v0
    for v in (v0 + 1, v0 + 2, v0 + 3):
        P = quotient_hilbert_polynomial(data, v)
        start = data.slope * v + data.polynomial.region.u0
        us = list(range(start, start + 10))
        assert [P(u) for u in us] == quotient_degree_values(I, v, us)


def test_quotient_polynomial_single_square():
    data = rees_mixed_multiplicities(X1SQ)
    for v in (1, 2, 3):
        assert quotient_hilbert_polynomial(data, v) == Poly.const(1, 2 * v)


def test_quotient_below_region():
    data = rees_mixed_multiplicities(X1SQ)
    v0 = data.polynomial.region.v0
    if v0 == 0:
        with pytest.raises(PreconditionError):
            quotient_hilbert_polynomial(data, -1)
    else:
        with pytest.raises(PreconditionError):
            quotient_hilbert_polynomial(data, v0 - 1)


@pytest.mark.parametrize("I,c,e,deg", [(X1SQ, 3, 1, 1), (RingContext(2).maximal(), 2, 1, 2)])
def test_embedded_degree(I, c, e, deg):
    data = rees_mixed_multiplicities(I)
    out = embedded_degree(data, c, e)
    assert out["formula"] == out["diagonal"] == deg
    assert out["check"].passed


def test_embedded_degree_preconditions():
    data = rees_mixed_multiplicities(X1SQ)
    with pytest.raises(PreconditionError):
        embedded_degree(data, 2, 1)
    with pytest.raises(PreconditionError):
        embedded_degree(data, 5, 0)


@pytest.mark.parametrize("m,degs", [(2, [1]), (2, [1, 2]), (3, [2]), (2, [2, 3]), (3, [1, 1]), (2, [0])])
def test_free_bigraded_matches_closed_form(m, degs):
    assert free_bigraded_mixed(m, degs) == bigraded_free_mixed(m, len(degs), degs)


@pytest.mark.parametrize("degs", [(2,), (1, 2), (2, 2), (1, 3), (2, 3)])
def test_regular_sequence_matches_closed_form(degs):
    n = 3 if len(degs) > 1 else 2
    I = pure_powers(n, degs)
    data = rees_mixed_multiplicities(I)
    assert data.mixed == regular_sequence_rees_mixed(sorted(degs), 1, n)
    assert data.mixed[-1] == 1


def test_nonstandard_needs_bigrading():
    with pytest.raises(PreconditionError):
        nonstandard_mixed(free_bigraded_presentation(1, [1]).__class__(RingContext(2)), 1)


def test_rees_rejects_zero_and_unit():
    with pytest.raises(PreconditionError):
        rees_mixed_multiplicities(RingContext(2).zero())
    with pytest.raises(PreconditionError):
        rees_mixed_multiplicities(RingContext(2).unit())


def test_diagonal_of_free_bigraded():
    from mixedmult.hilbert import GradedPresentation, diagonal_formula, presentation_mixed

    P = GradedPresentation(RingContext.blocks(2, 2))
    mm = presentation_mixed(P)
    for lam in ((1, 1), (2, 1)):
        assert diagonal_multiplicity(P, lam) == diagonal_formula(mm, lam)
    P1 = GradedPresentation(RingContext(3))
    assert diagonal_multiplicity(P1, (1,)) == 1


@settings(max_examples=10)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=2).map(sorted))
def test_top_coefficient_property(degs):
    n = len(degs) + 1
    I = pure_powers(n, degs)
    data = rees_mixed_multiplicities(I)
    assert data.mixed[data.s] == data.e_top_expected
    assert data.mixed[data.rho] > 0
