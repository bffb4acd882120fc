from math import comb, prod

import pytest
from hypothesis import assume, given, settings, strategies as st

from mixedmult.errors import InfiniteLength, InputError, PreconditionError
from mixedmult.monomial import (
    MonomialIdeal,
    RingContext,
    colength,
    height,
    ideal,
    ideal_sum,
    order,
    power,
    product,
    pure_powers,
)
from mixedmult.multiplicities import (
    IdealTuple,
    analytic_spread,
    bhattacharya_length,
    extended_rees_multiplicity,
    gm_multiplicity,
    inequality_suite,
    j_multiplicity,
    leading_reduction_check,
    milnor_sequence,
    minkowski_holds,
    mixed_multiplicities,
    mixed_sequence,
    multi_rees_formula,
    multi_rees_multiplicity,
    multiplicity_sequence,
    multiplicity_sequence_support_check,
    order_formula_check,
    rees_algebra_multiplicity,
    rho,
    rigidity_check,
    rij_total_check,
    samuel_multiplicity,
    staircase_volume_multiplicity,
    stuckrad_vogel_degrees,
)

from strategies import ideals, primary_ideals

M2 = RingContext(2).maximal()
M3 = RingContext(3).maximal()
J0 = ideal(2, (2, 0), (1, 1), (0, 3))


# ---------------------------------------------------------------- lengths and Samuel


def test_bhattacharya_lengths():
    assert bhattacharya_length([M2, M2], (1, 1)) == 3
    assert bhattacharya_length([J0], (1,)) == 4
    assert bhattacharya_length([J0], (2,)) == 13
    with pytest.raises(InfiniteLength):
        bhattacharya_length([ideal(2, (1, 0))], (1,))
    with pytest.raises(InputError):
        bhattacharya_length([J0], (1, 2))


@pytest.mark.parametrize(
    "I,e",
    [(M2, 1), (J0, 5), (pure_powers(2, (3, 4)), 12), (pure_powers(3, (2, 2, 2)), 8)],
)
def test_samuel_and_staircase(I, e):
    assert samuel_multiplicity(I) == e
    assert staircase_volume_multiplicity(I) == e


def test_samuel_rejects_non_primary():
    with pytest.raises(InfiniteLength):
        samuel_multiplicity(ideal(2, (1, 0)))
    with pytest.raises(InfiniteLength):
        staircase_volume_multiplicity(ideal(2, (1, 1)))


@pytest.mark.parametrize("J,s", [(M2, 2), (ideal(2, (1, 1)), 1), (ideal(2, (2, 0), (1, 1)), 2), (ideal(3, (1, 0, 0), (0, 1, 0)), 2)])
def test_analytic_spread(J, s):
    assert analytic_spread(J) == s


# ---------------------------------------------------------------- mixed multiplicities


def test_mixed_sequence_small_example():
    assert mixed_sequence(M2, J0) == [1, 2]
    # e(mJ) = e_0 + 2 e_1 + e(J), both sides by independent means
    assert staircase_volume_multiplicity(product(M2, J0)) == 10 == 1 + 2 * 2 + 5


def test_parameter_selection_oracle():
    # e_i(m | (x^2, y^2, z^2)) = colength of (i squares, d - i variables) = 2^i
    J = pure_powers(3, (2, 2, 2))
    seq = mixed_sequence(M3, J)
    oracle = [colength(pure_powers(3, [2] * i + [1] * (3 - i))) for i in range(3)]
    assert seq == oracle == [1, 2, 4]


def test_principal_ideal_has_rho_zero():
    J = ideal(2, (1, 1))
    mm = mixed_multiplicities(IdealTuple(M2, [J]))
    assert mm.as_list() == [1, 0]
    assert rho(mm) == 0
    assert all(c.passed for c in rigidity_check(IdealTuple(M2, [J]), mm))


def test_primary_J_has_all_positive():
    seq = mixed_sequence(M2, J0)
    assert rho(seq) == 1 and all(e > 0 for e in seq)


def test_non_domain_base():
    # A = k[x1..x4]/(x1x2, x1x3); J = (x1, x4) kills the component x1 != 0 in degree e_1
    base = ideal(4, (1, 1, 0, 0), (1, 0, 1, 0))
    I = base.ring.maximal()
    J = ideal(4, (1, 0, 0, 0), (0, 0, 0, 1))
    T = IdealTuple(I, [J], base)
    mm = mixed_multiplicities(T)
    assert mm.as_list() == [1, 0, 0]
    assert leading_reduction_check(T, mm).passed
    assert rij_total_check(T, mm).passed
    assert all(c.passed for c in rigidity_check(T, mm))


def test_ideal_tuple_preconditions():
    with pytest.raises(PreconditionError):
        IdealTuple(ideal(2, (1, 0)), [M2])
    with pytest.raises(PreconditionError):
        IdealTuple(M2, [RingContext(2).unit()])


def test_multigraded_tuple():
    T = IdealTuple(M2, [ideal(2, (1, 0)), ideal(2, (0, 1))])
    mm = mixed_multiplicities(T)
    assert mm.total_degree == 1
    assert rij_total_check(T, mm).passed
    assert all(c.passed for c in rigidity_check(T, mm))


# ---------------------------------------------------------------- order formula


@pytest.mark.parametrize("J,o", [(J0, 2), (power(M2, 3), 3), (pure_powers(2, (3, 5)), 3)])
def test_order_formula(J, o):
    c = order_formula_check(J)
    assert c.passed and c.detail["order"] == o == order(J)


def test_order_formula_needs_height_two():
    with pytest.raises(PreconditionError):
        order_formula_check(ideal(2, (1, 0)))


# ---------------------------------------------------------------- multiplicity sequences


def test_multiplicity_sequence_primary():
    assert multiplicity_sequence(J0).values == [5, 0, 0]
    assert j_multiplicity(M2) == 1


def test_multiplicity_sequence_of_a_variable():
    I = ideal(2, (1, 0))
    seq = multiplicity_sequence(I)
    assert seq.values == [0, 1, 0]
    assert j_multiplicity(I) == 0
    assert multiplicity_sequence_support_check(I, seq).passed


def test_j_multiplicity_full_spread():
    I = ideal(2, (2, 0), (1, 1))
    assert analytic_spread(I) == 2
    assert j_multiplicity(I) > 0
    assert multiplicity_sequence_support_check(I).passed


def test_gm_multiplicity_is_sum_of_sequence():
    for I in (J0, ideal(2, (1, 0)), ideal(2, (2, 0), (1, 1))):
        assert gm_multiplicity(I) == sum(multiplicity_sequence(I).values)


# ---------------------------------------------------------------- blow-up algebras


@pytest.mark.parametrize("I,e", [(ideal(2, (2, 0), (1, 1), (0, 2)), 3), (M2, 2), (J0, 3)])
def test_rees_algebra_multiplicity(I, e):
    assert rees_algebra_multiplicity(I) == e == sum(mixed_sequence(M2, I))


def test_rees_integrally_closed_is_one_plus_order():
    I = ideal(2, (3, 0), (2, 1), (1, 2), (0, 3))
    assert rees_algebra_multiplicity(I) == 1 + order(I)


def test_extended_rees():
    assert extended_rees_multiplicity(M2) == 1
    assert isinstance(extended_rees_multiplicity(pure_powers(2, (2, 2))), int)
    assert isinstance(extended_rees_multiplicity(ideal(1, (3,))), int)


def test_blow_up_needs_positive_height():
    base = ideal(2, (1, 0))
    with pytest.raises(PreconditionError):
        rees_algebra_multiplicity(ideal(2, (0, 1)), ideal(2, (1, 1)))
    with pytest.raises(PreconditionError):
        rees_algebra_multiplicity(RingContext(2).unit())


def test_multi_rees():
    assert multi_rees_multiplicity([M2]) == rees_algebra_multiplicity(M2)
    for Js in ([M2, M2], [ideal(2, (1, 0)), ideal(2, (0, 1))]):
        assert multi_rees_multiplicity(Js) == multi_rees_formula(Js)


def test_stuckrad_vogel():
    out = stuckrad_vogel_degrees(ideal(2, (1, 0)))
    assert out["e"] == [1, 0] and out["degrees"] == [1, 0]
    out = stuckrad_vogel_degrees(J0)
    assert out["degrees"] == [-1, 2]
    assert out["negative"] == [1]


# ---------------------------------------------------------------- Milnor


def test_milnor_cubic_surface():
    ms = milnor_sequence((3, 3, 3))
    assert ms.star == (8, 4, 2, 1)


@pytest.mark.parametrize("a", [(2, 2), (3, 5), (4, 2, 3), (2, 3, 4, 2)])
def test_milnor_low_indices(a):
    ms = milnor_sequence(a)
    assert ms.values[0] == 1
    assert ms.values[1] == min(a) - 1
    assert ms.values[-1] == prod(x - 1 for x in a)


def test_milnor_rejects_small_exponents():
    with pytest.raises(InputError):
        milnor_sequence((1, 3))


# ---------------------------------------------------------------- inequalities


def test_inequalities_equal_ideals():
    checks = inequality_suite(J0, J0)
    assert all(c.passed for c in checks)
    assert mixed_sequence(J0, J0) == [5, 5]
    assert samuel_multiplicity(power(J0, 2)) == 4 * 5


def test_inequalities_example_pair():
    checks = {c.name: c for c in inequality_suite(M2, J0)}
    assert all(c.passed for c in checks.values())
    assert checks["expansion"].detail["eIJ"] == 10


def test_minkowski_exact():
    assert minkowski_holds(1, 1, 4, 2)
    assert minkowski_holds(3, 3, 12, 2)
    assert not minkowski_holds(1, 1, 5, 2)


# ---------------------------------------------------------------- properties


@settings(max_examples=25)
@given(primary_ideals(max_exp=4))
def test_samuel_matches_staircase(I):
    assert samuel_multiplicity(I) == staircase_volume_multiplicity(I)


@settings(max_examples=20)
@given(primary_ideals(n=2, max_exp=3), primary_ideals(n=2, max_exp=3))
def test_inequality_suite_holds(I, J):
    assert all(c.passed for c in inequality_suite(I, J))


@settings(max_examples=15)
@given(primary_ideals(n=2, max_exp=3), ideals(n=2, max_exp=3, max_gens=3))
def test_leading_coefficient_and_rigidity(I, J):
    T = IdealTuple(I, [J])
    mm = mixed_multiplicities(T)
    assert leading_reduction_check(T, mm).passed
    assert all(c.passed for c in rigidity_check(T, mm))


@settings(max_examples=10)
@given(primary_ideals(n=3, max_exp=2, extra=1), ideals(n=3, max_exp=2, max_gens=2), ideals(n=3, max_exp=2, max_gens=2))
def test_leading_coefficient_over_a_base(I, J, B):
    # A = k[x]/B with J nonzero in A
    assume(not ideal_sum(J, B) == B)
    T = IdealTuple(I, [J], B)
    mm = mixed_multiplicities(T)
    assert leading_reduction_check(T, mm).passed
    assert not [e for e in mm.entries.values() if e < 0]


@settings(max_examples=10)
@given(primary_ideals(n=2, max_exp=3), primary_ideals(n=2, max_exp=3), ideals(n=2, max_exp=3, max_gens=3))
def test_positivity_support_ignores_primary_ideal(I, I2, J):
    a = mixed_sequence(I, J)
    b = mixed_sequence(I2, J)
    assert [i for i, e in enumerate(a) if e > 0] == [i for i, e in enumerate(b) if e > 0]


@settings(max_examples=12)
@given(ideals(n=2, max_exp=3, max_gens=3))
def test_rees_algebra_is_sum_of_mixed(I):
    assume(height(I) >= 1)
    assert rees_algebra_multiplicity(I) == sum(mixed_sequence(M2, I))
