from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import direct_q_number, gaussian_by_division
from twistdual.scalars import (
    ConfigurationError,
    Cyc,
    Cyclotomic,
    GF,
    PrimeField,
    Rationals,
    cyclotomic_polynomial,
    field_from_json,
    gaussian_binomial_poly,
    ipoly_add,
    ipoly_eval,
    ipoly_mul,
    ipoly_shift,
    multiplicative_order,
    primitive_root,
    q_binomial,
    q_factorial,
    q_number,
    scalar_from_json,
)

Q = Rationals()
small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyc3(draw):
    F = Cyclotomic(3)
    return Cyc._reduce(3, [draw(small) for _ in range(F.degree)])


@st.composite
def cyc4(draw):
    return Cyc._reduce(4, [draw(small) for _ in range(2)])


def gf(p):
    return st.integers(0, p - 1).map(lambda v: GF(p, v))


@pytest.mark.parametrize("strategy", [small, cyc3(), cyc4(), gf(7), gf(13)],
                         ids=["Q", "Q(z3)", "Q(z4)", "F7", "F13"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(strategy, data):
    a, b, c = data.draw(strategy), data.draw(strategy), data.draw(strategy)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * (1 / a) == 1
        assert (a ** -2) * a * a == 1


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_generator_is_primitive():
    for ell in range(2, 13):
        z = Cyclotomic(ell).gen
        assert z ** ell == 1
        assert all(z ** d != 1 for d in range(1, ell))
        assert multiplicative_order(z) == ell


def test_field_configuration_errors():
    with pytest.raises(ConfigurationError):
        Cyclotomic(1)
    with pytest.raises(ConfigurationError):
        PrimeField(9)
    with pytest.raises(ConfigurationError):
        Cyclotomic(3).gen + Cyclotomic(4).gen
    with pytest.raises(ConfigurationError):
        PrimeField(5)(Cyclotomic(3).gen)


def test_q_number_examples():
    assert q_number(0, Fraction(7)) == 0
    assert q_number(2, Fraction(-1)) == 0
    F7 = PrimeField(7)
    assert q_number(5, F7(2)) == F7(3)
    assert q_number(5, F7(2)) == direct_q_number(5, F7(2), F7.one)


def test_q_factorial_examples():
    assert q_factorial(0, Fraction(5)) == 1
    assert q_factorial(3, Fraction(1)) == 6
    assert q_factorial(2, Fraction(-1)) == 0
    assert q_factorial(3, PrimeField(5)(4)) == 0


@pytest.mark.parametrize("field,ell", [(Cyclotomic(4), 4), (Cyclotomic(6), 3), (PrimeField(7), 6), (PrimeField(13), 4)])
def test_q_number_vanishes_exactly_at_order(field, ell):
    q = primitive_root(field, ell)
    assert q_number(ell, q) == 0
    assert all(q_number(m, q) != 0 for m in range(1, ell))


def test_q_binomial_examples():
    assert gaussian_binomial_poly(4, 2) == (1, 1, 2, 1, 1)
    assert q_binomial(4, 2, Fraction(1)) == 6
    assert q_binomial(4, 2, Cyclotomic(4).gen) == 0
    assert q_binomial(3, 5, Fraction(2)) == 0
    assert q_binomial(3, -1, Fraction(2)) == 0


def test_q_pascal_identity():
    for m in range(1, 13):
        for i in range(0, m + 1):
            lhs = gaussian_binomial_poly(m, i)
            rhs = ipoly_add(gaussian_binomial_poly(m - 1, i - 1), ipoly_shift(gaussian_binomial_poly(m - 1, i), i))
            assert lhs == rhs, (m, i)


def test_gaussian_binomial_matches_division_oracle():
    for m in range(0, 11):
        for i in range(0, m + 1):
            assert gaussian_binomial_poly(m, i) == gaussian_by_division(m, i)


def test_reduce_then_evaluate_matches_factorial_quotient():
    for q in (Fraction(2), Fraction(-3, 2), Cyclotomic(5).gen, PrimeField(11)(3)):
        for m in range(9):
            for i in range(m + 1):
                den = q_factorial(i, q) * q_factorial(m - i, q)
                if den:
                    assert q_binomial(m, i, q) == q_factorial(m, q) / den


def test_q_binomial_at_root_of_unity_is_defined_where_quotient_is_not():
    z = Cyclotomic(3).gen
    assert q_factorial(3, z) == 0
    # [4 choose 3]_z = [4]_z = 1 + z + z^2 + z^3 = 1
    assert q_binomial(4, 3, z) == 1


def test_primitive_root_examples():
    assert primitive_root(Cyclotomic(2), 2) == -1
    assert primitive_root(PrimeField(7), 3) == PrimeField(7)(2)
    with pytest.raises(ConfigurationError):
        primitive_root(PrimeField(7), 5)
    assert primitive_root(Q, 2) == -1
    with pytest.raises(ConfigurationError):
        primitive_root(Q, 3)
    assert primitive_root(Cyclotomic(6), 3) == Cyclotomic(6).gen ** 2


def test_multiplicative_order_rejects_non_roots():
    with pytest.raises(ConfigurationError):
        multiplicative_order(Fraction(2))
    with pytest.raises(ZeroDivisionError):
        multiplicative_order(PrimeField(5)(0))


def test_formatting_and_json_round_trip():
    F = Cyclotomic(4)
    z = F.gen
    assert F.format(1 + z * z * z) == "1-z"
    assert F.format(z - z) == "0"
    for fld, x in ((Q, Fraction(-1, 2)), (F, Fraction(1, 3) + 2 * z), (PrimeField(7), PrimeField(7)(5))):
        assert scalar_from_json(fld.scalar_to_json(x)) == x
        assert field_from_json(fld.to_json()) == fld


def test_int_polynomial_helpers():
    assert ipoly_mul((1, 1), (1, -1)) == (1, 0, -1)
    assert ipoly_eval((1, 2, 3), Fraction(2)) == 17
