from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import table
from fixtures import AXIOM_FAMILIES, ORE_WORD_FAMILIES, REDUCED_CASES
from oracles import ore_word_expansion, rewrite_normal_form
from twistdual.elements import Element, UniPoly
from twistdual.parsing import parse_element, parse_poly
from twistdual.scalars import ConfigurationError, Cyclotomic, Rationals, q_number
from twistdual.twists import (
    InconsistentRelationError,
    Ore,
    QWeyl,
    TwistTable,
    multiply,
    parse_family,
    quantum_xi,
    reduced_twist_apply,
    reduced_twist_eval,
    root_order,
    twist_apply,
    twist_eval,
    twist_eval_relation,
)

Q = Rationals()


def el(text, fam):
    return parse_element(text, parse_family(fam).field)


def test_closed_form_examples():
    t = table("quantum:q=3")
    assert twist_eval(t, 2, 3) == Element(Q, {(3, 2): 3 ** 6})
    assert twist_eval(table("jordan:char0"), 1, 1) == el("xy + y^2", "jordan:char0")
    assert twist_eval(table("weyl:char0"), 2, 1) == el("xy^2 + 2y", "weyl:char0")
    assert twist_eval(table("qweyl:q=5"), 1, 1) == el("5xy + 1", "qweyl:q=5")


def test_jordan_one_two_by_hand():
    # y x^2 = (xy + y^2) x = x(xy + y^2) + (xy + y^2) y + y^3
    assert twist_eval(table("jordan:char0"), 1, 2) == el("x^2y + 2xy^2 + 2y^3", "jordan:char0")
    assert twist_eval_relation(table("jordan:char0"), 1, 2) == el("x^2y + 2xy^2 + 2y^3", "jordan:char0")


def test_qweyl_and_weyl_constant_terms():
    # y^2 x^2 has constant term [2]_q (qweyl) and 2 (weyl)
    q = Fraction(3)
    assert twist_eval(table("qweyl:q=3"), 2, 2).terms[(0, 0)] == q_number(2, q)
    assert twist_eval(table("weyl:char0"), 2, 2).terms[(0, 0)] == 2
    assert twist_eval(table("weyl:p=5"), 2, 2).terms[(0, 0)] == 2


def test_relation_examples():
    t = table("quantum:q=7")
    assert twist_eval_relation(t, 1, 2) == Element(Q, {(2, 1): 49})
    for fam in ("swap", "jordan:p=3", "ore:u=2,delta=1"):
        assert twist_eval_relation(table(fam), 0, 5) == Element.monomial(parse_family(fam).field, 5, 0)


@pytest.mark.parametrize("fam", AXIOM_FAMILIES)
def test_closed_form_matches_relation_recursion(fam):
    t = table(fam)
    for m in range(7):
        for n in range(7):
            assert twist_eval(t, m, n) == twist_eval_relation(t, m, n), (m, n)


@pytest.mark.parametrize("fam", AXIOM_FAMILIES)
def test_closed_form_matches_word_rewriting(fam):
    t = table(fam)
    gen = t.family.generator()
    for m in range(4):
        for n in range(4):
            assert twist_eval(t, m, n) == rewrite_normal_form(gen, m, n), (m, n)


@pytest.mark.parametrize("fam", ORE_WORD_FAMILIES)
def test_ore_word_expansion(fam):
    t = table(fam)
    for m in range(5):
        for n in range(6):
            assert twist_eval(t, m, n) == ore_word_expansion(t.family, m, n), (m, n)


@pytest.mark.parametrize("fam,period", REDUCED_CASES)
def test_reduced_formula(fam, period):
    t = table(fam)
    for m in range(2 * period + 4):
        for n in range(2 * period + 4):
            assert reduced_twist_eval(t, period, m, n) == twist_eval(t, m, n), (m, n)


def test_reduced_examples():
    for ell in (2, 3, 4):
        t = table(f"qweyl:ell={ell}")
        for n in range(7):
            assert reduced_twist_eval(t, ell, ell, n) == Element.monomial(t.field, n, ell)
    t = table("jordan:p=3")
    assert reduced_twist_eval(t, 3, 3, 4) == Element.monomial(t.field, 4, 3)
    t = table("weyl:p=5")
    assert reduced_twist_eval(t, 5, 7, 6) == twist_eval(t, 7, 6)


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_quantum_decomposition(ell):
    t = table(f"quantum:ell={ell}")
    q = t.family.q
    F = t.field
    for m in range(2 * ell + 1):
        for n in range(2 * ell + 1):
            g, f = UniPoly.monomial(F, "y", m), UniPoly.monomial(F, "x", n)
            swapped = Element.monomial(F, n, m)
            assert twist_eval(t, m, n) == swapped - quantum_xi(q, ell, g, f).scale(1 - q), (m, n)


def test_reduced_apply_matches_bilinear_extension():
    t = table("quantum:ell=3")
    F = t.field
    f = parse_poly("x^7 + 2x^4 - x + 3", F, "x")
    g = parse_poly("y^5 - y^3 + z*y", F, "y")
    assert reduced_twist_apply(t, 3, g, f) == twist_apply(t, g, f)


def test_qweyl_is_the_ore_extension_with_q_derivative():
    F = Cyclotomic(5)
    q = F.gen
    qw = TwistTable(QWeyl(F, q))
    ore = Ore(F, q, F.zero, UniPoly(F, "x", (1,)))
    to = TwistTable(ore)
    for m in range(6):
        for n in range(6):
            assert twist_eval(qw, m, n) == twist_eval(to, m, n)
    for n in range(13):
        xn = UniPoly.monomial(F, "x", n)
        expected = UniPoly.monomial(F, "x", n - 1, q_number(n, q)) if n else UniPoly(F, "x", ())
        assert ore.delta_op(xn) == expected
        assert ore.delta_op(ore.theta(xn)) == ore.theta(ore.delta_op(xn)) * q


def test_left_theta_derivation_rule():
    fam = parse_family("ore:u=3,v=1,delta=2;0;1")
    f = parse_poly("x^3 + 2x", Q, "x")
    g = parse_poly("x^2 - 5", Q, "x")
    assert fam.delta_op(f * g) == fam.theta(f) * fam.delta_op(g) + fam.delta_op(f) * g


def test_multiply_examples():
    t = table("quantum:q=5")
    assert multiply(t, Element.monomial(Q, 0, 1), Element.monomial(Q, 1, 0)) == Element(Q, {(1, 1): 5})
    s = table("swap")
    x, y = Element.monomial(Q, 1, 0), Element.monomial(Q, 0, 1)
    assert multiply(s, x, y) == multiply(s, y, x) == Element.monomial(Q, 1, 1)
    w = table("qweyl:q=-1")
    assert multiply(w, Element.monomial(Q, 0, 2), x) == Element.monomial(Q, 1, 2)


def test_multiply_field_mismatch():
    with pytest.raises(ConfigurationError):
        multiply(table("swap"), Element.monomial(Cyclotomic(3), 1, 0), Element.monomial(Q, 1, 0))


terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                        st.fractions(min_value=-5, max_value=5, max_denominator=3), max_size=5)


@settings(max_examples=50, deadline=None)
@given(a=terms, b=terms)
def test_swap_multiplication_commutes(a, b):
    s = table("swap")
    u, v = Element(Q, a), Element(Q, b)
    assert multiply(s, u, v) == multiply(s, v, u)


def test_overrides_and_depth_guard():
    bad = TwistTable(parse_family("swap"), overrides={(1, 1): Element(Q, {(1, 1): 2})})
    assert twist_eval(bad, 1, 1) == Element(Q, {(1, 1): 2})
    shallow = TwistTable(parse_family("jordan:char0"), max_depth=3)
    with pytest.raises(InconsistentRelationError):
        twist_eval_relation(shallow, 9, 9)


def test_concurrent_evaluation_is_consistent():
    t = table("qweyl:ell=4")
    cells = [(m, n) for m in range(9) for n in range(9)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda mn: twist_eval(t, *mn), cells))
    fresh = table("qweyl:ell=4")
    assert results == [twist_eval(fresh, m, n) for m, n in cells]


def test_family_parsing():
    assert parse_family("quantum:ell=2").q == -1
    assert parse_family("quantum:p=7,ell=3").q == 2
    assert root_order(parse_family("qweyl:ell=4")) == 4
    assert root_order(parse_family("weyl:p=5")) == 5
    assert root_order(parse_family("weyl:char0")) is None
    for bad in ("nope", "quantum", "quantum:ell=x", "swap:foo=1", "quantum:p=7,ell=5", "qweyl:q=1"):
        with pytest.raises(ConfigurationError):
            parse_family(bad)
    for text in ("quantum:ell=3", "ore:p=5,u=2,v=1,delta=1;3", "jordan:char0"):
        fam = parse_family(text)
        assert parse_family(fam.spec_string()) == fam
