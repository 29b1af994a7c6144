"""Bounded-degree checkers for the twisting-map axioms and the continuity criteria.

Every checker walks its inputs in lexicographic order and stops at the first
counterexample, so reports are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any

from .elements import Element, UniPoly
from .twists import Ore, TwistTable, multiply, twist_eval


@dataclass
class Counterexample:
    description: str
    inputs: dict[str, Any]
    lhs: Element
    rhs: Element

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "inputs": {k: (str(v) if isinstance(v, (Element, UniPoly)) else v) for k, v in self.inputs.items()},
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


@dataclass
class CheckReport:
    passed: bool
    N: int
    counterexample: Counterexample | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.passed:
            assert self.counterexample is not None and self.counterexample.lhs != self.counterexample.rhs

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
            "N": self.N,
        }


def _fail(N, description, inputs, lhs, rhs, name=""):
    return CheckReport(False, N, Counterexample(description, inputs, lhs, rhs), name)


def check_normal(t: TwistTable, N: int = 10) -> CheckReport:
    """tau(1 (x) x^n) = x^n (x) 1 and tau(y^m (x) 1) = 1 (x) y^m for m, n <= N."""
    f = t.family
    for m in range(N + 1):
        for n in range(N + 1):
            if m and n:
                continue
            lhs = twist_eval(t, m, n)
            rhs = f.mono(n, m)
            if lhs != rhs:
                return _fail(N, f"tau(y^{m} (x) x^{n}) is not the tensor swap", {"m": m, "n": n}, lhs, rhs, "normal")
    return CheckReport(True, N, name="normal")


def _left_compose(t: TwistTable, b: int, a1: int, a2: int) -> Element:
    # (m_A (x) id)(id (x) tau)(tau (x) id)(y^b (x) x^a1 (x) x^a2)
    out = Element.zero(t.field)
    for (i, j), c in twist_eval(t, b, a1).terms.items():
        out = out + twist_eval(t, j, a2).shift(i, 0).scale(c)
    return out


def _right_compose(t: TwistTable, b1: int, b2: int, a: int) -> Element:
    # (id (x) m_B)(tau (x) id)(id (x) tau)(y^b1 (x) y^b2 (x) x^a)
    out = Element.zero(t.field)
    for (i, j), c in twist_eval(t, b2, a).terms.items():
        out = out + twist_eval(t, b1, i).shift(0, j).scale(c)
    return out


def check_multiplicative(t: TwistTable, N: int = 10) -> CheckReport:
    """Both multiplicativity identities on monomial triples of total degree <= N."""
    for b in range(N + 1):
        for a1 in range(N + 1 - b):
            for a2 in range(N + 1 - b - a1):
                lhs = twist_eval(t, b, a1 + a2)
                rhs = _left_compose(t, b, a1, a2)
                if lhs != rhs:
                    return _fail(N, "tau(id (x) m_A) != (m_A (x) id)(id (x) tau)(tau (x) id)",
                                 {"m": b, "split": [a1, a2]}, lhs, rhs, "multiplicative")
    for b1 in range(N + 1):
        for b2 in range(N + 1 - b1):
            for a in range(N + 1 - b1 - b2):
                lhs = twist_eval(t, b1 + b2, a)
                rhs = _right_compose(t, b1, b2, a)
                if lhs != rhs:
                    return _fail(N, "tau(m_B (x) id) != (id (x) m_B)(tau (x) id)(id (x) tau)",
                                 {"split": [b1, b2], "n": a}, lhs, rhs, "multiplicative")
    return CheckReport(True, N, name="multiplicative")


def _monomials(max_total: int):
    for d in range(max_total + 1):
        for a in range(d + 1):
            yield a, d - a


def check_associative(t: TwistTable, N: int = 10) -> CheckReport:
    """(uv)w = u(vw) and 1u = u1 = u for monomials u, v, w with combined degree <= N."""
    fld = t.field
    one = Element.monomial(fld, 0, 0)
    mono = {}

    def m(a, b):
        key = (a, b)
        if key not in mono:
            mono[key] = Element.monomial(fld, a, b)
        return mono[key]

    for a, b in _monomials(N):
        u = m(a, b)
        for lhs, rhs, side in ((multiply(t, one, u), u, "left"), (multiply(t, u, one), u, "right")):
            if lhs != rhs:
                return _fail(N, f"{side} unit law fails", {"u": [a, b]}, lhs, rhs, "associative")

    products: dict = {}

    def prod(u, v):
        key = (u, v)
        if key not in products:
            products[key] = multiply(t, m(*u), m(*v))
        return products[key]

    def times(e: Element, w) -> Element:
        out = Element.zero(fld)
        for mono_, c in e.terms.items():
            out = out + prod(mono_, w).scale(c)
        return out

    def times_left(u, e: Element) -> Element:
        out = Element.zero(fld)
        for mono_, c in e.terms.items():
            out = out + prod(u, mono_).scale(c)
        return out

    for u in _monomials(N):
        du = u[0] + u[1]
        for v in _monomials(N - du):
            dv = v[0] + v[1]
            uv = prod(u, v)
            for w in _monomials(N - du - dv):
                lhs = times(uv, w)
                rhs = times_left(u, prod(v, w))
                if lhs != rhs:
                    return _fail(N, "(uv)w != u(vw)", {"u": list(u), "v": list(v), "w": list(w)}, lhs, rhs,
                                 "associative")
    return CheckReport(True, N, name="associative")


def check_axioms(t: TwistTable, N: int = 10) -> list[CheckReport]:
    return [check_normal(t, N), check_multiplicative(t, N), check_associative(t, N)]


def _ore_word_sums(family: Ore, d: int, f: UniPoly) -> list[UniPoly]:
    """[sum_{w in W_i^d} w(f) for i = 0..d], built letter by letter."""
    zero = UniPoly(family.field, "x", ())
    sums = [f]
    for _ in range(d):
        nxt = [zero] * (len(sums) + 1)
        for i, s in enumerate(sums):
            if s:
                nxt[i + 1] = nxt[i + 1] + family.theta(s)
                nxt[i] = nxt[i] + family.delta_op(s)
        sums = nxt
    return sums


def check_central_power(t: TwistTable, d: int, N: int = 10) -> CheckReport:
    """x^d (x) 1 and 1 (x) y^d commute with every monomial of degree <= N.

    For Ore families the operator identities theta^d = id and
    sum_{w in W_i^d} w = 0 (0 <= i < d) are also checked on x^n, n <= N.
    """
    if d < 1:
        raise ValueError("power must be positive")
    fld = t.field
    for label, central in (("x", Element.monomial(fld, d, 0)), ("y", Element.monomial(fld, 0, d))):
        for a, b in sorted(_monomials(N)):
            u = Element.monomial(fld, a, b)
            lhs = multiply(t, central, u)
            rhs = multiply(t, u, central)
            if lhs != rhs:
                return _fail(N, f"{label}^{d} does not commute with x^{a}y^{b}",
                             {"power": d, "central": label, "u": [a, b]}, lhs, rhs, "central")
    family = t.family
    if isinstance(family, Ore):
        for n in range(N + 1):
            xn = UniPoly.monomial(fld, "x", n)
            theta_d = xn
            for _ in range(d):
                theta_d = family.theta(theta_d)
            if theta_d != xn:
                return _fail(N, f"theta^{d} != id", {"power": d, "n": n},
                             Element(fld, {(k, 0): c for k, c in enumerate(theta_d.coeffs)}),
                             Element.monomial(fld, n, 0), "central")
            sums = _ore_word_sums(family, d, xn)
            for i in range(d):
                if sums[i]:
                    return _fail(N, f"sum over words W_{i}^{d} is nonzero", {"power": d, "i": i, "n": n},
                                 Element(fld, {(k, 0): c for k, c in enumerate(sums[i].coeffs)}),
                                 Element.zero(fld), "central")
    return CheckReport(True, N, name="central")


def check_ideal_stability(t: TwistTable, P: UniPoly, Q: UniPoly, N: int = 10) -> CheckReport:
    """tau(B (x) (P)) in (P) (x) B and tau((Q) (x) A) in A (x) (Q), tested up to degree N."""
    if not (P.is_monic and Q.is_monic and P.degree >= 1 and Q.degree >= 1):
        raise ValueError("P and Q must be monic and nonconstant")
    fld = t.field
    dp, dq = P.degree, Q.degree
    for m in range(N + 1):
        for a in range(N + 1 - m - dp):
            value = Element.zero(fld)
            for k, c in enumerate(P.coeffs):
                if c:
                    value = value + twist_eval(t, m, a + k).scale(c)
            rem = {}
            for b, leg in value.x_legs().items():
                r = leg % P
                for i, c in enumerate(r.coeffs):
                    if c:
                        rem[(i, b)] = c
            if rem:
                return _fail(N, f"x-leg of tau(y^{m} (x) x^{a} P) not divisible by P",
                             {"m": m, "a": a, "P": P, "value": value}, Element(fld, rem), Element.zero(fld),
                             "stability")
    for b in range(N + 1):
        for n in range(N + 1 - b - dq):
            value = Element.zero(fld)
            for k, c in enumerate(Q.coeffs):
                if c:
                    value = value + twist_eval(t, b + k, n).scale(c)
            rem = {}
            for a, leg in value.y_legs().items():
                r = leg % Q
                for j, c in enumerate(r.coeffs):
                    if c:
                        rem[(a, j)] = c
            if rem:
                return _fail(N, f"y-leg of tau(y^{b} Q (x) x^{n}) not divisible by Q",
                             {"b": b, "n": n, "Q": Q, "value": value}, Element(fld, rem), Element.zero(fld),
                             "stability")
    return CheckReport(True, N, name="stability")


def check_centralize_hypothesis(t: TwistTable, ell: int, N: int = 10) -> CheckReport:
    """k[x^ell] and k[y^ell] are centralizing: tau agrees with the swap on them up to degree N."""
    if ell < 1:
        raise ValueError("ell must be positive")
    f = t.family
    for m, a in product(range(N + 1), range(0, N + 1, ell)):
        lhs = twist_eval(t, m, a)
        rhs = f.mono(a, m)
        if lhs != rhs:
            return _fail(N, f"tau(y^{m} (x) x^{a}) differs from the swap", {"m": m, "n": a}, lhs, rhs, "centralize")
    for b, n in product(range(0, N + 1, ell), range(N + 1)):
        lhs = twist_eval(t, b, n)
        rhs = f.mono(n, b)
        if lhs != rhs:
            return _fail(N, f"tau(y^{b} (x) x^{n}) differs from the swap", {"m": b, "n": n}, lhs, rhs, "centralize")
    return CheckReport(True, N, name="centralize")
