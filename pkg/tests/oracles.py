"""Independent reference computations used as test oracles.

None of these share code paths with the implementation beyond field
arithmetic and the Element/UniPoly containers.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from twistdual.elements import Element, UniPoly


def direct_q_number(m, q, one):
    total = one * 0
    power = one
    for _ in range(m):
        total = total + power
        power = power * q
    return total


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_exact_div(num, den):
    num = list(num)
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        quot[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert not any(num), "division was not exact"
    while len(quot) > 1 and quot[-1] == 0:
        quot.pop()
    return quot


def gaussian_by_division(m: int, i: int) -> tuple[int, ...]:
    """prod_{j<i} (1 - t^(m-j)) / prod_{j<i} (1 - t^(j+1)) by exact long division over Q."""
    num, den = [Fraction(1)], [Fraction(1)]
    for j in range(i):
        num = _poly_mul(num, [Fraction(1)] + [Fraction(0)] * (m - j - 1) + [Fraction(-1)])
        den = _poly_mul(den, [Fraction(1)] + [Fraction(0)] * j + [Fraction(-1)])
    quot = _poly_exact_div(num, den)
    assert all(c.denominator == 1 for c in quot)
    return tuple(int(c) for c in quot)


def rewrite_normal_form(gen: Element, m: int, n: int) -> Element:
    """Normal form of the word y^m x^n by rewriting yx -> gen until every word is x^a y^b."""
    fld = gen.field
    replacement = [("x" * a + "y" * b, c) for (a, b), c in gen.sorted_terms()]
    todo = {"y" * m + "x" * n: fld.one}
    done: dict = {}
    while todo:
        word, coeff = todo.popitem()
        k = word.find("yx")
        if k < 0:
            key = (word.count("x"), word.count("y"))
            done[key] = done.get(key, fld.zero) + coeff
            continue
        for piece, c in replacement:
            w = word[:k] + piece + word[k + 2:]
            v = todo.get(w, fld.zero) + coeff * c
            if v:
                todo[w] = v
            else:
                todo.pop(w, None)
    return Element(fld, done)


def ore_word_expansion(family, m: int, n: int) -> Element:
    """sum over all 2^m words w in {theta, delta} of w(x^n) (x) y^(number of thetas)."""
    fld = family.field
    out = Element.zero(fld)
    for word in product((True, False), repeat=m):
        f = UniPoly.monomial(fld, "x", n)
        for is_theta in word:
            f = family.theta(f) if is_theta else family.delta_op(f)
        i = sum(word)
        out = out + Element(fld, {(k, i): c for k, c in enumerate(f.coeffs) if c})
    return out


def brute_force_grouplike_vectors(alg) -> list[tuple]:
    """Every c in F_p^dim with c(1) = 1 and c(e_r e_s) = c_r c_s, from structure constants alone."""
    fld = alg.field
    found = []
    for c in product(list(fld.elements()), repeat=alg.dim):
        if sum((u * v for u, v in zip(alg.unit, c)), fld.zero) != 1:
            continue
        ok = True
        for r in range(alg.dim):
            for s in range(alg.dim):
                lhs = sum((coef * c[k] for k, coef in alg.mul[r][s].items()), fld.zero)
                if lhs != c[r] * c[s]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(c))
    return found
