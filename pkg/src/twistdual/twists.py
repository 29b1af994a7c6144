"""Twisting maps tau: k[y] (x) k[x] -> k[x] (x) k[y] and the twisted product m_tau.

Each family knows its value on the generators, tau(y (x) x), and a closed
form for tau(y^m (x) x^n).  A :class:`TwistTable` memoises the closed form;
:func:`twist_eval_relation` rebuilds the same values from the generator
alone through the two multiplicativity identities, and serves as the
independent check on every closed form.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .elements import Element, GradedComponent, UniPoly, graded_components
from .scalars import (
    ConfigurationError,
    Cyclotomic,
    FieldSpec,
    PrimeField,
    Rationals,
    multiplicative_order,
    primitive_root,
    q_binomial,
    q_factorial,
    q_number,
)


class InconsistentRelationError(RuntimeError):
    """The generator relation does not determine a terminating rewrite."""


def rising(m: int, k: int) -> int:
    """m (m+1) ... (m+k-1), i.e. (m+k-1)!/(m-1)!."""
    out = 1
    for j in range(k):
        out *= m + j
    return out


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    out = 1
    for j in range(k):
        out *= n - j
    return out


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class TwistFamily:
    field: FieldSpec

    kind = "abstract"

    def generator(self) -> Element:
        """tau(y (x) x)."""
        raise NotImplementedError

    def closed_form(self, m: int, n: int, table: "TwistTable") -> Element:
        """tau(y^m (x) x^n) for m, n >= 1."""
        raise NotImplementedError

    def reduced_form(self, period: int, m: int, n: int) -> Element | None:
        """Division-algorithm formula with at most ``period`` terms, if the family has one."""
        return None

    def mono(self, a: int, b: int, c=1) -> Element:
        return Element.monomial(self.field, a, b, c)

    def spec_string(self) -> str:
        return f"{self.kind}:{_field_suffix(self.field)}"


def _field_suffix(field: FieldSpec) -> str:
    if isinstance(field, PrimeField):
        return f"p={field.p}"
    if isinstance(field, Cyclotomic):
        return f"ell={field.ell}"
    return "char0"


@dataclass(frozen=True)
class Swap(TwistFamily):
    kind = "swap"

    def generator(self):
        return self.mono(1, 1)

    def closed_form(self, m, n, table):
        return self.mono(n, m)


@dataclass(frozen=True)
class Quantum(TwistFamily):
    """Quantum plane: yx = q xy."""

    q: object = None
    kind = "quantum"

    def __post_init__(self):
        object.__setattr__(self, "q", self.field(self.q))
        if not self.q:
            raise ConfigurationError("quantum plane needs q != 0")

    def generator(self):
        return self.mono(1, 1, self.q)

    def closed_form(self, m, n, table):
        return self.mono(n, m, self.q ** (m * n))

    def spec_string(self):
        return f"quantum:{_field_suffix(self.field)},q={self.field.format(self.q)}"


@dataclass(frozen=True)
class QWeyl(TwistFamily):
    """Quantized Weyl algebra: yx - q xy = 1 (q != 1)."""

    q: object = None
    kind = "qweyl"

    def __post_init__(self):
        object.__setattr__(self, "q", self.field(self.q))
        if not self.q or self.q == 1:
            raise ConfigurationError("quantized Weyl algebra needs q not in {0, 1}")

    def generator(self):
        return Element(self.field, {(1, 1): self.q, (0, 0): 1})

    def coefficient(self, m: int, n: int, i: int):
        """Coefficient of x^(n-m+i) (x) y^i in tau(y^m (x) x^n); zero when m - i > n."""
        q = self.q
        k = m - i
        if k > n:
            return self.field.zero
        # [m i]_q * d_q^k x^n = [m i]_q [n k]_q [k]_q! x^(n-k), then theta^i
        return q_binomial(m, i, q) * q_binomial(n, k, q) * q_factorial(k, q) * q ** (i * (n - k))

    def closed_form(self, m, n, table):
        terms = {}
        for i in range(m + 1):
            c = self.coefficient(m, n, i)
            if c:
                terms[(n - m + i, i)] = c
        return Element(self.field, terms)

    def reduced_form(self, period, m, n):
        m1, m0 = divmod(m, period)
        terms = {}
        for i in range(m0 + 1):
            c = self.coefficient(m0, n % period, i)
            if c:  # skip before forming the exponent n - m0 + i
                terms[(n - m0 + i, m - m0 + i)] = c
        return Element(self.field, terms)

    def spec_string(self):
        return f"qweyl:{_field_suffix(self.field)},q={self.field.format(self.q)}"


@dataclass(frozen=True)
class Jordan(TwistFamily):
    """Jordan plane: yx - xy = y^2."""

    kind = "jordan"

    def generator(self):
        return Element(self.field, {(1, 1): 1, (0, 2): 1})

    @staticmethod
    def coefficient(m: int, n: int, i: int) -> int:
        return comb(n, i) * rising(m, n - i)

    def closed_form(self, m, n, table):
        return Element(self.field, {(i, m + n - i): self.coefficient(m, n, i) for i in range(n + 1)})

    def reduced_form(self, period, m, n):
        m0 = m % period
        n0 = n % period
        if m0 == 0:
            return self.mono(n, m)
        terms = {}
        for i in range(n0 + 1):
            c = self.field(self.coefficient(m0, n0, i))
            if c:
                terms[(n - n0 + i, m + n0 - i)] = c
        return Element(self.field, terms)


@dataclass(frozen=True)
class Weyl(TwistFamily):
    """First Weyl algebra: yx - xy = 1."""

    kind = "weyl"

    def generator(self):
        return Element(self.field, {(1, 1): 1, (0, 0): 1})

    @staticmethod
    def coefficient(m: int, n: int, i: int) -> int:
        # binom(m, i) * d^(m-i) x^n / x^(n-m+i)
        k = m - i
        return comb(m, i) * falling(n, k) if k <= n else 0

    def closed_form(self, m, n, table):
        return Element(self.field, {(n - m + i, i): self.coefficient(m, n, i)
                                    for i in range(m + 1) if m - i <= n})

    def reduced_form(self, period, m, n):
        m0 = m % period
        n0 = n % period
        terms = {}
        for i in range(m0 + 1):
            c = self.field(self.coefficient(m0, n0, i))
            if c:
                terms[(n - m0 + i, m - m0 + i)] = c
        return Element(self.field, terms)


@dataclass(frozen=True)
class Ore(TwistFamily):
    """Ore extension k[x][y; theta, delta] with theta(x) = u x + v.

    ``delta`` is the value delta(x); it extends to a left theta-derivation by
    delta(f g) = theta(f) delta(g) + delta(f) g, matching y f = theta(f) y + delta(f).
    """

    u: object = 1
    v: object = 0
    delta: UniPoly | None = None
    kind = "ore"
    _cache: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "u", self.field(self.u))
        object.__setattr__(self, "v", self.field(self.v))
        if not self.u:
            raise ConfigurationError("theta(x) = u x + v needs u invertible")
        d = self.delta if self.delta is not None else UniPoly(self.field, "x", ())
        if d.field != self.field or d.var != "x":
            raise ConfigurationError("delta(x) must be a polynomial in x over the family's field")
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "_cache", {"theta": [], "delta": []})

    @property
    def theta_x(self) -> UniPoly:
        return UniPoly(self.field, "x", (self.v, self.u))

    def theta_power(self, a: int) -> UniPoly:
        """theta(x^a) = (u x + v)^a."""
        cache = self._cache["theta"]
        while len(cache) <= a:
            cache.append(cache[-1] * self.theta_x if cache else UniPoly(self.field, "x", (1,)))
        return cache[a]

    def delta_power(self, a: int) -> UniPoly:
        """delta(x^a) = theta(x) delta(x^(a-1)) + delta(x) x^(a-1)."""
        cache = self._cache["delta"]
        while len(cache) <= a:
            k = len(cache)
            if k == 0:
                cache.append(UniPoly(self.field, "x", ()))
            else:
                cache.append(self.theta_x * cache[k - 1] + self.delta * UniPoly.monomial(self.field, "x", k - 1))
        return cache[a]

    def theta(self, f: UniPoly) -> UniPoly:
        out = UniPoly(self.field, "x", ())
        for a, c in enumerate(f.coeffs):
            if c:
                out = out + self.theta_power(a) * c
        return out

    def delta_op(self, f: UniPoly) -> UniPoly:
        out = UniPoly(self.field, "x", ())
        for a, c in enumerate(f.coeffs):
            if c:
                out = out + self.delta_power(a) * c
        return out

    def generator(self):
        terms = {(1, 1): self.u}
        if self.v:
            terms[(0, 1)] = self.v
        for a, c in enumerate(self.delta.coeffs):
            if c:
                terms[(a, 0)] = c
        return Element(self.field, terms)

    def closed_form(self, m, n, table):
        # one step: y * (g y^i) = theta(g) y^(i+1) + delta(g) y^i
        prev = table.twist_eval(m - 1, n)
        out: dict = {}
        for (a, i), c in prev.terms.items():
            for k, t in enumerate(self.theta_power(a).coeffs):
                if t:
                    out[(k, i + 1)] = out.get((k, i + 1), 0) + c * t
            for k, t in enumerate(self.delta_power(a).coeffs):
                if t:
                    out[(k, i)] = out.get((k, i), 0) + c * t
        return Element(self.field, out)

    def spec_string(self):
        fmt = self.field.format
        delta = ";".join(fmt(c) for c in self.delta.coeffs) or "0"
        return f"ore:{_field_suffix(self.field)},u={fmt(self.u)},v={fmt(self.v)},delta={delta}"


# ---------------------------------------------------------------------------
# tables and evaluation

class TwistTable:
    """Memoised values tau(y^m (x) x^n) for one family.

    ``overrides`` pre-seeds entries (used to build deliberately broken maps in
    tests).  Memo entries are written once and never replaced, so concurrent
    readers see either a missing entry (and recompute the same value) or the
    final one.
    """

    def __init__(self, family: TwistFamily, overrides: Mapping[tuple[int, int], Element] | None = None,
                 max_depth: int = 2000):
        self.family = family
        self.field = family.field
        self.max_depth = max_depth
        self._memo: dict[tuple[int, int], Element] = dict(overrides or {})
        self._relation_memo: dict[tuple[int, int], Element] = {}
        self._lock = threading.Lock()

    def _store(self, memo: dict, key, value: Element) -> Element:
        with self._lock:
            return memo.setdefault(key, value)

    def twist_eval(self, m: int, n: int) -> Element:
        return twist_eval(self, m, n)

    def __repr__(self):
        return f"TwistTable({self.family.spec_string()})"


def twist_eval(t: TwistTable, m: int, n: int) -> Element:
    """tau(y^m (x) x^n) from the family's closed form (normal by construction)."""
    key = (m, n)
    hit = t._memo.get(key)
    if hit is not None:
        return hit
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    if m == 0 or n == 0:
        value = t.family.mono(n, m)
    else:
        value = t.family.closed_form(m, n, t)
    return t._store(t._memo, key, value)


def twist_eval_relation(t: TwistTable, m: int, n: int) -> Element:
    """tau(y^m (x) x^n) derived only from tau(y (x) x), normality and multiplicativity."""
    return _relation(t, m, n, 0, set())


def _relation(t: TwistTable, m: int, n: int, depth: int, active: set) -> Element:
    f = t.family
    if m == 0 or n == 0:
        return f.mono(n, m)
    key = (m, n)
    hit = t._relation_memo.get(key)
    if hit is not None:
        return hit
    if depth > t.max_depth or key in active:
        raise InconsistentRelationError(f"relation recursion does not terminate at tau(y^{m} (x) x^{n})")
    active.add(key)
    try:
        if m == 1 and n == 1:
            value = f.generator()
        elif m == 1:
            # tau(y (x) x^(n-1) x) = sum_i x^i tau(y^j (x) x) over the terms of tau(y (x) x^(n-1))
            prev = _relation(t, 1, n - 1, depth + 1, active)
            pieces = [(c, _relation(t, j, 1, depth + 1, active).shift(i, 0)) for (i, j), c in prev.terms.items()]
            value = _sum(t.field, pieces)
        else:
            # tau(y y^(m-1) (x) x^n) = sum tau(y (x) x^i) y^j over the terms of tau(y^(m-1) (x) x^n)
            prev = _relation(t, m - 1, n, depth + 1, active)
            pieces = [(c, _relation(t, 1, i, depth + 1, active).shift(0, j)) for (i, j), c in prev.terms.items()]
            value = _sum(t.field, pieces)
    finally:
        active.discard(key)
    return t._store(t._relation_memo, key, value)


def _sum(field: FieldSpec, pieces) -> Element:
    out: dict = {}
    for c, e in pieces:
        for mono, v in e.terms.items():
            s = out.get(mono)
            out[mono] = v * c if s is None else s + v * c
    return Element._raw(field, {k: v for k, v in out.items() if v})


def multiply(t: TwistTable, u: Element, v: Element) -> Element:
    """Twisted product (m_A (x) m_B)(id (x) tau (x) id) extended bilinearly."""
    if u.field != t.field or v.field != t.field:
        raise ConfigurationError(f"field mismatch: table over {t.field}, operands over {u.field} and {v.field}")
    out: dict = {}
    for (a, b), cu in u.terms.items():
        for (c, d), cv in v.terms.items():
            coef = cu * cv
            for (i, j), w in twist_eval(t, b, c).terms.items():
                key = (a + i, j + d)
                s = out.get(key)
                out[key] = coef * w if s is None else s + coef * w
    return Element._raw(t.field, {k: val for k, val in out.items() if val})


def reduced_twist_eval(t: TwistTable, period: int, m: int, n: int) -> Element:
    """tau(y^m (x) x^n) using only the reduced terms for x^period, y^period central.

    Families with an explicit division-algorithm formula use it; otherwise
    tau(y^m (x) x^n) = x^(n1 l) tau(y^m0 (x) x^n0) y^(m1 l).  The caller is
    responsible for the centrality hypothesis.
    """
    if period < 1:
        raise ValueError("period must be positive")
    value = t.family.reduced_form(period, m, n)
    if value is not None:
        return value
    m1, m0 = divmod(m, period)
    n1, n0 = divmod(n, period)
    return twist_eval(t, m0, n0).shift(n1 * period, m1 * period)


def twist_apply(t: TwistTable, g: UniPoly, f: UniPoly) -> Element:
    """tau(g (x) f) for g in k[y], f in k[x], by bilinearity."""
    pieces = [(gj * fi, twist_eval(t, j, i))
              for j, gj in enumerate(g.coeffs) if gj for i, fi in enumerate(f.coeffs) if fi]
    return _sum(t.field, pieces)


def _central_multiply(e: Element, left: UniPoly, right: UniPoly) -> Element:
    out: dict = {}
    for (a, b), c in e.terms.items():
        for i, li in enumerate(left.coeffs):
            if not li:
                continue
            for j, rj in enumerate(right.coeffs):
                if rj:
                    key = (a + i, b + j)
                    s = out.get(key)
                    out[key] = c * li * rj if s is None else s + c * li * rj
    return Element._raw(e.field, {k: v for k, v in out.items() if v})


def reduced_twist_apply(t: TwistTable, ell: int, g: UniPoly, f: UniPoly) -> Element:
    """tau(g (x) f) = sum_{i,j} f_i tau(y^j (x) x^i) g_j over Z/ell-graded pieces (x^ell, y^ell central)."""
    fcs = graded_components(f, ell)
    gcs = graded_components(g, ell)
    out = Element.zero(t.field)
    for fi in fcs:
        if not fi.central:
            continue
        for gj in gcs:
            if gj.central:
                out = out + _central_multiply(twist_eval(t, gj.residue, fi.residue), fi.central, gj.central)
    return out


def quantum_xi(q, ell: int, g: UniPoly, f: UniPoly) -> Element:
    """The q-twist xi_q(g (x) f) = sum_{i,j >= 1} [ij]_q f_i (x) g_j."""
    from .elements import tensor

    out = Element.zero(f.field)
    fcs: list[GradedComponent] = graded_components(f, ell)
    gcs: list[GradedComponent] = graded_components(g, ell)
    for fi in fcs[1:]:
        for gj in gcs[1:]:
            if fi.central and gj.central:
                out = out + tensor(fi.full(), gj.full()).scale(q_number(fi.residue * gj.residue, q))
    return out


# ---------------------------------------------------------------------------
# family spec strings

def _parse_params(body: str) -> dict[str, str]:
    params: dict[str, str] = {}
    if not body:
        return params
    for item in body.split(","):
        item = item.strip()
        if not item:
            continue
        if item == "char0":
            params["char0"] = ""
            continue
        if "=" not in item:
            raise ConfigurationError(f"bad family parameter {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    return params


def parse_family(text: str) -> TwistFamily:
    """Parse strings like 'quantum:p=7,ell=3', 'jordan:char0', 'ore:u=2,v=0,delta=1'."""
    from .parsing import parse_poly, parse_scalar

    name, _, body = text.strip().partition(":")
    params = _parse_params(body)
    known = {"p", "ell", "q", "char0", "u", "v", "delta"}
    unknown = set(params) - known
    if unknown:
        raise ConfigurationError(f"unknown family parameter {sorted(unknown)[0]!r} in {text!r}")

    try:
        if "p" in params:
            fld: FieldSpec = PrimeField(int(params["p"]))
        elif "ell" in params:
            ell = int(params["ell"])
            fld = Cyclotomic(ell)
        else:
            fld = Rationals()
    except ValueError as exc:
        raise ConfigurationError(f"bad field parameter in {text!r}: {exc}") from exc

    def root():
        if "q" in params:
            return parse_scalar(params["q"], fld)
        if "ell" in params:
            return primitive_root(fld, int(params["ell"]))
        raise ConfigurationError(f"family {name!r} needs q=... or ell=... in {text!r}")

    if name == "swap":
        return Swap(fld)
    if name == "quantum":
        return Quantum(fld, root())
    if name == "qweyl":
        return QWeyl(fld, root())
    if name == "jordan":
        return Jordan(fld)
    if name == "weyl":
        return Weyl(fld)
    if name == "ore":
        u = parse_scalar(params.get("u", "1"), fld)
        v = parse_scalar(params.get("v", "0"), fld)
        coeffs = [parse_scalar(c, fld) for c in params.get("delta", "0").split(";") if c.strip()]
        return Ore(fld, u, v, UniPoly(fld, "x", tuple(coeffs)))
    raise ConfigurationError(f"unknown twist family {name!r}")


def root_order(family: TwistFamily) -> int | None:
    """Natural centrality order: ord(q) for quantum/qweyl, p for jordan/weyl in char p."""
    if isinstance(family, (Quantum, QWeyl)):
        try:
            return multiplicative_order(family.q)
        except ConfigurationError:
            return None
    if isinstance(family, (Jordan, Weyl)):
        return family.field.characteristic or None
    if isinstance(family, Swap):
        return 1
    return None
