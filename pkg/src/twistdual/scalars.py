"""Exact scalar fields: Q, cyclotomic fields Q(zeta_l), and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values.  Cyclotomic
and prime-field scalars are small immutable classes that support the usual
arithmetic operators and mix freely with Python ints and Fractions.

The module also hosts the q-combinatorics.  Gaussian binomials are always
reduced to integer polynomials in ``t`` before they are evaluated, since a
root of unity may be a root of the factorial denominators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence, Union


class ConfigurationError(ValueError):
    """Invalid field / family configuration (bad modulus, missing root, field mismatch)."""


# ---------------------------------------------------------------------------
# integer polynomials (ascending coefficient tuples, no trailing zeros)

IntPoly = tuple


def ipoly_trim(coeffs: Sequence[int]) -> IntPoly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def ipoly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    n = max(len(a), len(b))
    return ipoly_trim([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])


def ipoly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return ipoly_trim(out)


def ipoly_shift(a: IntPoly, k: int) -> IntPoly:
    return (0,) * k + a if a else ()


def ipoly_divmod(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Division of integer polynomials by a monic (or +-1 leading) divisor."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = b[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * lead
        if c:
            quot[k] = c
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    return ipoly_trim(quot), ipoly_trim(rem)


def ipoly_eval(poly: IntPoly, q):
    """Evaluate an integer polynomial at a scalar by Horner's rule."""
    acc = field_of(q).zero
    for c in reversed(poly):
        acc = acc * q + c
    return acc


@lru_cache(maxsize=None)
def cyclotomic_polynomial(ell: int) -> IntPoly:
    """Phi_ell, by dividing t^ell - 1 by Phi_d for every proper divisor d."""
    if ell < 1:
        raise ConfigurationError(f"cyclotomic order must be positive, got {ell}")
    poly = ipoly_trim([-1] + [0] * (ell - 1) + [1])
    for d in range(1, ell):
        if ell % d == 0:
            poly, rem = ipoly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
    return poly


# ---------------------------------------------------------------------------
# field specs

class FieldSpec:
    """Base for the three supported exact fields."""

    characteristic: int = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def scalar_to_json(self, x) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(FieldSpec):
    def __call__(self, value) -> Fraction:
        if isinstance(value, (Cyc, GF)):
            raise ConfigurationError(f"cannot coerce {value!r} into Q")
        return Fraction(value)

    def format(self, x) -> str:
        return str(Fraction(x))

    def to_json(self) -> dict:
        return {"kind": "rationals"}

    def scalar_to_json(self, x) -> dict:
        x = Fraction(x)
        return {"rat": f"{x.numerator}/{x.denominator}"}

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class Cyclotomic(FieldSpec):
    ell: int

    def __post_init__(self):
        if self.ell < 2:
            raise ConfigurationError(f"cyclotomic field needs ell >= 2, got {self.ell}")

    @property
    def modulus(self) -> IntPoly:
        return cyclotomic_polynomial(self.ell)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def gen(self) -> "Cyc":
        """The residue class of t, a primitive ell-th root of unity."""
        return Cyc._reduce(self.ell, [Fraction(0), Fraction(1)])

    def __call__(self, value) -> "Cyc":
        if isinstance(value, Cyc):
            if value.ell != self.ell:
                raise ConfigurationError(f"scalar from Q(zeta_{value.ell}) used in Q(zeta_{self.ell})")
            return value
        if isinstance(value, GF):
            raise ConfigurationError(f"cannot coerce {value!r} into Q(zeta_{self.ell})")
        return Cyc._reduce(self.ell, [Fraction(value)])

    def format(self, x) -> str:
        x = self(x)
        parts = []
        for k, c in enumerate(x.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self) -> dict:
        return {"kind": "cyclotomic", "ell": self.ell}

    def scalar_to_json(self, x) -> dict:
        x = self(x)
        return {"cyc": {"ell": self.ell, "coeffs": [str(c) for c in x.coeffs]}}

    def __str__(self) -> str:
        return f"Q(zeta_{self.ell})"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConfigurationError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def __call__(self, value) -> "GF":
        if isinstance(value, GF):
            if value.p != self.p:
                raise ConfigurationError(f"scalar from F_{value.p} used in F_{self.p}")
            return value
        if isinstance(value, Cyc):
            raise ConfigurationError(f"cannot coerce {value!r} into F_{self.p}")
        if isinstance(value, Fraction):
            return GF(self.p, value.numerator) / GF(self.p, value.denominator)
        return GF(self.p, int(value))

    def elements(self) -> Iterator["GF"]:
        for v in range(self.p):
            yield GF(self.p, v)

    def format(self, x) -> str:
        return str(self(x).v)

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def scalar_to_json(self, x) -> dict:
        return {"gfp": {"p": self.p, "val": self(x).v}}

    def __str__(self) -> str:
        return f"F_{self.p}"


def field_from_json(obj: dict) -> FieldSpec:
    kind = obj.get("kind")
    if kind == "rationals":
        return Rationals()
    if kind == "cyclotomic":
        return Cyclotomic(int(obj["ell"]))
    if kind == "prime":
        return PrimeField(int(obj["p"]))
    raise ConfigurationError(f"unknown field kind {kind!r}")


def scalar_from_json(obj: dict):
    if "rat" in obj:
        return Fraction(obj["rat"])
    if "cyc" in obj:
        body = obj["cyc"]
        field = Cyclotomic(int(body["ell"]))
        coeffs = [Fraction(c) for c in body["coeffs"]]
        if len(coeffs) != field.degree:
            raise ConfigurationError("cyclotomic coefficient list has the wrong length")
        return Cyc._reduce(field.ell, coeffs)
    if "gfp" in obj:
        body = obj["gfp"]
        return PrimeField(int(body["p"]))(int(body["val"]))
    raise ConfigurationError(f"unrecognised scalar JSON {obj!r}")


# ---------------------------------------------------------------------------
# scalar classes

class Cyc:
    """Residue of a rational polynomial modulo Phi_ell."""

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell: int, coeffs: tuple):
        # trusted constructor: coeffs already reduced, length deg Phi_ell
        self.ell = ell
        self.coeffs = coeffs

    @classmethod
    def _reduce(cls, ell: int, coeffs) -> "Cyc":
        mod = cyclotomic_polynomial(ell)
        deg = len(mod) - 1
        work = [Fraction(c) for c in coeffs]
        for k in range(len(work) - 1, deg - 1, -1):
            c = work[k]
            if c:
                base = k - deg
                for j in range(deg + 1):
                    if mod[j]:
                        work[base + j] -= c * mod[j]
        work = work[:deg] + [Fraction(0)] * (deg - len(work))
        return cls(ell, tuple(work))

    @property
    def field(self) -> Cyclotomic:
        return Cyclotomic(self.ell)

    def _coerce(self, other) -> "Cyc | None":
        if isinstance(other, Cyc):
            if other.ell != self.ell:
                raise ConfigurationError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc(self.ell, (Fraction(other),) + (Fraction(0),) * (len(self.coeffs) - 1))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.ell, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.ell, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.ell, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.ell, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not any(b[1:]):
            c = b[0]
            return Cyc(self.ell, tuple(x * c for x in a)) if c else Cyc(self.ell, b)
        if not any(a[1:]):
            c = a[0]
            return Cyc(self.ell, tuple(c * x for x in b)) if c else Cyc(self.ell, a)
        # integer kernel over a common denominator: one Fraction per output coefficient
        na, da = _clear_denominators(a)
        nb, db = _clear_denominators(b)
        prod = [0] * (2 * len(a) - 1)
        for i, ai in enumerate(na):
            if ai:
                for j, bj in enumerate(nb):
                    if bj:
                        prod[i + j] += ai * bj
        mod = cyclotomic_polynomial(self.ell)
        deg = len(mod) - 1
        for k in range(len(prod) - 1, deg - 1, -1):
            c = prod[k]
            if c:
                base = k - deg
                for j in range(deg + 1):
                    if mod[j]:
                        prod[base + j] -= c * mod[j]
        den = da * db
        return Cyc(self.ell, tuple(Fraction(c, den) for c in prod[:deg]))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[t]: s*self + t*Phi = 1
        r0 = _fpoly_trim(list(Fraction(c) for c in cyclotomic_polynomial(self.ell)))
        r1 = _fpoly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
        # r0 is a nonzero constant because Phi_ell is irreducible
        inv_c = 1 / r0[0]
        return Cyc._reduce(self.ell, [c * inv_c for c in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyc._reduce(self.ell, [Fraction(1)])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ConfigurationError:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.ell, self.coeffs))

    def __repr__(self):
        return f"Cyc({self.ell}, {Cyclotomic(self.ell).format(self)!r})"


def _clear_denominators(coeffs: tuple) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = den * c.denominator // gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _fpoly_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _fpoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _fpoly_trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def _fpoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _fpoly_trim(out)


def _fpoly_divmod(a: list, b: list) -> tuple[list, list]:
    rem = list(a)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv_lead
        if c:
            quot[k] = c
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    return _fpoly_trim(quot), _fpoly_trim(rem[: max(len(b) - 1, 0)])


class GF:
    """Element of the prime field F_p."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def _val(self, other) -> int | None:
        if isinstance(other, GF):
            if other.p != self.p:
                raise ConfigurationError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else GF(self.p, self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else GF(self.p, self.v - o)

    def __rsub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else GF(self.p, o - self.v)

    def __neg__(self):
        return GF(self.p, -self.v)

    def __mul__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else GF(self.p, self.v * o)

    __rmul__ = __mul__

    def inverse(self) -> "GF":
        if not self.v:
            raise ZeroDivisionError("inverse of zero in F_p")
        return GF(self.p, pow(self.v, -1, self.p))

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return self * GF(self.p, o).inverse()

    def __rtruediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return GF(self.p, o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GF(self.p, pow(self.v, n, self.p))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        try:
            o = self._val(other)
        except ConfigurationError:
            return False
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"GF({self.p}, {self.v})"


Scalar = Union[Fraction, Cyc, GF]


def field_of(x) -> FieldSpec:
    if isinstance(x, GF):
        return PrimeField(x.p)
    if isinstance(x, Cyc):
        return Cyclotomic(x.ell)
    if isinstance(x, (int, Fraction)):
        return Rationals()
    raise TypeError(f"not a scalar: {x!r}")


# ---------------------------------------------------------------------------
# q-combinatorics

def q_number(m: int, q) -> Scalar:
    """[m]_q = 1 + q + ... + q^(m-1); zero for m = 0."""
    total = field_of(q).zero
    power = field_of(q).one
    for _ in range(m):
        total = total + power
        power = power * q
    return total


def q_factorial(m: int, q) -> Scalar:
    result = field_of(q).one
    for j in range(m, 0, -1):
        result = result * q_number(j, q)
    return result


@lru_cache(maxsize=None)
def q_number_poly(m: int) -> IntPoly:
    return (1,) * m


@lru_cache(maxsize=None)
def gaussian_binomial_poly(m: int, i: int) -> IntPoly:
    """The Gaussian binomial [m choose i]_t in Z[t], via the q-Pascal recurrence.

    Uses C(m, i) = C(m-1, i-1) + t^i C(m-1, i); out-of-range i gives 0.
    """
    if i < 0 or i > m:
        return ()
    if i == 0 or i == m:
        return (1,)
    return ipoly_add(gaussian_binomial_poly(m - 1, i - 1), ipoly_shift(gaussian_binomial_poly(m - 1, i), i))


def q_binomial(m: int, i: int, q) -> Scalar:
    """Gaussian binomial reduced in Z[t] first, then evaluated at t = q."""
    return ipoly_eval(gaussian_binomial_poly(m, i), q)


def multiplicative_order(x) -> int:
    """Order of x in the unit group; raises if x is zero or not a root of unity."""
    if not x:
        raise ZeroDivisionError("zero has no multiplicative order")
    fld = field_of(x)
    if isinstance(fld, PrimeField):
        bound = fld.p - 1
    elif isinstance(fld, Cyclotomic):
        bound = 2 * fld.ell  # roots of unity in Q(zeta_l) have order dividing lcm(2, l)
    else:
        bound = 2
    power = x
    for d in range(1, bound + 1):
        if power == 1:
            return d
        power = power * x
    raise ConfigurationError(f"{x!r} is not a root of unity")


def primitive_root(field: FieldSpec, ell: int) -> Scalar:
    """A primitive ell-th root of unity in ``field`` (deterministic choice).

    Cyclotomic fields return the appropriate power of the generator z; prime
    fields return the smallest element of multiplicative order ell.
    """
    if ell < 1:
        raise ConfigurationError(f"root-of-unity order must be positive, got {ell}")
    if isinstance(field, Cyclotomic):
        if field.ell % ell:
            raise ConfigurationError(f"Q(zeta_{field.ell}) has no primitive {ell}-th root of unity")
        return field.gen ** (field.ell // ell)
    if isinstance(field, PrimeField):
        if (field.p - 1) % ell:
            raise ConfigurationError(f"{ell} does not divide p-1 = {field.p - 1}; no primitive root in F_{field.p}")
        for a in range(1, field.p):
            x = GF(field.p, a)
            if x ** ell == 1 and all(x ** d != 1 for d in range(1, ell)):
                return x
        raise AssertionError("unreachable: F_p^* is cyclic")
    if isinstance(field, Rationals):
        if ell == 1:
            return Fraction(1)
        if ell == 2:
            return Fraction(-1)
        raise ConfigurationError(f"Q has no primitive {ell}-th root of unity")
    raise ConfigurationError(f"unsupported field {field!r}")
