"""Sparse elements of k[x] (x) k[y] and univariate polynomials over an exact field."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .scalars import ConfigurationError, FieldSpec


def _term_key(mono: tuple[int, int]) -> tuple[int, int]:
    # descending x-degree, then ascending y-degree
    return (-mono[0], mono[1])


def monomial_text(a: int, b: int) -> str:
    return (f"x^{a}" if a else "") + (f"y^{b}" if b else "")


class Element:
    """A finite linear combination of tensor monomials x^a (x) y^b.

    ``terms`` maps ``(a, b)`` to a nonzero scalar.  Instances are treated as
    immutable; every operation returns a fresh element.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: Mapping[tuple[int, int], object] | None = None):
        self.field = field
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = field(c)
                if c:
                    clean[(int(mono[0]), int(mono[1]))] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field: FieldSpec, terms: dict) -> "Element":
        # trusted: terms already canonical
        e = cls.__new__(cls)
        e.field = field
        e.terms = terms
        return e

    @classmethod
    def zero(cls, field: FieldSpec) -> "Element":
        return cls._raw(field, {})

    @classmethod
    def monomial(cls, field: FieldSpec, a: int, b: int, coeff=1) -> "Element":
        return cls(field, {(a, b): coeff})

    def _check(self, other: "Element") -> None:
        if self.field != other.field:
            raise ConfigurationError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Element._raw(self.field, out)

    def __neg__(self) -> "Element":
        return Element._raw(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = self.field(c)
        if not c:
            return Element.zero(self.field)
        return Element._raw(self.field, {m: v * c for m, v in self.terms.items()})

    def shift(self, da: int, db: int) -> "Element":
        """Multiply x-legs by x^da on the left and y-legs by y^db on the right."""
        return Element._raw(self.field, {(a + da, b + db): c for (a, b), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, int], object]]:
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            coeff = self.field.format(c)
            if "+" in coeff or "-" in coeff[1:]:
                coeff = f"({coeff})"
            mono = monomial_text(a, b)
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Element({self.field}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "terms": [{"x": a, "y": b, "c": self.field.scalar_to_json(c)} for (a, b), c in self.sorted_terms()],
        }

    def x_legs(self) -> dict[int, "UniPoly"]:
        """Group by y-degree: {b: polynomial in x} with self = sum_b P_b (x) y^b."""
        groups: dict[int, dict[int, object]] = {}
        for (a, b), c in self.terms.items():
            groups.setdefault(b, {})[a] = c
        return {b: UniPoly.from_dict(self.field, "x", d) for b, d in groups.items()}

    def y_legs(self) -> dict[int, "UniPoly"]:
        """Group by x-degree: {a: polynomial in y} with self = sum_a x^a (x) Q_a."""
        groups: dict[int, dict[int, object]] = {}
        for (a, b), c in self.terms.items():
            groups.setdefault(a, {})[b] = c
        return {a: UniPoly.from_dict(self.field, "y", d) for a, d in groups.items()}

    def evaluate(self, alpha, beta):
        """Scalar value at x = alpha, y = beta."""
        total = self.field.zero
        for (a, b), c in self.terms.items():
            total = total + c * alpha ** a * beta ** b
        return total


def linear_sum(field: FieldSpec, pieces: Iterable[tuple[object, Element]]) -> Element:
    """sum of c * e, accumulated in place."""
    out: dict = {}
    for c, e in pieces:
        if not c:
            continue
        for mono, v in e.terms.items():
            s = out.get(mono)
            out[mono] = v * c if s is None else s + v * c
    return Element._raw(field, {m: v for m, v in out.items() if v})


@dataclass(frozen=True, eq=False)
class UniPoly:
    """Polynomial in a single variable ``var`` ('x' or 'y'), ascending coefficients."""

    field: FieldSpec
    var: str
    coeffs: tuple

    def __post_init__(self):
        if self.var not in ("x", "y"):
            raise ConfigurationError(f"variable must be 'x' or 'y', got {self.var!r}")
        cs = [self.field(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_dict(cls, field: FieldSpec, var: str, d: Mapping[int, object]) -> "UniPoly":
        if not d:
            return cls(field, var, ())
        cs = [field.zero] * (max(d) + 1)
        for k, c in d.items():
            cs[k] = cs[k] + c
        return cls(field, var, tuple(cs))

    @classmethod
    def monomial(cls, field: FieldSpec, var: str, k: int, coeff=1) -> "UniPoly":
        return cls(field, var, (0,) * k + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.var, self.coeffs))

    def _check(self, other: "UniPoly"):
        if self.field != other.field:
            raise ConfigurationError(f"field mismatch: {self.field} vs {other.field}")
        if self.var != other.var:
            raise ConfigurationError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        return UniPoly(self.field, self.var, tuple(
            (self.coeffs[k] if k < len(self.coeffs) else z) + (other.coeffs[k] if k < len(other.coeffs) else z)
            for k in range(n)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = self.field(other)
            return UniPoly(self.field, self.var, tuple(a * c for a in self.coeffs))
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly(self.field, self.var, ())
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, self.var, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly(self.field, self.var, (1,))
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        d = divisor.coeffs
        inv_lead = self.field.one / d[-1]
        rem = list(self.coeffs)
        quot = [self.field.zero] * max(len(rem) - len(d) + 1, 0)
        for k in range(len(rem) - len(d), -1, -1):
            c = rem[k + len(d) - 1] * inv_lead
            if c:
                quot[k] = c
                for j, dj in enumerate(d):
                    rem[k + j] = rem[k + j] - c * dj
        return UniPoly(self.field, self.var, tuple(quot)), UniPoly(self.field, self.var, tuple(rem))

    def __mod__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divmod(divisor)[1]

    def __call__(self, value):
        """Evaluate at a scalar (Horner) or compose with another polynomial."""
        acc = UniPoly(self.field, value.var, ()) if isinstance(value, UniPoly) else self.field.zero
        for c in reversed(self.coeffs):
            if isinstance(value, UniPoly):
                acc = acc * value + UniPoly(self.field, value.var, (c,))
            else:
                acc = acc * value + c
        return acc

    def in_power_subring(self, ell: int) -> bool:
        """True when the polynomial lies in k[t^ell]."""
        return all(not c for k, c in enumerate(self.coeffs) if k % ell)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            coeff = self.field.format(c)
            if "+" in coeff or "-" in coeff[1:]:
                coeff = f"({coeff})"
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            parts.append(coeff if not mono else (mono if coeff == "1" else f"{coeff}*{mono}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.var}: {self})"


class GradedComponent(NamedTuple):
    """Homogeneous piece of degree class ``residue`` mod l: ``central * t^residue``."""

    central: UniPoly
    residue: int

    def full(self) -> UniPoly:
        c = self.central
        return UniPoly(c.field, c.var, (0,) * self.residue + c.coeffs) if c else c


def graded_components(f: UniPoly, ell: int) -> list[GradedComponent]:
    """Split f into its Z/ell-graded pieces f = sum_i f_i t^i with f_i in k[t^ell]."""
    if ell < 1:
        raise ConfigurationError(f"grading modulus must be positive, got {ell}")
    buckets: list[dict[int, object]] = [{} for _ in range(ell)]
    for k, c in enumerate(f.coeffs):
        if c:
            buckets[k % ell][k - k % ell] = c
    return [GradedComponent(UniPoly.from_dict(f.field, f.var, b), i) for i, b in enumerate(buckets)]


def tensor(f: UniPoly, g: UniPoly) -> Element:
    """f (x) g for f in k[x], g in k[y]."""
    if f.field != g.field:
        raise ConfigurationError(f"field mismatch: {f.field} vs {g.field}")
    if f.var != "x" or g.var != "y":
        raise ConfigurationError("tensor expects an x-polynomial and a y-polynomial")
    return Element(f.field, {(i, j): a * b for i, a in enumerate(f.coeffs) if a
                             for j, b in enumerate(g.coeffs) if b})


class LegReducer:
    """Reduces x-legs modulo P and y-legs modulo Q (P, Q monic), with cached power residues."""

    def __init__(self, P: UniPoly, Q: UniPoly):
        if not (P.is_monic and Q.is_monic) or P.degree < 1 or Q.degree < 1:
            raise ConfigurationError("leg reduction needs monic nonconstant P and Q")
        if P.var != "x" or Q.var != "y":
            raise ConfigurationError("P must be a polynomial in x and Q a polynomial in y")
        self.P, self.Q = P, Q
        self.field = P.field
        self._xres: list[tuple] = []
        self._yres: list[tuple] = []

    @staticmethod
    def _power_residues(cache: list, mod: UniPoly, k: int) -> tuple:
        # residues of t^0..t^k modulo the monic polynomial mod, as coefficient tuples
        d = mod.degree
        field = mod.field
        while len(cache) <= k:
            j = len(cache)
            if j < d:
                cache.append(tuple(field.one if i == j else field.zero for i in range(d)))
                continue
            prev = cache[-1]
            top = prev[-1]
            shifted = (field.zero,) + prev[:-1]
            cache.append(tuple(shifted[i] - top * mod.coeffs[i] for i in range(d)))
        return cache[k]

    def x_residue(self, a: int) -> tuple:
        return self._power_residues(self._xres, self.P, a)

    def y_residue(self, b: int) -> tuple:
        return self._power_residues(self._yres, self.Q, b)

    def reduce(self, e: Element) -> Element:
        out: dict = {}
        for (a, b), c in e.terms.items():
            xr = self.x_residue(a)
            yr = self.y_residue(b)
            for i, u in enumerate(xr):
                if not u:
                    continue
                cu = c * u
                for j, v in enumerate(yr):
                    if v:
                        s = out.get((i, j))
                        out[(i, j)] = cu * v if s is None else s + cu * v
        return Element._raw(e.field, {m: v for m, v in out.items() if v})
