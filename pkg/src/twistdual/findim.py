"""Finite-dimensional quotients k[x] (x)_tau k[y] / (P, Q) and their dual coalgebras."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Any, Sequence

from .axioms import CheckReport, Counterexample, check_ideal_stability
from .elements import Element, LegReducer, UniPoly
from .scalars import ConfigurationError, FieldSpec, PrimeField
from .twists import TwistFamily, TwistTable, multiply


class StabilityError(RuntimeError):
    """The ideal (P) (x) B + A (x) (Q) is not tau-stable, so tau does not descend to the quotient."""

    def __init__(self, report: CheckReport):
        self.report = report
        cx = report.counterexample
        value = cx.inputs.get("value", cx.lhs) if cx else None
        super().__init__(f"twist not continuous at this ideal: {cx.description if cx else ''}; witness {value}")


@dataclass(frozen=True, eq=False)
class QuotientSpec:
    """A centrally generated finite stage: family, P in k[x], Q in k[y].

    When ``ell`` is given, P must lie in k[x^ell] and Q in k[y^ell].
    """

    family: TwistFamily
    P: UniPoly
    Q: UniPoly
    ell: int | None = None
    table: TwistTable | None = None
    _stability: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        fld = self.family.field
        if self.P.field != fld or self.Q.field != fld:
            raise ConfigurationError(f"P and Q must be over {fld}")
        if self.P.var != "x" or self.Q.var != "y":
            raise ConfigurationError("P must be a polynomial in x and Q a polynomial in y")
        for name, poly in (("P", self.P), ("Q", self.Q)):
            if poly.degree < 1 or not poly.is_monic:
                raise ConfigurationError(f"{name} = {poly} must be monic and nonconstant")
        if self.ell is not None:
            if self.ell < 1:
                raise ConfigurationError("ell must be positive")
            if not self.P.in_power_subring(self.ell) or not self.Q.in_power_subring(self.ell):
                raise ConfigurationError(f"P and Q must lie in k[x^{self.ell}] and k[y^{self.ell}]")
        if self.table is None:
            object.__setattr__(self, "table", TwistTable(self.family))
        elif self.table.family != self.family:
            raise ConfigurationError("table does not belong to this family")

    @property
    def field(self) -> FieldSpec:
        return self.family.field

    @property
    def stability_depth(self) -> int:
        return 2 * (self.P.degree + self.Q.degree)

    def stability(self, N: int | None = None) -> CheckReport:
        N = self.stability_depth if N is None else N
        if N not in self._stability:
            self._stability[N] = check_ideal_stability(self.table, self.P, self.Q, N)
        return self._stability[N]

    def require_stable(self) -> None:
        report = self.stability()
        if not report.passed:
            raise StabilityError(report)


@dataclass
class QuotientAlgebra:
    """Structure constants on the basis ``labels``: ``mul[r][s]`` is the sparse vector of e_r e_s."""

    field: FieldSpec
    labels: list[tuple[int, int]]
    mul: list[list[dict[int, Any]]]
    unit: list

    @property
    def dim(self) -> int:
        return len(self.labels)

    def product(self, u: Sequence, v: Sequence) -> list:
        out = [self.field.zero] * self.dim
        for r, a in enumerate(u):
            if not a:
                continue
            for s, b in enumerate(v):
                if b:
                    ab = a * b
                    for k, c in self.mul[r][s].items():
                        out[k] = out[k] + ab * c
        return out

    def basis_vector(self, k: int) -> list:
        return [self.field.one if i == k else self.field.zero for i in range(self.dim)]

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "dim": self.dim,
            "field": self.field.to_json(),
            "basis": [{"x": i, "y": j} for i, j in self.labels],
            "mul": [[[[k, fmt(c)] for k, c in sorted(cell.items())] for cell in row] for row in self.mul],
            "unit": [fmt(c) for c in self.unit],
        }


def build_quotient(spec: QuotientSpec) -> QuotientAlgebra:
    """Structure constants of A (x)_tau B / (P, Q) on the monomial basis x^i y^j."""
    spec.require_stable()
    fld = spec.field
    dp, dq = spec.P.degree, spec.Q.degree
    labels = [(i, j) for i in range(dp) for j in range(dq)]
    index = {lab: k for k, lab in enumerate(labels)}
    reducer = LegReducer(spec.P, spec.Q)
    monos = [Element.monomial(fld, i, j) for i, j in labels]
    mul = []
    for u in monos:
        row = []
        for v in monos:
            red = reducer.reduce(multiply(spec.table, u, v))
            row.append({index[mono]: c for mono, c in red.terms.items()})
        mul.append(row)
    unit = [fld.one if lab == (0, 0) else fld.zero for lab in labels]
    return QuotientAlgebra(fld, labels, mul, unit)


def polynomial_quotient(P: UniPoly) -> QuotientAlgebra:
    """k[t]/(P) on the basis 1, t, ..., t^(d-1); labels are (i, 0) for x and (0, j) for y."""
    if P.degree < 1 or not P.is_monic:
        raise ConfigurationError(f"{P} must be monic and nonconstant")
    fld = P.field
    d = P.degree
    labels = [(i, 0) if P.var == "x" else (0, i) for i in range(d)]
    mul = []
    for r in range(d):
        row = []
        for s in range(d):
            rem = UniPoly.monomial(fld, P.var, r + s) % P
            row.append({k: c for k, c in enumerate(rem.coeffs) if c})
        mul.append(row)
    unit = [fld.one] + [fld.zero] * (d - 1)
    return QuotientAlgebra(fld, labels, mul, unit)


def check_algebra(F: QuotientAlgebra) -> CheckReport:
    """Exhaustive associativity and unit laws on basis triples."""
    vec = [F.basis_vector(k) for k in range(F.dim)]
    for r in range(F.dim):
        for lhs, rhs in ((F.product(F.unit, vec[r]), vec[r]), (F.product(vec[r], F.unit), vec[r])):
            if lhs != rhs:
                return CheckReport(False, F.dim, Counterexample("unit law", {"basis": F.labels[r]},
                                                                _vector(lhs), _vector(rhs)))
    for r, s, u in product(range(F.dim), repeat=3):
        lhs = F.product(F.product(vec[r], vec[s]), vec[u])
        rhs = F.product(vec[r], F.product(vec[s], vec[u]))
        if lhs != rhs:
            return CheckReport(False, F.dim, Counterexample(
                "(e_r e_s) e_u != e_r (e_s e_u)", {"r": F.labels[r], "s": F.labels[s], "u": F.labels[u]},
                _vector(lhs), _vector(rhs)))
    return CheckReport(True, F.dim)


class TensorVector(dict):
    """Sparse vector in a tensor power of a coalgebra: {index tuple: scalar}."""

    def __str__(self):
        if not self:
            return "0"
        return " + ".join(f"{c}*e{list(k)}" for k, c in sorted(self.items()))


def _vector(v: Sequence) -> TensorVector:
    return TensorVector({(k,): c for k, c in enumerate(v) if c})


@dataclass
class FiniteCoalgebra:
    """Delta(e_k) = sum c * e_l (x) e_r stored as ``delta[k] = {(l, r): c}``; counit as a vector."""

    field: FieldSpec
    labels: list
    delta: list[dict[tuple[int, int], Any]]
    counit: list

    @property
    def dim(self) -> int:
        return len(self.labels)

    def coproduct(self, c: Sequence) -> dict[tuple[int, int], Any]:
        out: dict = {}
        for k, a in enumerate(c):
            if a:
                for key, v in self.delta[k].items():
                    out[key] = out.get(key, self.field.zero) + a * v
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "dim": self.dim,
            "field": self.field.to_json(),
            "basis": [_label_json(lab) for lab in self.labels],
            "delta": [[[l, r, fmt(c)] for (l, r), c in sorted(d.items())] for d in self.delta],
            "counit": [fmt(c) for c in self.counit],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["target", "left", "right", "coeff"])
        for k, d in enumerate(self.delta):
            for (l, r), c in sorted(d.items()):
                w.writerow([k, l, r, self.field.format(c)])
        return buf.getvalue()


def _label_json(lab):
    if isinstance(lab, tuple) and len(lab) == 2 and all(isinstance(v, int) for v in lab):
        return {"x": lab[0], "y": lab[1]}
    return str(lab)


def dual_coalgebra(F: QuotientAlgebra) -> FiniteCoalgebra:
    """Delta(e_k^*) = sum_{i,j} c_{ij}^k e_i^* (x) e_j^*,  eps(e_k^*) = e_k^*(1)."""
    delta: list[dict] = [{} for _ in range(F.dim)]
    for i in range(F.dim):
        for j in range(F.dim):
            for k, c in F.mul[i][j].items():
                delta[k][(i, j)] = c
    return FiniteCoalgebra(F.field, list(F.labels), delta, list(F.unit))


def check_coalgebra(C: FiniteCoalgebra) -> CheckReport:
    """Exhaustive coassociativity and counit identities."""
    zero = C.field.zero
    for k in range(C.dim):
        left: dict = {}
        right: dict = {}
        for (i, j), c in C.delta[k].items():
            for (a, b), v in C.delta[i].items():
                left[(a, b, j)] = left.get((a, b, j), zero) + c * v
            for (a, b), v in C.delta[j].items():
                right[(i, a, b)] = right.get((i, a, b), zero) + c * v
        left = TensorVector({key: v for key, v in left.items() if v})
        right = TensorVector({key: v for key, v in right.items() if v})
        if left != right:
            return CheckReport(False, C.dim, Counterexample("(Delta (x) id) Delta != (id (x) Delta) Delta",
                                                            {"k": k}, left, right))
        target = TensorVector({(k,): C.field.one})
        for side in ("left", "right"):
            out: dict = {}
            for (i, j), c in C.delta[k].items():
                eps, keep = (C.counit[i], j) if side == "left" else (C.counit[j], i)
                if eps:
                    out[(keep,)] = out.get((keep,), zero) + c * eps
            got = TensorVector({key: v for key, v in out.items() if v})
            if got != target:
                return CheckReport(False, C.dim, Counterexample(f"{side} counit law fails", {"k": k}, got, target))
    return CheckReport(True, C.dim)


def is_grouplike(C: FiniteCoalgebra, c: Sequence) -> bool:
    """Delta(c) = c (x) c and eps(c) = 1."""
    c = [C.field(v) for v in c]
    if len(c) != C.dim:
        raise ValueError(f"vector has length {len(c)}, coalgebra has dimension {C.dim}")
    eps = C.field.zero
    for k, v in enumerate(c):
        eps = eps + v * C.counit[k]
    if eps != 1:
        return False
    square = {(i, j): a * b for i, a in enumerate(c) if a for j, b in enumerate(c) if b}
    return C.coproduct(c) == square


def character_vector(spec: QuotientSpec, alpha, beta) -> list:
    """Coordinates of the character x^i y^j -> alpha^i beta^j in the dual basis."""
    fld = spec.field
    a, b = fld(alpha), fld(beta)
    return [a ** i * b ** j for i in range(spec.P.degree) for j in range(spec.Q.degree)]


def verify_character(spec: QuotientSpec, alpha, beta) -> bool:
    """True when (alpha, beta) kills P, Q and satisfies the generator relation yx = tau(y (x) x)."""
    fld = spec.field
    a, b = fld(alpha), fld(beta)
    if spec.P(a) or spec.Q(b):
        return False
    return spec.table.twist_eval(1, 1).evaluate(a, b) == b * a


def enumerate_characters(spec: QuotientSpec) -> list[tuple[int, int]]:
    """All F_p-rational characters (alpha, beta), by exhaustive search over F_p^2."""
    fld = spec.field
    if not isinstance(fld, PrimeField):
        raise ConfigurationError("character enumeration needs a prime field; use verify_character instead")
    return [(a.v, b.v) for a in fld.elements() for b in fld.elements() if verify_character(spec, a, b)]
