"""Cotwisting maps as duals of induced twists, cotwisted coalgebras, and the finite-level duality check."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .axioms import CheckReport, Counterexample
from .elements import LegReducer
from .findim import (
    FiniteCoalgebra,
    QuotientSpec,
    TensorVector,
    build_quotient,
    check_coalgebra,
    dual_coalgebra,
    polynomial_quotient,
)
from .scalars import ConfigurationError, FieldSpec
from .twists import twist_eval


def _dual_label(leg: str) -> str:
    return leg[:-1] if leg.endswith("*") else leg + "*"


@dataclass
class LinearMap:
    """Exact matrix between labelled bases; ``matrix[row][col]`` with rows indexing the codomain."""

    field: FieldSpec
    domain: list[tuple[str, ...]]
    codomain: list[tuple[str, ...]]
    matrix: list[list[Any]]

    def __post_init__(self):
        if len(self.matrix) != len(self.codomain) or any(len(r) != len(self.domain) for r in self.matrix):
            raise ConfigurationError("matrix shape does not match the declared bases")

    def column(self, j: int) -> list[tuple[int, Any]]:
        return [(i, row[j]) for i, row in enumerate(self.matrix) if row[j]]

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "domain": ["(x)".join(lab) for lab in self.domain],
            "codomain": ["(x)".join(lab) for lab in self.codomain],
            "entries": [[i, j, fmt(c)] for i, row in enumerate(self.matrix) for j, c in enumerate(row) if c],
        }


def induced_twist_matrix(spec: QuotientSpec) -> LinearMap:
    """Matrix of tau-bar: B/(Q) (x) A/(P) -> A/(P) (x) B/(Q) on monomial bases (B index major)."""
    spec.require_stable()
    fld = spec.field
    dp, dq = spec.P.degree, spec.Q.degree
    reducer = LegReducer(spec.P, spec.Q)
    domain = [(f"y^{j}", f"x^{i}") for j in range(dq) for i in range(dp)]
    codomain = [(f"x^{i}", f"y^{j}") for i in range(dp) for j in range(dq)]
    matrix = [[fld.zero] * len(domain) for _ in codomain]
    for col, (j, i) in enumerate((j, i) for j in range(dq) for i in range(dp)):
        for (a, b), c in reducer.reduce(twist_eval(spec.table, j, i)).terms.items():
            matrix[a * dq + b][col] = c
    return LinearMap(fld, domain, codomain, matrix)


def dual_cotwist(tbar: LinearMap) -> LinearMap:
    """<phi(c (x) d), b (x) a> = <c (x) d, tau-bar(b (x) a)>: the transpose on dual bases."""
    domain = [tuple(_dual_label(leg) for leg in lab) for lab in tbar.codomain]
    codomain = [tuple(_dual_label(leg) for leg in lab) for lab in tbar.domain]
    matrix = [[tbar.matrix[r][c] for r in range(len(tbar.codomain))] for c in range(len(tbar.domain))]
    return LinearMap(tbar.field, domain, codomain, matrix)


@dataclass
class CotwistData:
    """phi: C (x) D -> D (x) C, with C (x) D indexed c * dim D + d and D (x) C indexed d * dim C + c."""

    C: FiniteCoalgebra
    D: FiniteCoalgebra
    phi: LinearMap
    _cols: list = dc_field(default_factory=list, repr=False)

    def __post_init__(self):
        n = self.C.dim * self.D.dim
        if len(self.phi.domain) != n or len(self.phi.codomain) != n:
            raise ConfigurationError(f"phi must be a {n} x {n} matrix")
        # sparse columns, split into (d', c') row coordinates
        dc = self.C.dim
        self._cols = [[(divmod(r, dc), v) for r, v in self.phi.column(j)] for j in range(n)]

    def apply(self, c: int, d: int) -> list[tuple[tuple[int, int], Any]]:
        """phi(e_c (x) e_d) as [((d', c'), coeff)]."""
        return self._cols[c * self.D.dim + d]


def cotwisted_coalgebra(data: CotwistData) -> FiniteCoalgebra:
    """Delta_phi = (id_C (x) phi (x) id_D)(Delta_C (x) Delta_D), eps = eps_C (x) eps_D."""
    C, D = data.C, data.D
    fld = C.field
    nd = D.dim
    labels = [(lc, ld) for lc in C.labels for ld in D.labels]
    delta = []
    for c in range(C.dim):
        for d in range(nd):
            out: dict = {}
            for (c1, c2), alpha in C.delta[c].items():
                for (d1, d2), beta in D.delta[d].items():
                    ab = alpha * beta
                    for (dp, cp), gamma in data.apply(c2, d1):
                        key = (c1 * nd + dp, cp * nd + d2)
                        out[key] = out.get(key, fld.zero) + ab * gamma
            delta.append({k: v for k, v in out.items() if v})
    counit = [C.counit[c] * D.counit[d] for c in range(C.dim) for d in range(nd)]
    return FiniteCoalgebra(fld, labels, delta, counit)


def _accumulate(out: dict, key, value, zero):
    out[key] = out.get(key, zero) + value


def _clean(d: dict) -> TensorVector:
    return TensorVector({k: v for k, v in d.items() if v})


def check_conormal(data: CotwistData) -> CheckReport:
    """(eps_D (x) id) phi = id (x) eps_D and (id (x) eps_C) phi = eps_C (x) id."""
    C, D = data.C, data.D
    zero = C.field.zero
    n = C.dim * D.dim
    for c in range(C.dim):
        for d in range(D.dim):
            img = data.apply(c, d)
            first: dict = {}
            second: dict = {}
            for (dp, cp), v in img:
                if D.counit[dp]:
                    _accumulate(first, (cp,), v * D.counit[dp], zero)
                if C.counit[cp]:
                    _accumulate(second, (dp,), v * C.counit[cp], zero)
            checks = (
                ("(eps_D (x) id_C) phi != id_C (x) eps_D", _clean(first), _clean({(c,): D.counit[d]})),
                ("(id_D (x) eps_C) phi != eps_C (x) id_D", _clean(second), _clean({(d,): C.counit[c]})),
            )
            for desc, lhs, rhs in checks:
                if lhs != rhs:
                    return CheckReport(False, n, Counterexample(desc, {"c": c, "d": d}, lhs, rhs))
    return CheckReport(True, n)


def check_comultiplicative(data: CotwistData) -> CheckReport:
    """The two comultiplicativity identities, exactly, on every basis tensor c (x) d."""
    C, D = data.C, data.D
    zero = C.field.zero
    n = C.dim * D.dim
    for c in range(C.dim):
        for d in range(D.dim):
            img = data.apply(c, d)
            # (id_D (x) Delta_C) phi  vs  (phi (x) id_C)(id_C (x) phi)(Delta_C (x) id_D)
            lhs: dict = {}
            for (dp, cp), v in img:
                for (c1, c2), w in C.delta[cp].items():
                    _accumulate(lhs, (dp, c1, c2), v * w, zero)
            rhs: dict = {}
            for (c1, c2), w in C.delta[c].items():
                for (d2, c3), v in data.apply(c2, d):
                    for (d3, c4), u in data.apply(c1, d2):
                        _accumulate(rhs, (d3, c4, c3), w * v * u, zero)
            lhs, rhs = _clean(lhs), _clean(rhs)
            if lhs != rhs:
                return CheckReport(False, n, Counterexample(
                    "(id_D (x) Delta_C) phi != (phi (x) id_C)(id_C (x) phi)(Delta_C (x) id_D)",
                    {"c": c, "d": d}, lhs, rhs))
            # (Delta_D (x) id_C) phi  vs  (id_D (x) phi)(phi (x) id_D)(id_C (x) Delta_D)
            lhs = {}
            for (dp, cp), v in img:
                for (d1, d2), w in D.delta[dp].items():
                    _accumulate(lhs, (d1, d2, cp), v * w, zero)
            rhs = {}
            for (d1, d2), w in D.delta[d].items():
                for (d3, c3), v in data.apply(c, d1):
                    for (d4, c4), u in data.apply(c3, d2):
                        _accumulate(rhs, (d3, d4, c4), w * v * u, zero)
            lhs, rhs = _clean(lhs), _clean(rhs)
            if lhs != rhs:
                return CheckReport(False, n, Counterexample(
                    "(Delta_D (x) id_C) phi != (id_D (x) phi)(phi (x) id_D)(id_C (x) Delta_D)",
                    {"c": c, "d": d}, lhs, rhs))
    return CheckReport(True, n)


@dataclass
class DualityReport:
    passed: bool
    dim: int
    mismatches: list[dict]
    checks: dict[str, bool]

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"passed": self.passed, "dim": self.dim, "mismatches": self.mismatches, "checks": self.checks}


def verify_dual_factorization(spec: QuotientSpec) -> DualityReport:
    """Compare (A (x)_tau B / (P, Q))^* with (A/P)^* (x)^phi (B/Q)^*, phi the dual of tau-bar.

    The identification is x^i y^j <-> (x^i)^* (x) (y^j)^*, i.e. the identity on
    index i * deg Q + j.  Raises :class:`StabilityError` when the ideal is not
    tau-stable.
    """
    S = build_quotient(spec)
    dual_S = dual_coalgebra(S)
    C = dual_coalgebra(polynomial_quotient(spec.P))
    D = dual_coalgebra(polynomial_quotient(spec.Q))
    phi = dual_cotwist(induced_twist_matrix(spec))
    data = CotwistData(C, D, phi)
    cot = cotwisted_coalgebra(data)

    fmt = spec.field.format
    mismatches: list[dict] = []
    for k in range(S.dim):
        a, b = dual_S.delta[k], cot.delta[k]
        for key in sorted(set(a) | set(b)):
            va, vb = a.get(key, spec.field.zero), b.get(key, spec.field.zero)
            if va != vb:
                mismatches.append({"target": k, "left": key[0], "right": key[1],
                                   "dual": fmt(va), "cotwisted": fmt(vb)})
    for k in range(S.dim):
        if dual_S.counit[k] != cot.counit[k]:
            mismatches.append({"counit": k, "dual": fmt(dual_S.counit[k]), "cotwisted": fmt(cot.counit[k])})
    for k, (lab, (lc, ld)) in enumerate(zip(S.labels, cot.labels)):
        if lab != (lc[0], ld[1]):
            mismatches.append({"label": k, "dual": list(lab), "cotwisted": [lc[0], ld[1]]})

    checks = {
        "dual_coalgebra": check_coalgebra(dual_S).passed,
        "cotwisted_coalgebra": check_coalgebra(cot).passed,
        "conormal": check_conormal(data).passed,
        "comultiplicative": check_comultiplicative(data).passed,
    }
    return DualityReport(not mismatches and all(checks.values()), S.dim, mismatches, checks)
