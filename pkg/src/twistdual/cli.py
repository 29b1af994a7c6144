"""Command-line front end: ``twistdual <command> --family ... [options]``.

Exit status is 0 when every requested check passes, 1 when a mathematical
counterexample (including a stability witness) is found, and 2 for
configuration or parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .axioms import (
    CheckReport,
    check_axioms,
    check_central_power,
    check_centralize_hypothesis,
    check_ideal_stability,
)
from .cotwist import verify_dual_factorization
from .findim import (
    QuotientSpec,
    StabilityError,
    build_quotient,
    character_vector,
    dual_coalgebra,
    enumerate_characters,
    is_grouplike,
    verify_character,
)
from .parsing import parse_poly, parse_scalar
from .scalars import ConfigurationError, PrimeField
from .twists import TwistFamily, TwistTable, parse_family, root_order, twist_eval

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_CONFIG = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    family: TwistFamily
    max_degree: int
    px: str | None
    qy: str | None
    fmt: str | None
    seed: int

    def quotient_spec(self) -> QuotientSpec:
        if self.px is None or self.qy is None:
            raise ConfigurationError("--px and --qy are required for this command")
        fld = self.family.field
        return QuotientSpec(self.family, parse_poly(self.px, fld, "x"), parse_poly(self.qy, fld, "y"))


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _config(args) -> RunConfig:
    if args.max_degree < 1:
        raise ConfigurationError("--max-degree must be at least 1")
    return RunConfig(parse_family(args.family), args.max_degree, args.px, args.qy, args.format, args.seed)


def cmd_twist_eval(cfg: RunConfig, m: int, n: int, out) -> int:
    if m is None or n is None or m < 0 or n < 0:
        raise ConfigurationError("twist eval needs nonnegative --m and --n")
    value = twist_eval(TwistTable(cfg.family), m, n)
    if cfg.fmt == "json":
        _emit(out, _dump({"m": m, "n": n, "value": value.to_json()}))
    else:
        _emit(out, str(value))
    return EXIT_OK


def _power(cfg: RunConfig, power: int | None) -> int:
    if power is not None:
        if power < 1:
            raise ConfigurationError("--power must be positive")
        return power
    order = root_order(cfg.family)
    if order is None:
        raise ConfigurationError(f"--power is required for family {cfg.family.spec_string()!r}")
    return order


def cmd_check(cfg: RunConfig, which: str, power: int | None, out) -> int:
    table = TwistTable(cfg.family)
    N = cfg.max_degree
    if which == "axioms":
        reports = check_axioms(table, N)
    elif which == "central":
        reports = [check_central_power(table, _power(cfg, power), N)]
    elif which == "centralize":
        reports = [check_centralize_hypothesis(table, _power(cfg, power), N)]
    elif which == "stability":
        spec = cfg.quotient_spec()
        reports = [check_ideal_stability(table, spec.P, spec.Q, N)]
    else:
        raise ConfigurationError(f"unknown check {which!r}")
    failed = next((r for r in reports if not r.passed), None)
    shown: CheckReport = failed or reports[0]
    payload = shown.to_json()
    payload["checks"] = {r.name: r.passed for r in reports}
    _emit(out, _dump(payload))
    return EXIT_OK if failed is None else EXIT_COUNTEREXAMPLE


def cmd_quotient(cfg: RunConfig, out) -> int:
    alg = build_quotient(cfg.quotient_spec())
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["left", "right", "target", "coeff"])
        for r, row in enumerate(alg.mul):
            for s, cell in enumerate(row):
                for k, c in sorted(cell.items()):
                    w.writerow([r, s, k, alg.field.format(c)])
        _emit(out, buf.getvalue())
    else:
        _emit(out, _dump(alg.to_json()))
    return EXIT_OK


def cmd_dual(cfg: RunConfig, out) -> int:
    coalg = dual_coalgebra(build_quotient(cfg.quotient_spec()))
    _emit(out, coalg.to_csv() if cfg.fmt == "csv" else _dump(coalg.to_json()))
    return EXIT_OK


def cmd_verify_duality(cfg: RunConfig, out) -> int:
    report = verify_dual_factorization(cfg.quotient_spec())
    _emit(out, _dump(report.to_json()))
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_grouplikes(cfg: RunConfig, candidates: Sequence[str], out) -> int:
    spec = cfg.quotient_spec()
    fld = spec.field
    if isinstance(fld, PrimeField) and not candidates:
        _emit(out, _dump([[a, b] for a, b in enumerate_characters(spec)]))
        return EXIT_OK
    if not candidates:
        raise ConfigurationError("over a characteristic-0 field pass --candidate ALPHA,BETA (repeatable)")
    coalg = dual_coalgebra(build_quotient(spec))
    rows = []
    for text in candidates:
        parts = text.split(",")
        if len(parts) != 2:
            raise ConfigurationError(f"candidate {text!r} must look like ALPHA,BETA")
        a, b = parse_scalar(parts[0], fld), parse_scalar(parts[1], fld)
        rows.append({
            "alpha": fld.format(a),
            "beta": fld.format(b),
            "character": verify_character(spec, a, b),
            "grouplike": is_grouplike(coalg, character_vector(spec, a, b)),
        })
    _emit(out, _dump(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", required=True, help="family spec, e.g. quantum:ell=2 or jordan:p=3")
    common.add_argument("--px", help="monic polynomial in x, e.g. 'x^2-1'")
    common.add_argument("--qy", help="monic polynomial in y")
    common.add_argument("--max-degree", type=int, default=10, dest="max_degree")
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--seed", type=int, default=0,
                        help="reserved for randomized sweeps; all current sweeps are exhaustive")

    parser = argparse.ArgumentParser(prog="twistdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    twist = sub.add_parser("twist", help="evaluate the twisting map")
    twist_sub = twist.add_subparsers(dest="action", required=True)
    ev = twist_sub.add_parser("eval", parents=[common], help="print tau(y^m (x) x^n)")
    ev.add_argument("--m", type=int, required=True)
    ev.add_argument("--n", type=int, required=True)

    check = sub.add_parser("check", parents=[common], help="bounded-degree checks")
    check.add_argument("which", choices=("axioms", "central", "stability", "centralize"))
    check.add_argument("--power", type=int, help="central power d, or the period for centralize")

    for name, helptext in (("quotient", "structure constants of the finite quotient"),
                           ("dual", "comultiplication table of the dual coalgebra"),
                           ("verify-duality", "compare the dual quotient with the cotwisted product"),
                           ("grouplikes", "characters / grouplike elements")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "grouplikes":
            p.add_argument("--candidate", action="append", default=[], help="ALPHA,BETA to test (char 0)")
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        if args.command == "twist":
            return cmd_twist_eval(cfg, args.m, args.n, out)
        if args.command == "check":
            return cmd_check(cfg, args.which, args.power, out)
        if args.command == "quotient":
            return cmd_quotient(cfg, out)
        if args.command == "dual":
            return cmd_dual(cfg, out)
        if args.command == "verify-duality":
            return cmd_verify_duality(cfg, out)
        if args.command == "grouplikes":
            return cmd_grouplikes(cfg, args.candidate, out)
    except StabilityError as exc:
        _emit(out, _dump({"passed": False, "error": str(exc), "counterexample": exc.report.to_json()["counterexample"]}))
        _emit(err, f"error: {exc}")
        return EXIT_COUNTEREXAMPLE
    except (ConfigurationError, ValueError, ZeroDivisionError) as exc:
        _emit(err, f"error: {exc}")
        return EXIT_CONFIG
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
