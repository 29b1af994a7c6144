import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from twistdual.findim import QuotientSpec  # noqa: E402
from twistdual.parsing import parse_poly  # noqa: E402
from twistdual.twists import TwistTable, parse_family  # noqa: E402


def make_spec(family: str, px: str, qy: str, ell=None) -> QuotientSpec:
    fam = parse_family(family)
    return QuotientSpec(fam, parse_poly(px, fam.field, "x"), parse_poly(qy, fam.field, "y"), ell)


def table(family: str) -> TwistTable:
    return TwistTable(parse_family(family))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICT_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance verdicts")
    for line in sorted(set(lines), key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
