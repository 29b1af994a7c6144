"""Text grammars for scalars, tensor elements and univariate polynomials.

All three share one small infix grammar::

    expr   := [+|-] term ((+|-) term)*
    term   := factor ([*] factor)*
    factor := atom [^ INT]
    atom   := INT [/ INT] | x | y | z | ( expr )

``z`` is the generator of a cyclotomic field.  Products are evaluated
commutatively, so ``x^2y^3`` and ``y^3*x^2`` both denote the tensor
monomial x^2 (x) y^3.
"""
from __future__ import annotations

import re

from .elements import Element, UniPoly
from .scalars import ConfigurationError, Cyclotomic, FieldSpec


class ParseError(ConfigurationError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|([-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = text[pos:].strip().split()[0] if text[pos:].strip() else text[pos:]
            raise ParseError(f"unexpected token {bad!r} in {text!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    # values are dicts {(xdeg, ydeg, zdeg): Fraction-or-scalar}
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} but found {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> dict:
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r} in {self.text!r}")
        return value

    @staticmethod
    def _add(a: dict, b: dict, sign: int = 1) -> dict:
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + sign * v
        return {k: v for k, v in out.items() if v}

    def _mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                out[k] = out.get(k, 0) + va * vb
        return {k: v for k, v in out.items() if v}

    def expr(self) -> dict:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        value = self._add({}, self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            value = self._add(value, self.term(), sign)
        return value

    def term(self) -> dict:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                value = self._mul(value, self.factor())
            elif tok is not None and (tok.isdigit() or tok in ("x", "y", "z", "(")):
                value = self._mul(value, self.factor())
            else:
                return value

    def factor(self) -> dict:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, found {tok!r} in {self.text!r}")
            result = {(0, 0, 0): 1}
            for _ in range(int(tok)):
                result = self._mul(result, base)
            return result
        return base

    def atom(self) -> dict:
        tok = self.take()
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise ParseError(f"bad denominator {den!r} in {self.text!r}")
                return {(0, 0, 0): self.field(num) / self.field(int(den))}
            return {(0, 0, 0): self.field(num)} if num else {}
        if tok == "x":
            return {(1, 0, 0): 1}
        if tok == "y":
            return {(0, 1, 0): 1}
        if tok == "z":
            if not isinstance(self.field, Cyclotomic):
                raise ParseError(f"token 'z' needs a cyclotomic field, not {self.field}")
            return {(0, 0, 1): 1}
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def _collapse(raw: dict, field: FieldSpec) -> dict:
    """Fold z-powers into field scalars, returning {(a, b): scalar}."""
    out: dict = {}
    gen = field.gen if isinstance(field, Cyclotomic) else None
    for (a, b, c), v in raw.items():
        s = field(v) * (gen ** c if c else 1)
        out[(a, b)] = out.get((a, b), field.zero) + s
    return {k: v for k, v in out.items() if v}


def parse_scalar(text: str, field: FieldSpec):
    terms = _collapse(_Parser(text, field).parse(), field)
    if any(k != (0, 0) for k in terms):
        raise ParseError(f"scalar {text!r} must not contain x or y")
    return terms.get((0, 0), field.zero)


def parse_element(text: str, field: FieldSpec) -> Element:
    return Element(field, _collapse(_Parser(text, field).parse(), field))


def parse_poly(text: str, field: FieldSpec, var: str) -> UniPoly:
    terms = _collapse(_Parser(text, field).parse(), field)
    other = 1 if var == "x" else 0
    if any(k[other] for k in terms):
        raise ParseError(f"polynomial {text!r} must be in {var} only")
    idx = 0 if var == "x" else 1
    return UniPoly.from_dict(field, var, {k[idx]: v for k, v in terms.items()})
