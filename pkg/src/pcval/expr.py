"""Text syntax for elements of K and K(X).

Accepted forms include ``3/4``, ``t^(1/3)``, ``2*t^2 - t``, ``(t)/(1 - t)``,
``X^2 - (1 + t)`` and ``(X - t)/(X - t^2)``.  Printing with ``str`` yields a
canonical form that parses back to the same text.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

from .ground_field import QQ, Backend, FieldElem, Poly, RationalFunction, SparseSum


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str):
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch in "+-*/^()tX":
                toks.append((ch, ch, m.start(2)))
            elif not ch.isspace():
                raise ParseError(f"unexpected character {ch!r}", text, m.start(2))
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, backend: Backend):
        self.text = text
        self.backend = backend
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> RationalFunction:
        if self.peek() == "end":
            raise ParseError("empty expression", self.text, 0)
        value = self.expr()
        if self.peek() != "end":
            raise ParseError("trailing input", self.text, self.toks[self.i][2])
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, pos)
                value = value / rhs
        return value

    def factor(self) -> RationalFunction:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        kind, v, pos = self.take()
        b = self.backend
        if kind == "int":
            base = RationalFunction.of(FieldElem.of(v, b))
        elif kind == "t":
            exp = self.exponent(rational=True) if self.peek() == "^" else mpq(1)
            return RationalFunction.of(FieldElem.t_pow(exp, b))
        elif kind == "X":
            base = RationalFunction.X(b)
        elif kind == "(":
            base = self.expr()
            self.take(")")
        else:
            raise ParseError(f"unexpected {kind!r}", self.text, pos)
        if self.peek() == "^":
            k = self.exponent(rational=False)
            if k < 0 and base.is_zero():
                raise ParseError("zero to a negative power", self.text, pos)
            base = base ** int(k)
        return base

    def exponent(self, rational: bool):
        self.take("^")
        pos = self.toks[self.i][2]
        if self.peek() == "(":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            num = self.take("int")[1]
            den = 1
            if self.peek() == "/":
                self.take()
                den = self.take("int")[1]
                if den == 0:
                    raise ParseError("zero denominator in exponent", self.text, pos)
            self.take(")")
            e = mpq(sign * num, den)
        else:
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            e = mpq(sign * self.take("int")[1])
        if not rational and e.denominator != 1:
            raise ParseError("only t may carry a fractional exponent", self.text, pos)
        return e


def parse_rfun(text: str, backend: Backend = QQ) -> RationalFunction:
    """Parse an element of K(X)."""
    try:
        return _Parser(text, backend).parse()
    except ZeroDivisionError as exc:
        raise ParseError(str(exc), text, 0) from exc


def parse_poly(text: str, backend: Backend = QQ) -> Poly:
    phi = parse_rfun(text, backend)
    if not phi.den.is_constant():
        raise ParseError("expected a polynomial in X", text, 0)
    return phi.num


def parse_elem(text: str, backend: Backend = QQ) -> FieldElem:
    """Parse an element of K (no X allowed)."""
    phi = parse_rfun(text, backend)
    if not phi.is_constant():
        raise ParseError("expected an element of K, found X", text, 0)
    return phi.constant()


def parse_rational(text: str) -> mpq:
    try:
        return mpq(text.strip())
    except ValueError as exc:
        raise ParseError("not a rational", text, 0) from exc


def sparse(text: str, backend: Backend = QQ) -> SparseSum:
    x = parse_elem(text, backend)
    if not x.is_sparse():
        raise ParseError("expected a finite sum of t-powers", text, 0)
    return x.num
