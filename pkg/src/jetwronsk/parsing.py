"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant, implicit multiplication is rejected)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

``NAME`` is an identifier optionally followed by primes (``z1''``), which is
how jet coordinates are written.  Division is only allowed by a non-zero
constant, which covers rational literals such as ``1/2*z1``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import ParseError
from .polynomial import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'*)|(.))")


class Token(NamedTuple):
    kind: str  # "int", "name", "op" or "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(m.start(3), f"unexpected character {ch!r}")
            tokens.append(Token("op", ch, m.start(3)))
        else:
            break
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables):
        self.tokens = tokenize(text)
        self.i = 0
        self.allowed = None if variables is None else set(variables)
        self.universe = tuple(variables) if variables is not None else ()

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, chars: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in chars

    def parse(self) -> Polynomial:
        if self.tok.kind == "end":
            raise ParseError(self.tok.pos, "expected an expression")
        result = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, f"expected operator or end of input, found {self.tok.text!r}")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.at_op("+-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.at_op("*/"):
            op = self.advance()
            rhs = self.unary()
            if op.text == "*":
                result = result * rhs
            else:
                if not rhs.is_constant():
                    raise ParseError(op.pos, "division is only allowed by a constant")
                if not rhs:
                    raise ParseError(op.pos, "division by zero")
                result = result.scale(Fraction(1) / rhs.constant_term())
        return result

    def unary(self) -> Polynomial:
        if self.at_op("+-"):
            op = self.advance().text
            operand = self.unary()
            return operand if op == "+" else -operand
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            if self.tok.kind != "int":
                raise ParseError(self.tok.pos, "expected non-negative integer exponent")
            base = base ** int(self.advance().text)
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return Polynomial.constant(int(tok.text), self.universe)
        if tok.kind == "name":
            self.advance()
            if self.allowed is not None and tok.text not in self.allowed:
                raise ParseError(tok.pos, f"unknown variable {tok.text!r}")
            return Polynomial.variable(tok.text, self.universe)
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            if not self.at_op(")"):
                raise ParseError(self.tok.pos, "expected ')'")
            self.advance()
            return inner
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(tok.pos, f"expected number, variable or '(', found {what}")


def parse_polynomial(text: str, variables: Iterable[str] | None = None) -> Polynomial:
    """Parse ``text`` into an exact :class:`Polynomial`.

    With ``variables`` given, the result lives over exactly that universe and
    any other name is a :class:`ParseError`; otherwise the universe is the set
    of names that occur.
    """
    if variables is not None:
        variables = tuple(variables)
    result = _Parser(text, variables).parse()
    if variables is not None:
        return result.with_variables(variables)
    return result
