"""Recursive-descent parser for the expression grammar.

::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := atom ('^' int)?
    atom     := rational | ident | func '(' expr ')' | '(' expr ')' | '-' atom
    rational := int ('/' posint)?

There is no implicit multiplication: ``2*a*e`` parses, ``2ae`` does not.
A rational literal binds tighter than division, so ``1/6*E^3`` is
``(1/6)*E^3``.  Since ``'-' atom`` is an atom, ``-x^2`` means ``(-x)^2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from ..errors import ParseError, UnknownFunction
from .ast import FUNCTIONS, Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Var

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class Token(NamedTuple):
    kind: str  # "num", "ident", "op" or "end"
    text: str
    pos: int  # character index


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if not rest.strip():
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", _byte_offset(text, bad))
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, _byte_offset(self.text, tok.pos))

    def expect(self, op: str) -> None:
        if self.tok.kind != "op" or self.tok.text != op:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        self.advance()

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r} (multiplication must be explicit)")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            rhs = self.factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def factor(self) -> Expr:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            sign = 1
            if self.at_op("-"):
                self.advance()
                sign = -1
            if self.tok.kind != "num":
                raise self.error("exponent must be an integer")
            return Pow(base, sign * int(self.advance().text))
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            value = Fraction(int(tok.text))
            if self.at_op("/") and self.peek().kind == "num" and int(self.peek().text) > 0:
                self.advance()
                value /= int(self.advance().text)
            return Const(value)
        if tok.kind == "ident":
            self.advance()
            if self.at_op("("):
                if tok.text not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {tok.text!r}",
                                          _byte_offset(self.text, tok.pos))
                self.advance()
                arg = self.expr()
                self.expect(")")
                return Func(tok.text, arg)
            if tok.text in FUNCTIONS:
                raise self.error(f"function {tok.text!r} needs an argument in parentheses")
            return Var(tok.text)
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if self.at_op("-"):
            self.advance()
            inner = self.atom()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Neg(inner)
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse(text: str) -> Expr:
    """Parse ``text``; raises :class:`ParseError` carrying a byte offset."""
    return _Parser(text).parse()
