"""Printing expressions.

:func:`render` produces text in the input grammar, so ``parse(render(e))``
gives back ``e`` for any tree the parser can produce.  ``spaced=False``
drops the blanks around ``+``/``-``.  :func:`render_juxtaposed` is a
display-only form in the old style, writing products by juxtaposition
(``2AE+E^2``); it is not meant to be parsed back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ast import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Var

_SUM, _PRODUCT, _FACTOR, _ATOM = 1, 2, 3, 4
_LITERAL = re.compile(r"-?[0-9]+(/[0-9]+)?")


def _level(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PRODUCT
    if isinstance(e, Pow):
        return _FACTOR
    return _ATOM


def _fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(e: Expr, spaced: bool = True) -> str:
    plus, minus = (" + ", " - ") if spaced else ("+", "-")

    def wrap(node: Expr, level: int) -> str:
        s = go(node)
        return f"({s})" if _level(node) < level else s

    def go(node: Expr) -> str:
        if isinstance(node, Const):
            return _fraction(node.value)
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Add):
            return wrap(node.left, _SUM) + plus + wrap(node.right, _PRODUCT)
        if isinstance(node, Sub):
            return wrap(node.left, _SUM) + minus + wrap(node.right, _PRODUCT)
        if isinstance(node, Mul):
            return wrap(node.left, _PRODUCT) + "*" + wrap(node.right, _FACTOR)
        if isinstance(node, Div):
            right = wrap(node.right, _FACTOR)
            if right[0].isdigit():
                # "2/3" would lex as a single rational literal
                right = f"({right})"
            return wrap(node.left, _PRODUCT) + "/" + right
        if isinstance(node, Pow):
            base = node.base
            s = go(base)
            if _level(base) < _ATOM or s.startswith("-") or "/" in s and _LITERAL.fullmatch(s):
                s = f"({s})"
            return f"{s}^{node.exponent}"
        if isinstance(node, Neg):
            inner = wrap(node.arg, _ATOM)
            if _LITERAL.fullmatch(inner):
                # the parser folds "-c" into a literal anyway
                return _fraction(-Fraction(inner))
            return "-" + inner
        if isinstance(node, Func):
            return f"{node.name}({go(node.arg)})"
        raise TypeError(f"cannot render {node!r}")

    return go(e)


def _flatten_product(e: Expr) -> list[Expr]:
    if isinstance(e, Mul):
        return _flatten_product(e.left) + _flatten_product(e.right)
    return [e]


def render_juxtaposed(e: Expr, lowercase: bool = False) -> str:
    """Compact display with implicit products, e.g. ``BA-A^2+BE-2AE-E^2``."""

    def name(v: str) -> str:
        return v.lower() if lowercase else v

    def wrap(node: Expr, level: int) -> str:
        s = go(node)
        return f"({s})" if _level(node) < level else s

    def factor_text(node: Expr) -> str:
        if isinstance(node, Const) and node.value.denominator != 1:
            return f"({_fraction(node.value)})"
        return wrap(node, _FACTOR)

    def go(node: Expr) -> str:
        if isinstance(node, Const):
            return _fraction(node.value)
        if isinstance(node, Var):
            return name(node.name)
        if isinstance(node, Add):
            return wrap(node.left, _SUM) + "+" + wrap(node.right, _PRODUCT)
        if isinstance(node, Sub):
            return wrap(node.left, _SUM) + "-" + wrap(node.right, _PRODUCT)
        if isinstance(node, Mul):
            factors = _flatten_product(node)
            out = factor_text(factors[0])
            for prev, f in zip(factors, factors[1:]):
                text = factor_text(f)
                glue = "" if _juxtaposable(prev, f, text) else "*"
                out += glue + text
            return out
        if isinstance(node, Div):
            right = wrap(node.right, _FACTOR)
            return wrap(node.left, _PRODUCT) + "/" + right
        if isinstance(node, Pow):
            s = go(node.base)
            if _level(node.base) < _ATOM or isinstance(node.base, Neg) or (
                    isinstance(node.base, Const) and node.base.value < 0):
                s = f"({s})"
            return f"{s}^{node.exponent}"
        if isinstance(node, Neg):
            return "-" + wrap(node.arg, _ATOM)
        if isinstance(node, Func):
            return f"{node.name}({go(node.arg)})"
        raise TypeError(f"cannot render {node!r}")

    return go(e)


def _single_letter(node: Expr) -> bool:
    while isinstance(node, Pow):
        node = node.base
    return not isinstance(node, Var) or len(node.name) == 1


def _juxtaposable(prev: Expr, nxt: Expr, text: str) -> bool:
    if text[0].isdigit() or text[0] == "-":
        return False
    return _single_letter(prev) and _single_letter(nxt)
