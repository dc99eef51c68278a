"""Textbook symbolic differentiation.

This is an independent oracle for the tests: the solvers never call it, they
have to arrive at the same answers through adequality.
"""

from __future__ import annotations

from fractions import Fraction

from .ast import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Var

ZERO, ONE = Const(Fraction(0)), Const(Fraction(1))


def _is(e: Expr, value) -> bool:
    return isinstance(e, Const) and e.value == value


def _add(a: Expr, b: Expr) -> Expr:
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is(a, 0):
        return _neg(b)
    return Sub(a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is(a, 0):
        return ZERO
    if _is(b, 1):
        return a
    return Div(a, b)


def symbolic_derivative(e: Expr, var: str) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Add):
        return _add(symbolic_derivative(e.left, var), symbolic_derivative(e.right, var))
    if isinstance(e, Sub):
        return _sub(symbolic_derivative(e.left, var), symbolic_derivative(e.right, var))
    if isinstance(e, Neg):
        return _neg(symbolic_derivative(e.arg, var))
    if isinstance(e, Mul):
        dl, dr = symbolic_derivative(e.left, var), symbolic_derivative(e.right, var)
        return _add(_mul(dl, e.right), _mul(e.left, dr))
    if isinstance(e, Div):
        dl, dr = symbolic_derivative(e.left, var), symbolic_derivative(e.right, var)
        return _div(_sub(_mul(dl, e.right), _mul(e.left, dr)), Pow(e.right, 2))
    if isinstance(e, Pow):
        k = e.exponent
        if k == 0:
            return ZERO
        db = symbolic_derivative(e.base, var)
        power = e.base if k == 2 else (ONE if k == 1 else Pow(e.base, k - 1))
        return _mul(_mul(Const(k), power), db)
    if isinstance(e, Func):
        du = symbolic_derivative(e.arg, var)
        if e.name == "sin":
            outer: Expr = Func("cos", e.arg)
        elif e.name == "cos":
            outer = _neg(Func("sin", e.arg))
        else:
            outer = Div(ONE, Mul(Const(2), Func("sqrt", e.arg)))
        return _mul(outer, du)
    raise TypeError(f"cannot differentiate {e!r}")
