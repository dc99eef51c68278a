"""Evaluating expression trees: as series, as polynomials, as rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .. import numfield
from ..errors import DivisionByZero, InvalidPrecision, ModeMismatch, NotPolynomial, UnboundVariable
from ..numfield import Series
from .ast import EPSILON, Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Var, free_vars
from .poly import Polynomial, RationalFunction

Binding = Mapping[str, Series]


def make_binding(values: Mapping[str, object] | None = None, trunc: int = numfield.DEFAULT_TRUNC,
                 tol: float | None = None) -> dict[str, Series]:
    """Bind names to series; plain numbers become constants and ``E`` is always the infinitesimal.

    Values may be Series, ints, Fractions, floats (approximate mode only) or
    expression trees / strings, which are evaluated under the binding built
    so far.
    """
    eps = numfield.epsilon(trunc, tol=tol)
    binding: dict[str, Series] = {EPSILON: eps}
    for name, value in (values or {}).items():
        if name == EPSILON:
            raise InvalidPrecision("the name E is reserved for the infinitesimal")
        if isinstance(value, str):
            from .parser import parse
            value = parse(value)
        if isinstance(value, Expr):
            value = eval_series(value, binding)
        elif not isinstance(value, Series):
            if isinstance(value, float) and tol is None:
                raise ModeMismatch(f"float value for {name!r} in exact mode")
            value = eps.constant(value)
        if value.tol != tol:
            raise ModeMismatch(f"binding for {name!r} has a different coefficient mode")
        binding[name] = value
    return binding


def eval_series(e: Expr, binding: Binding) -> Series:
    try:
        template = binding[EPSILON]
    except KeyError:
        raise UnboundVariable("E is not bound") from None

    def go(node: Expr) -> Series:
        if isinstance(node, Const):
            return template.constant(node.value)
        if isinstance(node, Var):
            try:
                return binding[node.name]
            except KeyError:
                raise UnboundVariable(f"variable {node.name!r} is not bound") from None
        if isinstance(node, Add):
            return numfield.add(go(node.left), go(node.right))
        if isinstance(node, Sub):
            return numfield.sub(go(node.left), go(node.right))
        if isinstance(node, Mul):
            return numfield.mul(go(node.left), go(node.right))
        if isinstance(node, Div):
            return numfield.div(go(node.left), go(node.right))
        if isinstance(node, Pow):
            return numfield.power(go(node.base), node.exponent)
        if isinstance(node, Neg):
            return numfield.neg(go(node.arg))
        if isinstance(node, Func):
            return numfield.taylor_apply(node.name, go(node.arg))
        raise TypeError(f"cannot evaluate {node!r}")

    return go(e)


def eval_rational(e: Expr, values: Mapping[str, Fraction] | None = None) -> Fraction:
    """Exact value of an expression at rational points."""
    values = values or {}

    def go(node: Expr) -> Fraction:
        if isinstance(node, Const):
            return node.value
        if isinstance(node, Var):
            try:
                return Fraction(values[node.name])
            except KeyError:
                raise UnboundVariable(f"variable {node.name!r} is not bound") from None
        if isinstance(node, Add):
            return go(node.left) + go(node.right)
        if isinstance(node, Sub):
            return go(node.left) - go(node.right)
        if isinstance(node, Mul):
            return go(node.left) * go(node.right)
        if isinstance(node, Div):
            den = go(node.right)
            if den == 0:
                raise DivisionByZero("division by zero")
            return go(node.left) / den
        if isinstance(node, Pow):
            base = go(node.base)
            if base == 0 and node.exponent < 0:
                raise DivisionByZero("zero to a negative power")
            return base ** node.exponent
        if isinstance(node, Neg):
            return -go(node.arg)
        if isinstance(node, Func):
            value = numfield.taylor_apply(node.name, numfield.from_rational(go(node.arg), trunc=0))
            return numfield.st(value)
        raise TypeError(f"cannot evaluate {node!r}")

    return go(e)


def to_polynomial(e: Expr, var: str, params: Mapping[str, Fraction] | None = None) -> Polynomial:
    """Expand ``e`` into a polynomial in ``var``; other names must be in ``params``."""
    params = params or {}

    def go(node: Expr) -> Polynomial:
        if isinstance(node, Const):
            return Polynomial.constant(node.value, var)
        if isinstance(node, Var):
            if node.name == var:
                return Polynomial.monomial(1, var=var)
            if node.name in params:
                return Polynomial.constant(Fraction(params[node.name]), var)
            raise NotPolynomial(f"free variable {node.name!r} besides {var!r}")
        if isinstance(node, Add):
            return go(node.left) + go(node.right)
        if isinstance(node, Sub):
            return go(node.left) - go(node.right)
        if isinstance(node, Mul):
            return go(node.left) * go(node.right)
        if isinstance(node, Neg):
            return -go(node.arg)
        if isinstance(node, Pow):
            base = go(node.base)
            if node.exponent >= 0:
                return base ** node.exponent
            if base.degree > 0:
                raise NotPolynomial(f"negative power of a polynomial in {var!r}")
            if base.is_zero():
                raise DivisionByZero("zero to a negative power")
            return Polynomial.constant(base[0] ** node.exponent, var)
        if isinstance(node, Div):
            den = go(node.right)
            if den.degree > 0:
                raise NotPolynomial(f"division by a polynomial in {var!r}")
            if den.is_zero():
                raise DivisionByZero("division by zero")
            return Polynomial([c / den[0] for c in go(node.left).coeffs], var)
        if isinstance(node, Func):
            raise NotPolynomial(f"{node.name}(...) is not polynomial")
        raise TypeError(f"cannot expand {node!r}")

    return go(e)


def check_polynomial(e: Expr, variables: set[str]) -> None:
    """Raise :class:`NotPolynomial` unless ``e`` is a polynomial in ``variables``."""
    extra = free_vars(e) - variables
    if extra:
        raise NotPolynomial(f"unexpected variables {sorted(extra)}")
    for node in e.walk():
        if isinstance(node, Func):
            raise NotPolynomial(f"{node.name}(...) is not polynomial")
        if isinstance(node, Pow) and node.exponent < 0 and free_vars(node.base):
            raise NotPolynomial("negative power of a variable")
        if isinstance(node, Div) and free_vars(node.right):
            raise NotPolynomial("division by a variable expression")


def rf_series_eval(F: Expr, x0: Fraction, y0: Fraction, trunc: int = numfield.DEFAULT_TRUNC,
                   t: str = "t") -> Series:
    """Series in ``E`` of ``F(x0 + E, y0*(t + E)/t)`` with coefficients rational in ``t``.

    The ordinate is the one of the point on the line through ``(x0, y0)``
    meeting the axis a distance ``t`` behind ``x0``.
    """
    check_polynomial(F, {"x", "y"})
    x0, y0 = Fraction(x0), Fraction(y0)
    slope = RationalFunction([y0], [0, 1], var=t)  # y0/t
    binding = {
        EPSILON: numfield.epsilon(trunc),
        "x": Series({0: x0, 1: 1}, trunc=trunc),
        "y": Series({0: y0, 1: slope}, trunc=trunc),
    }
    return eval_series(F, binding)


def eval_float(e: Expr, values: Mapping[str, float] | None = None) -> float:
    """Plain floating-point value (no series)."""
    values = values or {}

    def go(node: Expr) -> float:
        if isinstance(node, Const):
            return float(node.value)
        if isinstance(node, Var):
            try:
                return float(values[node.name])
            except KeyError:
                raise UnboundVariable(f"variable {node.name!r} is not bound") from None
        if isinstance(node, Add):
            return go(node.left) + go(node.right)
        if isinstance(node, Sub):
            return go(node.left) - go(node.right)
        if isinstance(node, Mul):
            return go(node.left) * go(node.right)
        if isinstance(node, Div):
            return go(node.left) / go(node.right)
        if isinstance(node, Pow):
            return go(node.base) ** node.exponent
        if isinstance(node, Neg):
            return -go(node.arg)
        if isinstance(node, Func):
            return getattr(math, node.name)(go(node.arg))
        raise TypeError(f"cannot evaluate {node!r}")

    return go(e)
