"""Fermat's max/min procedure.

For ``p(A)`` the solver substitutes ``A + E``, suppresses the terms common
with ``p(A)``, balances the positive terms against the negative ones as an
adequality, divides through by the lowest power of ``E`` and finally drops
what is left of ``E`` by taking standard parts.  Parameters such as the
segment length ``B`` stay symbolic in the trace and are only instantiated
to solve the concluding equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .. import numfield
from ..errors import DegenerateConstant, NotPolynomial
from ..expr import (EPSILON, Add, Expr, MPoly, Polynomial, Sub, Var, free_vars, parse, substitute,
                    to_mpoly, to_polynomial)
from ..expr.evaluate import check_polynomial
from ..numfield import Series
from .trace import Derivation, RelationKind, Rule, _Builder, poly_expr

ADQ, EQ = RelationKind.ADEQUALITY, RelationKind.EQUALITY


@dataclass(frozen=True)
class ExtremumResult:
    critical_equation: Polynomial
    rational_roots: list[Fraction]
    derivation: Derivation
    var: str = "A"


def _series_in_e(p: MPoly, trunc: int) -> Series:
    """View a polynomial in ``E`` (and other letters) as a series over polynomials."""
    by_power = p.coefficients_in(EPSILON)
    trunc = max([trunc, *by_power])
    return Series(by_power, trunc=trunc)


def _from_series(s: Series) -> MPoly:
    # the E-exponents are distinct, so the shifted pieces never collide
    terms = {}
    for k, c in s.items():
        terms.update(_as_mpoly(c).shift(EPSILON, k).terms)
    return MPoly(terms)


def _as_mpoly(c) -> MPoly:
    return c if isinstance(c, MPoly) else MPoly.const(c)


def maximize(p: Expr | str, params: Mapping[str, object] | None = None,
             trunc: int = numfield.DEFAULT_TRUNC, var: str = "A") -> ExtremumResult:
    """Find where ``p`` (a polynomial in ``var``) can be extremal.

    Reports every rational root of the concluding equation; irrational
    critical points appear only through ``critical_equation``.
    """
    if isinstance(p, str):
        p = parse(p)
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    if EPSILON in params or var in params:
        raise NotPolynomial(f"{EPSILON!r} and {var!r} cannot be parameters")
    if EPSILON in free_vars(p):
        raise NotPolynomial("E is reserved for the increment")
    check_polynomial(p, {var, *params})
    base = to_mpoly(p)
    if max(base.substitute(params).coefficients_in(var), default=0) <= 0:
        raise DegenerateConstant(f"{p} does not depend on {var}; p(A+E) - p(A) vanishes identically")

    names = [*params, var, EPSILON]

    def key(mono):
        d = dict(mono)
        return (d.get(EPSILON, 0), d.get(var, 0), tuple(-d.get(n, 0) for n in params), mono)

    def show(poly: MPoly) -> Expr:
        return poly_expr(poly, names, key)

    trace = _Builder()
    shifted = substitute(p, {var: Add(Var(var), Var(EPSILON))})
    expanded = to_mpoly(shifted)
    shown = show(expanded)
    trace.add(shifted, shown, EQ, Rule.SUBSTITUTE, f"replace {var} by {var}+E")

    diff = numfield.sub(_series_in_e(expanded, trunc), _series_in_e(base, trunc))
    diff_poly = _from_series(diff)
    trace.add(Sub(shown, p), show(diff_poly), EQ, Rule.CANCEL_COMMON,
              "suppress the terms common to both values")

    signs = {k: c.split_by_sign() for k, c in diff.items()}
    positive = Series({k: pn[0] for k, pn in signs.items()}, trunc=diff.trunc)
    negative = Series({k: pn[1] for k, pn in signs.items()}, trunc=diff.trunc)
    trace.add(show(_from_series(positive)), show(_from_series(negative)), ADQ, Rule.GROUP_BY_SIGN,
              "positive terms adequated to the negative ones")

    v = diff.valuation
    # dividing by E^v is multiplying by the exact monomial E^-v
    shift = Series({-v: Fraction(1)}, trunc=diff.trunc - v)
    positive = numfield.mul(positive, shift)
    negative = numfield.mul(negative, shift)
    trace.add(show(_from_series(positive)), show(_from_series(negative)), ADQ, Rule.DIVIDE_BY_E,
              "divide both sides by E" if v == 1 else f"divide both sides by E^{v}")

    lhs, rhs = _as_mpoly(numfield.st(positive)), _as_mpoly(numfield.st(negative))
    trace.add(show(lhs), show(rhs), EQ, Rule.DISCARD_E, "take standard parts (st(E) = 0)")

    critical = (lhs - rhs).substitute(params)
    by_power = {k: c.constant_term() for k, c in critical.coefficients_in(var).items()}
    equation = Polynomial([by_power.get(k, 0) for k in range(max(by_power, default=0) + 1)], var)
    return ExtremumResult(equation, equation.rational_roots(), trace.build(), var)
