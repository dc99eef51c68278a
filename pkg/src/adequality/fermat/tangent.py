"""Tangents: Fermat's subtangent for algebraic curves, and a parametric stand-in for the cycloid."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import numfield
from ..errors import (
    PointNotOnCurve,
    SingularPoint,
    StationaryPoint,
    VerticalTangent,
    ZeroOrdinate,
)
from ..expr import (
    EPSILON,
    Add,
    Const,
    Div,
    Expr,
    MPoly,
    Mul,
    RationalFunction,
    Var,
    eval_rational,
    eval_series,
    make_binding,
    parse,
    rf_series_eval,
    substitute,
    to_mpoly,
)
from ..expr.evaluate import check_polynomial
from ..numfield import Series
from .trace import Derivation, RelationKind, Rule, _Builder, poly_expr, rationalize

ADQ, EQ = RelationKind.ADEQUALITY, RelationKind.EQUALITY
SUBTANGENT = "t"
SLOPE = "m"


@dataclass(frozen=True)
class TangentResult:
    subtangent_t: Fraction
    derivation: Derivation


@dataclass(frozen=True)
class SlopeResult:
    slope: Fraction | float
    derivation: Derivation


def subtangent(F: Expr | str, x0, y0, trunc: int = numfield.DEFAULT_TRUNC) -> TangentResult:
    """Subtangent of the curve ``F(x, y) = 0`` at ``(x0, y0)``.

    The ordinate ``y0*(t + E)/t`` is the one read off the tangent at
    ``x0 + E`` when the tangent meets the axis at ``x0 - t`` (similar
    triangles).  Putting it into the curve's equation and adequating gives
    an equation linear in ``t``.
    """
    if isinstance(F, str):
        F = parse(F)
    x0, y0 = Fraction(x0), Fraction(y0)
    check_polynomial(F, {"x", "y"})
    value = eval_rational(F, {"x": x0, "y": y0})
    if value != 0:
        raise PointNotOnCurve(f"F({x0}, {y0}) = {value}, not 0")
    if y0 == 0:
        raise ZeroOrdinate("the point lies on the axis; the similar triangles degenerate")

    series = rf_series_eval(F, x0, y0, trunc, t=SUBTANGENT)
    assert series.coeff(0) == 0
    if series.is_zero() or series.valuation > 1:
        raise SingularPoint(f"both partial derivatives vanish at ({x0}, {y0})")
    first = series.coeff(1)
    if not isinstance(first, RationalFunction):
        # the y-terms cancelled, leaving a constant
        first = RationalFunction([first], var=SUBTANGENT)
    # first = (t*Fx + y0*Fy)/t, so its numerator is linear in t
    num = first.num
    if num.degree < 1:
        raise VerticalTangent("dF/dx vanishes: the tangent is parallel to the axis and never meets it")
    (t_value,) = num.rational_roots()
    if t_value == 0:
        raise VerticalTangent("dF/dy vanishes: the tangent is perpendicular to the axis (subtangent 0)")

    return TangentResult(t_value, _subtangent_trace(F, x0, y0))


def _subtangent_trace(F: Expr, x0: Fraction, y0: Fraction) -> Derivation:
    t, e = Var(SUBTANGENT), Var(EPSILON)
    names = [SUBTANGENT, EPSILON]

    def key(mono):
        d = dict(mono)
        return (d.get(EPSILON, 0), -d.get(SUBTANGENT, 0), repr(mono))

    def show(p: MPoly) -> Expr:
        return poly_expr(p, names, key)

    on_tangent = substitute(F, {
        "x": Add(Const(x0), e),
        "y": Div(Mul(Const(y0), Add(t, e)), t),
    })
    scaled = Mul(t, on_tangent)
    expanded = to_mpoly(scaled)

    trace = _Builder()
    trace.add(scaled, show(expanded), EQ, Rule.SUBSTITUTE,
              f"curve property at the point of the tangent above x = {x0}+E, times t; "
              f"the E^0 terms cancel because ({x0}, {y0}) is on the curve")
    pos, neg = expanded.split_by_sign()
    trace.add(show(pos), show(neg), ADQ, Rule.GROUP_BY_SIGN, "adequate the positive terms to the negative ones")
    v = min(k for k in expanded.coefficients_in(EPSILON))
    pos, neg = pos.shift(EPSILON, -v), neg.shift(EPSILON, -v)
    trace.add(show(pos), show(neg), ADQ, Rule.DIVIDE_BY_E, "divide both sides by E")
    lhs, rhs = _standard_part(pos), _standard_part(neg)
    trace.add(show(lhs), show(rhs), EQ, Rule.DISCARD_E, "take standard parts (st(E) = 0)")
    return trace.build()


def _standard_part(p: MPoly) -> MPoly:
    return p.coefficients_in(EPSILON).get(0, MPoly())


def parametric_tangent(x_expr: Expr | str, y_expr: Expr | str, theta0,
                       trunc: int = numfield.DEFAULT_TRUNC, tol: float | None = None,
                       var: str = "theta") -> SlopeResult:
    """Slope of the curve ``(x(theta), y(theta))`` at ``theta0``.

    The slope ``m`` is found by adequating the rise of the tangent,
    ``m*(x(theta0+E) - x(theta0))``, with the rise of the curve.  A float
    ``theta0`` (or an explicit ``tol``) selects approximate coefficients.
    """
    if isinstance(x_expr, str):
        x_expr = parse(x_expr)
    if isinstance(y_expr, str):
        y_expr = parse(y_expr)
    if isinstance(theta0, float) and tol is None:
        tol = numfield.DEFAULT_TOL
    if tol is not None:
        theta0 = float(theta0)
    else:
        theta0 = Fraction(theta0)

    binding = make_binding({}, trunc, tol)
    at = binding[EPSILON].constant(theta0)
    moved = numfield.add(at, binding[EPSILON])
    dx = numfield.sub(eval_series(x_expr, {**binding, var: moved}), eval_series(x_expr, {**binding, var: at}))
    dy = numfield.sub(eval_series(y_expr, {**binding, var: moved}), eval_series(y_expr, {**binding, var: at}))

    if dx.is_zero():
        if dy.is_zero():
            raise StationaryPoint(f"both increments vanish through E^{min(dx.trunc, dy.trunc)}")
        raise VerticalTangent("x does not move to first order while y does")
    if dy.valuation < dx.valuation:
        raise VerticalTangent("the x-increment is of higher order than the y-increment")
    slope = numfield.st(numfield.div(dy, dx))
    return SlopeResult(slope, _parametric_trace(dx, dy, slope, theta0, var))


def _series_poly(s: Series, upto: int) -> MPoly:
    out = MPoly()
    for k, c in s.items():
        if k <= upto:
            out = out + MPoly.var(EPSILON, k) * rationalize(c)
    return out


def _parametric_trace(dx: Series, dy: Series, slope, theta0, var: str) -> Derivation:
    v = dx.valuation
    upto = v + 2
    m = Var(SLOPE)
    dxp, dyp = _series_poly(dx, upto), _series_poly(dy, upto)

    def show(p: MPoly) -> Expr:
        return poly_expr(p, [EPSILON])

    at = f"{var} = {theta0}" if isinstance(theta0, Fraction) else f"{var} = {theta0!r}"
    trace = _Builder()
    trace.add(Mul(m, show(dxp)), show(dyp), ADQ, Rule.SUBSTITUTE,
              f"rise of the tangent adequated to the rise of the curve at {at}; "
              f"terms above E^{upto} not shown")
    dxp, dyp = dxp.shift(EPSILON, -v), dyp.shift(EPSILON, -v)
    trace.add(Mul(m, show(dxp)), show(dyp), ADQ, Rule.DIVIDE_BY_E,
              "divide both sides by E" if v == 1 else f"divide both sides by E^{v}")
    lead_x, lead_y = _standard_part(dxp), _standard_part(dyp)
    tangent_rise = m if lead_x == MPoly.const(1) else Mul(m, show(lead_x))
    trace.add(tangent_rise, show(lead_y), EQ, Rule.DISCARD_E,
              f"take standard parts; m = {slope}")
    return trace.build()
