"""Least time across an interface, by adequality.

A ray goes from ``(0, a)`` above the interface to ``(d, -b)`` below it,
crossing at ``(x, 0)``; speeds are ``v1`` and ``v2``.  The travel time is

    T(x) = sqrt(a^2 + x^2)/v1 + sqrt(b^2 + (d - x)^2)/v2

and the crossing point is where ``st((T(x+E) - T(x))/E)`` vanishes.  Each
square root is expanded in ``E`` and its second-order term dropped when the
standard part is taken, so second-order terms are discarded twice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import numfield
from ..errors import InvalidGeometry, ToleranceNotReached
from ..expr import EPSILON, Const, Expr, MPoly, eval_series, make_binding, parse
from .trace import Derivation, RelationKind, Rule, _Builder, poly_expr, rationalize

MAX_ITERATIONS = 200

FIRST_LEG = parse("sqrt(a^2 + x^2)/v1")
SECOND_LEG = parse("sqrt(b^2 + (d - x)^2)/v2")
TRAVEL_TIME = FIRST_LEG + SECOND_LEG


@dataclass(frozen=True)
class RefractionResult:
    x_star: float
    theta1: float
    theta2: float
    snell_residual: float
    derivation: Derivation


class _Increments:
    """Series of each leg's time increment at a crossing point."""

    def __init__(self, a, b, d, v1, v2, trunc, tol):
        self.params = {"a": a, "b": b, "d": d, "v1": v1, "v2": v2}
        self.trunc = trunc
        self.tol = tol

    def legs(self, x: float) -> tuple[numfield.Series, numfield.Series]:
        binding = make_binding(self.params, self.trunc, self.tol)
        at = binding[EPSILON].constant(x)
        moved = numfield.add(at, binding[EPSILON])
        out = []
        for leg in (FIRST_LEG, SECOND_LEG):
            after = eval_series(leg, {**binding, "x": moved})
            before = eval_series(leg, {**binding, "x": at})
            out.append(numfield.sub(after, before))
        return out[0], out[1]

    def stationarity(self, x: float) -> float:
        """``st((T(x+E) - T(x))/E)``, the quantity that vanishes at the optimum."""
        first, second = self.legs(x)
        eps = numfield.epsilon(self.trunc, tol=self.tol)
        return numfield.st(numfield.div(numfield.add(first, second), eps))


def refract(a, b, d, v1, v2, tol: float = 1e-9, trunc: int = 2,
            coeff_tol: float = numfield.DEFAULT_TOL) -> RefractionResult:
    """Crossing point of the least-time path, located by bisection on the stationarity function."""
    values = {"a": a, "b": b, "d": d, "v1": v1, "v2": v2}
    for name, value in values.items():
        if not (isinstance(value, (int, float)) or hasattr(value, "__float__")):
            raise InvalidGeometry(f"{name} must be a number")
        if not float(value) > 0 or math.isinf(float(value)):
            raise InvalidGeometry(f"{name} must be positive and finite, got {value!r}")
    if not tol > 0:
        raise InvalidGeometry(f"tolerance must be positive, got {tol!r}")
    a, b, d, v1, v2 = (float(values[k]) for k in ("a", "b", "d", "v1", "v2"))
    inc = _Increments(a, b, d, v1, v2, max(trunc, 2), coeff_tol)

    lo, hi = 0.0, d
    g_lo, g_hi = inc.stationarity(lo), inc.stationarity(hi)
    assert g_lo < 0 < g_hi, "stationarity must change sign across the interval"

    def residual(x: float) -> float:
        t1, t2 = math.atan(x / a), math.atan((d - x) / b)
        return abs(math.sin(t1) / v1 - math.sin(t2) / v2)

    x = 0.5 * (lo + hi)
    for _ in range(MAX_ITERATIONS):
        if hi - lo <= tol and residual(x) <= tol:
            break
        g = inc.stationarity(x)
        if g == 0:
            lo = hi = x
            break
        if g < 0:
            lo = x
        else:
            hi = x
        mid = 0.5 * (lo + hi)
        if mid == x:
            break
        x = mid
    else:
        raise ToleranceNotReached(f"bisection did not reach {tol} in {MAX_ITERATIONS} steps")
    x = 0.5 * (lo + hi)
    r = residual(x)
    if r > tol:
        raise ToleranceNotReached(f"Snell residual {r:.3g} exceeds tolerance {tol}")

    theta1, theta2 = math.atan(x / a), math.atan((d - x) / b)
    return RefractionResult(x, theta1, theta2, r, _refraction_trace(inc, x))


def _term(c, k: int) -> Expr:
    return poly_expr(MPoly.var(EPSILON, k) * rationalize(c), [EPSILON]) if k else Const(rationalize(c))


def _sum(terms: list[Expr]) -> Expr:
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def _refraction_trace(inc: _Increments, x: float) -> Derivation:
    """Positive and negative parts of the two legs' increments, kept term by term."""
    first, second = inc.legs(x)
    pos: list[tuple] = []
    neg: list[tuple] = []
    for leg in (first, second):
        for k, c in leg.items():
            if k > 2:
                continue
            (pos if c > 0 else neg).append((k, abs(c)))
    pos.sort(key=lambda kc: kc[0])
    neg.sort(key=lambda kc: kc[0])

    def side(terms, shift=0, keep=None):
        chosen = [(k - shift, c) for k, c in terms if keep is None or k - shift <= keep]
        return _sum([_term(c, k) for k, c in chosen]) if chosen else Const(0)

    trace = _Builder()
    trace.add(side(pos), side(neg), RelationKind.ADEQUALITY, Rule.GROUP_BY_SIGN,
              f"time gained on one leg adequated to time lost on the other at x = {x!r}; "
              "each root expanded through E^2")
    trace.add(side(pos, 1), side(neg, 1), RelationKind.ADEQUALITY, Rule.DIVIDE_BY_E,
              "divide both sides by E")
    trace.add(side(pos, 1, 0), side(neg, 1, 0), RelationKind.EQUALITY, Rule.DISCARD_E,
              "take standard parts: the second-order terms of both roots are discarded, "
              "leaving sin(theta1)/v1 = sin(theta2)/v2")
    return trace.build()
