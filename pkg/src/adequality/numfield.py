"""Truncated Laurent series in an infinitesimal ``E``.

A :class:`Series` is a finite sum ``sum c_k E^k`` (finitely many negative
``k``) together with a truncation order ``trunc``: every coefficient at an
exponent ``<= trunc`` is trusted, everything above it is unknown unless the
``exact`` flag says nothing was ever dropped.  Ordered by the sign of the
lowest-order coefficient this is an ordered field extension of the
rationals, which is all the standard-part construction needs; the ultrapower
construction of the hyperreals is not computable and is not attempted.

Coefficients come in two modes that never mix inside one series:

* exact: :class:`fractions.Fraction` (or any exact field element supporting
  ``+ - * /`` and ``== 0``, e.g. a rational function in another variable);
* approximate: ``float`` with an absolute tolerance ``tol``, two coefficients
  being equal when they differ by at most ``tol``.

All values are immutable.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping

from .errors import (
    DivisionByZero,
    ExactModeUnsupported,
    InfiniteValue,
    InvalidPrecision,
    ModeMismatch,
    NegativeSqrtArgument,
    PrecisionExhausted,
)

DEFAULT_TRUNC = 8
DEFAULT_TOL = 1e-12

Coefficient = Any  # Fraction in exact mode, float in approximate mode


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Series:
    """Immutable truncated Laurent series in ``E``.

    Build one with :func:`from_rational`, :func:`from_float`,
    :func:`epsilon` or the constructor; combine with the usual operators.
    ``==`` is structural (same stored terms, exactness and mode, any
    truncation order); use :func:`compare` for the field order.
    """

    __slots__ = ("_terms", "trunc", "exact", "tol")

    def __init__(
        self,
        terms: Mapping[int, Coefficient] | Iterable[tuple[int, Coefficient]] = (),
        trunc: int = DEFAULT_TRUNC,
        exact: bool = True,
        tol: float | None = None,
    ):
        if tol is not None and not tol > 0:
            raise InvalidPrecision(f"tolerance must be positive, got {tol!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, Coefficient] = {}
        for k, c in items:
            k = int(k)
            c = _coerce(c, tol)
            if _is_zero(c, tol):
                continue
            if k > trunc:
                exact = False
                continue
            clean[k] = c
        object.__setattr__(self, "_terms", dict(sorted(clean.items())))
        object.__setattr__(self, "trunc", int(trunc))
        object.__setattr__(self, "exact", bool(exact))
        object.__setattr__(self, "tol", tol)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict[int, Coefficient]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Coefficient]]:
        return iter(self._terms.items())

    def coeff(self, k: int) -> Coefficient:
        if k > self.trunc and not self.exact:
            raise PrecisionExhausted(f"coefficient of E^{k} lies beyond trunc {self.trunc}")
        return self._terms.get(k, self._zero())

    def is_zero(self) -> bool:
        """True when no term is stored (the value may still be O(E^(trunc+1)))."""
        return not self._terms

    @property
    def valuation(self) -> float | int:
        """Lowest stored exponent; ``inf`` for a series with no stored terms."""
        return next(iter(self._terms), math.inf)

    @property
    def is_approx(self) -> bool:
        return self.tol is not None

    def _zero(self):
        return 0.0 if self.tol is not None else Fraction(0)

    def _one(self):
        return 1.0 if self.tol is not None else Fraction(1)

    def _like(self, terms, trunc, exact) -> Series:
        return Series(terms, trunc=trunc, exact=exact, tol=self.tol)

    def constant(self, value) -> Series:
        """Embed ``value`` with this series' mode and truncation order."""
        return self._like({0: value}, self.trunc, True)

    # -- protocol -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self._terms == other._terms and self.exact == other.exact
                and self.tol == other.tol)

    def __hash__(self):
        return hash((tuple(self._terms.items()), self.exact, self.tol))

    def __repr__(self):
        body = ", ".join(f"{k}: {c!r}" for k, c in self._terms.items())
        extra = "" if self.tol is None else f", tol={self.tol!r}"
        return f"Series({{{body}}}, trunc={self.trunc}, exact={self.exact}{extra})"

    def __str__(self):
        return format_series(self)

    def _lift(self, other) -> Series:
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Rational, float)):
            return self.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else sub(self, other)

    def __rsub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else sub(other, self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else div(self, other)

    def __rtruediv__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else div(other, self)

    def __pow__(self, k: int):
        return power(self, k)

    def __lt__(self, other):
        return compare(self, self._lift(other)) is Ordering.LESS

    def __le__(self, other):
        return compare(self, self._lift(other)) is not Ordering.GREATER

    def __gt__(self, other):
        return compare(self, self._lift(other)) is Ordering.GREATER

    def __ge__(self, other):
        return compare(self, self._lift(other)) is not Ordering.LESS


def _coerce(c, tol):
    if tol is not None:
        return float(c)
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise ModeMismatch("float coefficient in an exact series")
    return c


def _is_zero(c, tol) -> bool:
    if tol is not None:
        return abs(c) <= tol
    return c == 0


def _check_mode(a: Series, b: Series) -> None:
    if a.tol != b.tol:
        raise ModeMismatch(f"cannot combine series with tolerances {a.tol!r} and {b.tol!r}")


def _eff_val(s: Series) -> int:
    # lower bound on the true valuation, used for truncation bookkeeping
    return s.trunc + 1 if s.is_zero() else s.valuation


# -- constructors -----------------------------------------------------------

def from_rational(q, trunc: int = DEFAULT_TRUNC) -> Series:
    return Series({0: Fraction(q)}, trunc=trunc)


def from_float(x: float, trunc: int = DEFAULT_TRUNC, tol: float = DEFAULT_TOL) -> Series:
    return Series({0: float(x)}, trunc=trunc, tol=tol)


def epsilon(trunc: int = DEFAULT_TRUNC, tol: float | None = None) -> Series:
    """The infinitesimal ``E`` itself."""
    if trunc < 1:
        raise InvalidPrecision(f"E needs trunc >= 1, got {trunc}")
    return Series({1: 1}, trunc=trunc, tol=tol)


# -- arithmetic -------------------------------------------------------------

def add(a: Series, b: Series) -> Series:
    _check_mode(a, b)
    out = dict(a._terms)
    for k, c in b._terms.items():
        out[k] = out[k] + c if k in out else c
    return a._like(out, min(a.trunc, b.trunc), a.exact and b.exact)


def neg(a: Series) -> Series:
    return a._like({k: -c for k, c in a._terms.items()}, a.trunc, a.exact)


def sub(a: Series, b: Series) -> Series:
    return add(a, neg(b))


def mul(a: Series, b: Series) -> Series:
    _check_mode(a, b)
    if a.is_zero() and a.exact or b.is_zero() and b.exact:
        return a._like({}, min(a.trunc, b.trunc), True)
    trunc = min(a.trunc + _eff_val(b), b.trunc + _eff_val(a))
    out: dict[int, Coefficient] = {}
    for i, x in a._terms.items():
        for j, y in b._terms.items():
            k = i + j
            out[k] = out[k] + x * y if k in out else x * y
    return a._like(out, trunc, a.exact and b.exact)


def truncate(a: Series, order: int) -> Series:
    """Forget every coefficient above ``order``."""
    if order >= a.trunc:
        return a
    return a._like(a._terms, order, a.exact)


def inv(a: Series) -> Series:
    """Multiplicative inverse, trusted up to ``a.trunc - 2*val(a)``.

    Writing ``a = c E^v (1 + h)`` the inverse is ``c^-1 E^-v sum (-h)^k``.
    """
    if a.is_zero():
        raise DivisionByZero("inverse of zero" if a.exact
                             else "inverse of a series with no trusted terms")
    v = a.valuation
    c = a._terms[v]
    # u = a / (c E^v) = 1 + h, known through relative order a.trunc - v
    depth = a.trunc - v
    u = {k - v: x / c for k, x in a._terms.items()}
    w = [a._one()]
    for n in range(1, depth + 1):
        acc = a._zero()
        for k in range(1, n + 1):
            uk = u.get(k)
            if uk is not None:
                acc = acc + uk * w[n - k]
        w.append(-acc)
    cinv = a._one() / c
    terms = {n - v: cinv * wn for n, wn in enumerate(w)}
    terminated = len(u) == 1
    return a._like(terms, a.trunc - 2 * v, a.exact and terminated)


def div(a: Series, b: Series) -> Series:
    _check_mode(a, b)
    return mul(a, inv(b))


def power(a: Series, k: int) -> Series:
    if k < 0:
        return power(inv(a), -k)
    result = a.constant(a._one())
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


# -- order and the relations ------------------------------------------------

def compare(a: Series, b: Series) -> Ordering:
    d = sub(a, b)
    if d.is_zero():
        if not d.exact:
            raise PrecisionExhausted(
                f"difference vanishes through E^{d.trunc}; cannot certify equality")
        return Ordering.EQUAL
    lead = d._terms[d.valuation]
    return Ordering.GREATER if lead > 0 else Ordering.LESS


def is_infinitesimal(a: Series) -> bool:
    if a.is_zero():
        if not a.exact and a.trunc < 0:
            raise PrecisionExhausted("no trusted coefficients at or below E^0")
        return True
    return a.valuation >= 1


def is_finite(a: Series) -> bool:
    if a.is_zero():
        if not a.exact and a.trunc < -1:
            raise PrecisionExhausted("no trusted coefficients below E^0")
        return True
    return a.valuation >= 0


def st(a: Series) -> Coefficient:
    """Standard part: the coefficient of ``E^0`` of a finite series."""
    if not is_finite(a):
        raise InfiniteValue(f"standard part of an infinite element (valuation {a.valuation})")
    if not a.exact and a.trunc < 0:
        raise PrecisionExhausted("E^0 coefficient is beyond the truncation order")
    return a._terms.get(0, a._zero())


def approx(a: Series, b: Series) -> bool:
    """``a`` and ``b`` are infinitely close."""
    return is_infinitesimal(sub(a, b))


def _certified_zero(a: Series) -> bool:
    if a.is_zero() and not a.exact:
        raise PrecisionExhausted("cannot tell zero from a quantity below the truncation order")
    return a.is_zero()


def adequal(a: Series, b: Series) -> bool:
    """``a/b`` is infinitely close to 1, or ``a = b = 0``."""
    _check_mode(a, b)
    za, zb = _certified_zero(a), _certified_zero(b)
    if za or zb:
        return za and zb
    return approx(div(a, b), a.constant(a._one()))


# -- analytic functions -----------------------------------------------------

def _split(a: Series) -> tuple[Coefficient, Series]:
    if not is_finite(a):
        raise InfiniteValue("cannot expand a function at an infinite argument")
    c = st(a)
    h = a._like({k: x for k, x in a._terms.items() if k >= 1}, a.trunc, a.exact)
    return c, h


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _taylor_coefficients(name: str, c, order: int, approx_mode: bool) -> list:
    """``f^(k)(c)/k!`` for ``k = 0..order``."""
    if name in ("sin", "cos"):
        if approx_mode:
            shift = 0 if name == "sin" else 1
            # sin^(k)(c) = sin(c + k*pi/2)
            cycle = [math.sin(c), math.cos(c), -math.sin(c), -math.cos(c)]
            return [cycle[(k + shift) % 4] / math.factorial(k) for k in range(order + 1)]
        if c != 0:
            raise ExactModeUnsupported(f"{name}({c}) is not rational; use approximate mode")
        cycle = [Fraction(0), Fraction(1), Fraction(0), Fraction(-1)]
        shift = 0 if name == "sin" else 1
        return [cycle[(k + shift) % 4] / math.factorial(k) for k in range(order + 1)]
    if name == "sqrt":
        if c <= 0:
            raise NegativeSqrtArgument(f"sqrt needs a positive standard part, got {c}")
        if approx_mode:
            root = math.sqrt(c)
            half = 0.5
        else:
            root = _exact_sqrt(c)
            if root is None:
                raise ExactModeUnsupported(f"sqrt({c}) is not rational; use approximate mode")
            half = Fraction(1, 2)
        out, binom = [], 1 if not approx_mode else 1.0
        for k in range(order + 1):
            out.append(binom * root / c ** k)
            binom = binom * (half - k) / (k + 1)
        return out
    raise ValueError(f"unknown function {name!r}")


def taylor_apply(name: str, a: Series) -> Series:
    """Apply ``sin``, ``cos`` or ``sqrt`` by Taylor expansion about ``st(a)``."""
    name = name.lower()
    if name == "sqrt" and a.is_zero() and a.exact:
        return a
    c, h = _split(a)
    order = max(a.trunc, 0)
    coeffs = _taylor_coefficients(name, c, order, a.is_approx)
    total = a.constant(coeffs[0])
    hk = a.constant(a._one())
    for k in range(1, order + 1):
        if h.is_zero():
            break
        hk = truncate(mul(hk, h), a.trunc)
        total = add(total, mul(hk, a.constant(coeffs[k])))
    terminated = h.is_zero() and h.exact
    return a._like(total._terms, a.trunc, a.exact and terminated)


# -- printing ---------------------------------------------------------------

def _fmt_coeff(c) -> str:
    if isinstance(c, float):
        return f"{c:.15g}"
    return str(c)


def format_series(a: Series, var: str = "E") -> str:
    """Render as ``c*E^k`` terms ascending in ``k``, plus ``O(E^(N+1))`` if inexact."""
    parts: list[str] = []
    for k, c in a._terms.items():
        negative = _is_negative(c)
        mag = -c if negative else c
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    if not a.exact:
        tail = f"O({var}^{a.trunc + 1})"
        parts.append(f"+ {tail}" if parts else tail)
    return " ".join(parts) if parts else "0"


def _is_negative(c) -> bool:
    try:
        return c < 0
    except TypeError:
        return False


def coefficient_map(a: Series, fn: Callable[[Coefficient], Coefficient]) -> Series:
    """Apply ``fn`` to every stored coefficient, keeping trunc and exactness."""
    return a._like({k: fn(c) for k, c in a._terms.items()}, a.trunc, a.exact)
