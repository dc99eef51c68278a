"""Dense univariate polynomials over the rationals, and their fractions."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from ..errors import DivisionByZero


class Polynomial:
    """``coeffs[i]`` is the coefficient of ``var**i``; trailing zeros trimmed."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c, var: str = "x") -> Polynomial:
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> Polynomial:
        return cls([0] * k + [c], var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.degree <= 0 and self[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other], self.var)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return Polynomial([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1], self.var)
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.lead
        for i in range(len(rem) - 1, other.degree - 1, -1):
            q = rem[i] / lead
            if q:
                shift = i - other.degree
                quot[shift] = q
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] -= q * b
        return Polynomial(quot, self.var), Polynomial(rem, self.var)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return Polynomial([c / self.lead for c in self.coeffs], self.var)

    def content_free(self) -> Polynomial:
        """Scale to coprime integer coefficients with a positive leading one."""
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints)
        sign = 1 if ints[-1] > 0 else -1
        return Polynomial([Fraction(n, g * sign) for n in ints], self.var)

    def rational_roots(self) -> list[Fraction]:
        """All distinct rational roots, ascending, by the rational root test."""
        if self.is_zero():
            raise ValueError("every number is a root of the zero polynomial")
        ints = [int(c) for c in self.content_free().coeffs]
        roots: set[Fraction] = set()
        low = 0
        while low < len(ints) and ints[low] == 0:
            low += 1
        if low:
            roots.add(Fraction(0))
        ints = ints[low:]
        if len(ints) == 2:
            roots.add(Fraction(-ints[0], ints[1]))
        elif len(ints) > 2:
            poly = Polynomial(ints, self.var)
            for p in _divisors(abs(ints[0])):
                for q in _divisors(abs(ints[-1])):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if cand not in roots and poly(cand) == 0:
                            roots.add(cand)
        return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RationalFunction:
    """``num/den`` in lowest terms with a monic denominator.

    Mixes with ints and Fractions, so it can serve as a coefficient of a
    :class:`~adequality.numfield.Series`.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Sequence, den: Polynomial | Sequence = (1,), var: str = "t"):
        if not isinstance(num, Polynomial):
            num = Polynomial(num, var)
        if not isinstance(den, Polynomial):
            den = Polynomial(den, num.var)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = num, Polynomial([1], num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            lead = den.lead
            num = Polynomial([c / lead for c in num.coeffs], num.var)
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def var(self) -> str:
        return self.num.var

    def _lift(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial([other], self.var))
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return o if o is NotImplemented else o / self

    def __call__(self, x):
        return self.num(x) / self.den(x)
