"""Sparse multivariate Laurent polynomials over the rationals.

Used to decide polynomial identities between expression trees and to carry
the symbolic side of the solvers' traces.  Subterms that are not Laurent
polynomials (``sin(...)``, division by a non-monomial) become opaque atoms
named by the canonical form of their argument, so identity checking is sound
but deliberately incomplete: ``sin(x)^2 + cos(x)^2 - 1`` is not recognised
as zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import DivisionByZero
from .ast import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Var

Monomial = tuple  # sorted tuple of (variable, nonzero exponent)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, k in b:
        exps[v] = exps.get(v, 0) + k
    return tuple(sorted((v, k) for v, k in exps.items() if k))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, (dict, Mapping)) else terms
        clean: dict[Monomial, Fraction] = {}
        for mono, c in items:
            mono = tuple(sorted((v, k) for v, k in mono if k))
            if not isinstance(c, Fraction):
                c = Fraction(c)
            clean[mono] = clean[mono] + c if mono in clean else c
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})

    @classmethod
    def _trusted(cls, terms: dict[Monomial, Fraction]) -> MPoly:
        # terms already normalised apart from possible zero coefficients
        out = object.__new__(cls)
        object.__setattr__(out, "terms", {m: c for m, c in terms.items() if c})
        return out

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def const(cls, c) -> MPoly:
        return cls._trusted({(): c if isinstance(c, Fraction) else Fraction(c)})

    @classmethod
    def var(cls, name: str, k: int = 1) -> MPoly:
        return cls._trusted({((name, k),): Fraction(1)} if k else {(): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, v: str) -> int:
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def min_degree_in(self, v: str) -> int:
        return min((dict(m).get(v, 0) for m in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): other} if other else {})
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"MPoly({self.canonical()})"

    def canonical(self) -> str:
        """Deterministic text form, used to name atoms."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=repr):
            c = self.terms[mono]
            factors = "*".join(v if k == 1 else f"{v}^{k}" for v, k in mono)
            parts.append(f"{c}" + (f"*{factors}" if factors else ""))
        return " + ".join(parts)

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._trusted({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2) if m1 and m2 else m1 or m2
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return MPoly._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (mono, c), = self.terms.items()
            return MPoly({tuple((v, e * k) for v, e in mono): c ** k})
        if k == 0:
            return MPoly.const(1)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def shift(self, v: str, k: int) -> MPoly:
        """Multiply by ``v**k``."""
        factor = ((v, k),)
        return MPoly._trusted({_mono_mul(m, factor): c for m, c in self.terms.items()})

    def coefficients_in(self, v: str) -> dict[int, MPoly]:
        """Group by the power of ``v``: ``{k: coefficient polynomial}``."""
        out: dict[int, dict] = {}
        for mono, c in self.terms.items():
            k = dict(mono).get(v, 0)
            rest = tuple((w, e) for w, e in mono if w != v)
            out.setdefault(k, {})[rest] = c
        # removing one variable keeps the rest sorted and distinct within a group
        return {k: MPoly._trusted(t) for k, t in sorted(out.items())}

    def substitute(self, values: Mapping[str, Fraction]) -> MPoly:
        if not values:
            return self
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            rest = []
            for v, k in mono:
                if v in values:
                    x = Fraction(values[v])
                    if x == 0 and k < 0:
                        raise DivisionByZero(f"{v} = 0 in a negative power")
                    coeff *= x ** k
                else:
                    rest.append((v, k))
            rest = tuple(rest)
            out[rest] = out[rest] + coeff if rest in out else coeff
        return MPoly._trusted(out)

    def split_by_sign(self) -> tuple[MPoly, MPoly]:
        """``(P, N)`` with positive coefficients only and ``self == P - N``."""
        pos = {m: c for m, c in self.terms.items() if c > 0}
        negs = {m: -c for m, c in self.terms.items() if c < 0}
        return MPoly(pos), MPoly(negs)

    def to_expr(self, order: Sequence[str] = (),
                key: Callable[[Monomial], object] | None = None) -> Expr:
        """Build a sum of monomials.

        ``order`` fixes the order of variables inside each monomial (others
        follow alphabetically); ``key`` sorts the monomials.
        """
        rank = {v: i for i, v in enumerate(order)}

        def var_rank(item):
            v = item[0]
            return (rank.get(v, len(rank)), v)

        if key is None:
            def key(mono):
                return (sum(abs(k) for _, k in mono), [var_rank(x) for x in mono])

        if not self.terms:
            return Const(0)
        result: Expr | None = None
        for mono in sorted(self.terms, key=key):
            c = self.terms[mono]
            negative = c < 0 and result is not None
            mag = -c if negative else c
            factors: list[Expr] = []
            for v, k in (mono if len(mono) < 2 else sorted(mono, key=var_rank)):
                base = Var(v)
                factors.append(base if k == 1 else Pow(base, k))
            if not factors:
                term: Expr = Const(mag)
            else:
                if mag not in (1, -1):
                    factors.insert(0, Const(mag))
                term = factors[0]
                for f in factors[1:]:
                    term = Mul(term, f)
                if mag == -1:
                    term = Neg(term)
            if result is None:
                result = term
            elif negative:
                result = Sub(result, term)
            else:
                result = Add(result, term)
        return result


def to_mpoly(e: Expr) -> MPoly:
    """Expand an expression; non-polynomial pieces become opaque atoms."""
    if isinstance(e, Const):
        return MPoly.const(e.value)
    if isinstance(e, Var):
        return MPoly.var(e.name)
    if isinstance(e, Add):
        return to_mpoly(e.left) + to_mpoly(e.right)
    if isinstance(e, Sub):
        return to_mpoly(e.left) - to_mpoly(e.right)
    if isinstance(e, Mul):
        return to_mpoly(e.left) * to_mpoly(e.right)
    if isinstance(e, Neg):
        return -to_mpoly(e.arg)
    if isinstance(e, Pow):
        base = to_mpoly(e.base)
        if e.exponent >= 0:
            return base ** e.exponent
        return _reciprocal(base) ** (-e.exponent)
    if isinstance(e, Div):
        return to_mpoly(e.left) * _reciprocal(to_mpoly(e.right))
    if isinstance(e, Func):
        return MPoly.var(f"@{e.name}({to_mpoly(e.arg).canonical()})")
    raise TypeError(f"cannot expand {e!r}")


def _reciprocal(p: MPoly) -> MPoly:
    if p.is_zero():
        raise DivisionByZero("division by an expression that expands to 0")
    if p.is_monomial():
        return p ** -1
    return MPoly.var(f"@inv({p.canonical()})")


def is_identity(lhs: Expr, rhs: Expr) -> bool:
    """``lhs - rhs`` expands to zero."""
    return (to_mpoly(lhs) - to_mpoly(rhs)).is_zero()


def has_atoms(p: MPoly) -> bool:
    return any(v.startswith("@") for v in p.variables())
