"""Expression tree nodes.

Nodes are frozen dataclasses, so structural equality and hashing come for
free and trees can be shared freely.  Python operators build trees, which
keeps test code and the solvers readable::

    A, B, E = Var("A"), Var("B"), Var("E")
    B * (A + E) - (A + E) ** 2
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

FUNCTIONS = ("sin", "cos", "sqrt")
EPSILON = "E"


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, lift(other))

    def __radd__(self, other):
        return Add(lift(other), self)

    def __sub__(self, other):
        return Sub(self, lift(other))

    def __rsub__(self, other):
        return Sub(lift(other), self)

    def __mul__(self, other):
        return Mul(self, lift(other))

    def __rmul__(self, other):
        return Mul(lift(other), self)

    def __truediv__(self, other):
        return Div(self, lift(other))

    def __rtruediv__(self, other):
        return Div(lift(other), self)

    def __pow__(self, k: int):
        return Pow(self, k)

    def __neg__(self):
        return Neg(self)

    def __str__(self):
        from .render import render
        return render(self)

    def children(self) -> tuple[Expr, ...]:
        return ()

    def walk(self) -> Iterator[Expr]:
        yield self
        for child in self.children():
            yield from child.walk()


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        if type(self.value) is not Fraction:
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, eq=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


class Add(_Binary):
    pass


class Sub(_Binary):
    pass


class Mul(_Binary):
    pass


class Div(_Binary):
    pass


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int):
            raise TypeError("Pow exponent must be an int")

    def children(self):
        return (self.base,)


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, eq=True)
class Func(Expr):
    name: str
    arg: Expr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")

    def children(self):
        return (self.arg,)


def lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, str):
        return Var(x)
    return Const(Fraction(x))


def free_vars(e: Expr) -> set[str]:
    return {node.name for node in e.walk() if isinstance(node, Var)}


def has_func(e: Expr) -> bool:
    return any(isinstance(node, Func) for node in e.walk())


def substitute(e: Expr, mapping: dict[str, Expr]) -> Expr:
    """Replace variables by expressions (values are lifted with :func:`lift`)."""
    mapping = {k: lift(v) for k, v in mapping.items()}

    def go(node: Expr) -> Expr:
        if isinstance(node, Var):
            return mapping.get(node.name, node)
        if isinstance(node, Const):
            return node
        if isinstance(node, _Binary):
            return type(node)(go(node.left), go(node.right))
        if isinstance(node, Pow):
            return Pow(go(node.base), node.exponent)
        if isinstance(node, Neg):
            return Neg(go(node.arg))
        if isinstance(node, Func):
            return Func(node.name, go(node.arg))
        raise TypeError(node)

    return go(e)
