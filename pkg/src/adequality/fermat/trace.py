"""Derivation traces: ordered relation steps, each tagged with the rule that produced it."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from ..errors import MalformedStep
from ..expr import Const, Expr, MPoly, render

NONZERO_E = "E != 0"
ZERO_E = "E = 0"


class RelationKind(enum.Enum):
    EQUALITY = "="
    ADEQUALITY = "adq"
    APPROX = "approx"


class Rule(enum.Enum):
    SUBSTITUTE = "Substitute"
    CANCEL_COMMON = "CancelCommon"
    GROUP_BY_SIGN = "GroupBySign"
    DIVIDE_BY_E = "DivideByE"
    DISCARD_E = "DiscardE"
    ALGEBRA = "Algebra"
    SOLVE = "Solve"


def normalize_side_condition(text: str) -> str:
    compact = "".join(text.split()).replace("≠", "!=")
    if compact in ("E!=0", "E<>0"):
        return NONZERO_E
    if compact in ("E=0", "E==0"):
        return ZERO_E
    raise MalformedStep(f"unrecognised side-condition {text!r}")


@dataclass(frozen=True)
class Step:
    lhs: Expr
    rhs: Expr
    kind: RelationKind
    rule: Rule
    note: str = ""
    side_conditions: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.lhs, Expr) or not isinstance(self.rhs, Expr):
            raise MalformedStep("step sides must be expressions")
        if self.rule is Rule.DISCARD_E and self.kind is not RelationKind.EQUALITY:
            raise MalformedStep("DiscardE always concludes an equality")
        object.__setattr__(self, "side_conditions",
                           tuple(normalize_side_condition(s) for s in self.side_conditions))

    def __str__(self):
        return f"{render(self.lhs)} {self.kind.value} {render(self.rhs)}"


@dataclass(frozen=True)
class Derivation:
    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise MalformedStep("a derivation needs at least one step")

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    @property
    def kinds(self) -> list[RelationKind]:
        return [s.kind for s in self.steps]

    @property
    def side_conditions(self) -> set[str]:
        return {c for s in self.steps for c in s.side_conditions}


def poly_expr(p: MPoly, order: Sequence[str] = (), key=None) -> Expr:
    return p.to_expr(order, key) if not p.is_zero() else Const(Fraction(0))


def rationalize(x, max_den: int = 10**12) -> Fraction:
    """Exact Fractions pass through; floats become nearby rationals for display."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x).limit_denominator(max_den)


@dataclass
class _Builder:
    steps: list[Step] = field(default_factory=list)

    def add(self, lhs, rhs, kind, rule, note="", side_conditions=()):
        self.steps.append(Step(lhs, rhs, kind, rule, note, tuple(side_conditions)))

    def build(self) -> Derivation:
        return Derivation(tuple(self.steps))
