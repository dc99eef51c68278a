"""Step-by-step validation of derivations.

Each step is judged against the one before it using exact polynomial
identities (opaque atoms for ``sin``, ``sqrt`` and non-monomial division).
The two moves special to infinitesimals are

* dividing by a power of ``E``: sound for adequality, unsound for ``≈``,
  and sound for equality only if ``E != 0`` is recorded;
* dropping what is left of ``E``: the standard part, sound when both sides
  are finite, or setting ``E = 0`` under equality if that is recorded.

Side-conditions are checked globally: a derivation that assumes both
``E != 0`` and ``E = 0`` is rejected even when every local move looks fine.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Mapping

from . import numfield
from .errors import DivisionByZero, MalformedStep
from .expr import EPSILON, MPoly, Var, parse, to_mpoly
from .fermat.trace import NONZERO_E, ZERO_E, Derivation, RelationKind, Rule, Step

EQ, ADQ, APPROX = RelationKind.EQUALITY, RelationKind.ADEQUALITY, RelationKind.APPROX

INCONSISTENT_E = "inconsistent use of E"

_PATTERN = re.compile(r"Q*A+Q")
_LETTER = {EQ: "Q", ADQ: "A", APPROX: "X"}


class Status(enum.Enum):
    VALID = "Valid"
    INVALID = "Invalid"
    UNDECIDABLE = "Undecidable"


@dataclass(frozen=True)
class StepVerdict:
    status: Status
    reason: str = ""
    counterexample: Mapping[str, numfield.Series] | None = None

    def __post_init__(self):
        if self.status is not Status.VALID and not self.reason:
            raise ValueError("a negative verdict needs a reason")

    @classmethod
    def valid(cls, reason: str = "") -> StepVerdict:
        return cls(Status.VALID, reason)

    @classmethod
    def invalid(cls, reason: str, counterexample=None) -> StepVerdict:
        return cls(Status.INVALID, reason, counterexample)

    @classmethod
    def undecidable(cls, reason: str) -> StepVerdict:
        return cls(Status.UNDECIDABLE, reason)

    @property
    def is_valid(self) -> bool:
        return self.status is Status.VALID

    def __str__(self):
        return self.status.value + (f": {self.reason}" if self.reason else "")


@dataclass(frozen=True)
class DerivationReport:
    verdicts: list[StepVerdict]
    pattern: bool
    consistent: bool
    reason: str = ""
    side_conditions: frozenset[str] = field(default_factory=frozenset)

    @property
    def all_valid(self) -> bool:
        return self.consistent and all(v.is_valid for v in self.verdicts)

    @property
    def ok(self) -> bool:
        return self.all_valid and self.pattern


def approx_counterexample(trunc: int = numfield.DEFAULT_TRUNC) -> dict[str, numfield.Series]:
    """``E ≈ 2E`` holds, yet after dividing by ``E`` the sides are 1 and 2."""
    eps = numfield.epsilon(trunc)
    return {"lhs": eps, "rhs": numfield.mul(eps.constant(2), eps)}


# polynomial helpers

def _diff(step: Step) -> MPoly:
    return to_mpoly(step.lhs) - to_mpoly(step.rhs)


def _is_identity(step: Step) -> bool:
    return _diff(step).is_zero()


def _proportional(p: MPoly, q: MPoly) -> bool:
    """``p == c*q`` for some nonzero rational ``c``."""
    if q.is_zero() or p.is_zero():
        return p.is_zero() and q.is_zero()
    mono, qc = next(iter(q.terms.items()))
    pc = p.terms.get(mono)
    return pc is not None and p == q * (pc / qc)


def _has_e_atom(p: MPoly) -> bool:
    return any(v.startswith("@") and re.search(rf"\b{EPSILON}\b", v) for v in p.variables())


def _at_zero(p: MPoly) -> MPoly:
    return p.coefficients_in(EPSILON).get(0, MPoly())


def _same_sides(before: Step, after: Step) -> bool:
    bl, br = to_mpoly(before.lhs), to_mpoly(before.rhs)
    al, ar = to_mpoly(after.lhs), to_mpoly(after.rhs)
    return (al == bl and ar == br) or (al == br and ar == bl)


# rules

def _premise(step: Step) -> StepVerdict:
    if step.rule in (Rule.DIVIDE_BY_E, Rule.DISCARD_E, Rule.SOLVE):
        return StepVerdict.invalid(f"{step.rule.value} needs a preceding step")
    return StepVerdict.valid("premise")


def _algebra(before: Step, after: Step) -> StepVerdict:
    if after.kind is EQ:
        if _is_identity(after):
            return StepVerdict.valid("identity")
        if before.kind is EQ and _proportional(_diff(after), _diff(before)):
            return StepVerdict.valid("difference preserved")
        if before.kind is EQ and _is_identity(before) and (
                _proportional(_diff(after), to_mpoly(before.rhs))
                or _proportional(_diff(after), to_mpoly(before.lhs))):
            return StepVerdict.valid("difference preserved")
        return StepVerdict.invalid("not a consequence of the previous equality")
    if before.kind is not after.kind:
        return StepVerdict.invalid(f"algebra cannot turn {before.kind.value!r} into {after.kind.value!r}")
    if _same_sides(before, after):
        return StepVerdict.valid("sides rewritten identically")
    return StepVerdict.invalid(f"under {after.kind.value!r} only identical rewriting of each side is allowed")


def _group_by_sign(before: Step, after: Step) -> StepVerdict:
    if before.kind is EQ and after.kind in (EQ, ADQ):
        d = _diff(after)
        if _proportional(d, _diff(before)):
            return StepVerdict.valid("terms moved across")
        if _is_identity(before) and (_proportional(d, to_mpoly(before.rhs))
                                     or _proportional(d, to_mpoly(before.lhs))):
            return StepVerdict.valid("terms moved across")
        return StepVerdict.invalid("regrouping changed the difference of the sides")
    return _algebra(before, after)


def _divide_by_e(before: Step, after: Step) -> StepVerdict:
    if before.kind is not after.kind:
        return StepVerdict.invalid("dividing by E cannot change the relation")
    bl, br = to_mpoly(before.lhs), to_mpoly(before.rhs)
    al, ar = to_mpoly(after.lhs), to_mpoly(after.rhs)
    ref_b, ref_a = (bl, al) if not bl.is_zero() else (br, ar)
    if ref_b.is_zero() or ref_a.is_zero():
        return StepVerdict.invalid("cannot divide an adequality with a zero side")
    k = ref_b.min_degree_in(EPSILON) - ref_a.min_degree_in(EPSILON)
    if k < 1 or al.shift(EPSILON, k) != bl or ar.shift(EPSILON, k) != br:
        return StepVerdict.invalid("the sides are not the previous sides divided by a power of E")
    if after.kind is ADQ:
        return StepVerdict.valid("adequality is invariant under division by E")
    if after.kind is APPROX:
        return StepVerdict.invalid("≈ is not invariant under division: E ≈ 2E but 1 is not ≈ 2",
                                   approx_counterexample())
    if NONZERO_E in after.side_conditions:
        return StepVerdict.valid("cancellation of E, assuming E != 0")
    return StepVerdict.invalid("division by E in an equality needs the side-condition E != 0")


def _discard_e(before: Step, after: Step) -> StepVerdict:
    if after.kind is not EQ:
        return StepVerdict.invalid("DiscardE concludes an equality")
    bl, br = to_mpoly(before.lhs), to_mpoly(before.rhs)
    if _has_e_atom(bl) or _has_e_atom(br):
        return StepVerdict.undecidable("E occurs inside a function or a denominator")
    if bl.min_degree_in(EPSILON) < 0 or br.min_degree_in(EPSILON) < 0:
        return StepVerdict.invalid("a side is not finite (negative power of E)")
    if to_mpoly(after.lhs) != _at_zero(bl) or to_mpoly(after.rhs) != _at_zero(br):
        return StepVerdict.invalid("the sides are not the standard parts of the previous sides")
    if before.kind in (ADQ, APPROX):
        return StepVerdict.valid("standard part of finite sides")
    if ZERO_E in after.side_conditions:
        return StepVerdict.valid("E set to 0")
    return StepVerdict.invalid("setting E to 0 in an equality needs the side-condition E = 0")


def _solve(before: Step, after: Step) -> StepVerdict:
    if before.kind is not EQ or after.kind is not EQ:
        return StepVerdict.invalid("Solve works on equalities")
    if not isinstance(after.lhs, Var):
        return StepVerdict.invalid("Solve concludes 'name = value'")
    value = to_mpoly(after.rhs)
    if not value.is_constant():
        return StepVerdict.invalid("the solved value must be a number")
    try:
        rest = _diff(before).substitute({after.lhs.name: value.constant_term()})
    except DivisionByZero:
        return StepVerdict.invalid("the value makes a denominator vanish")
    if rest.is_zero():
        return StepVerdict.valid("root checked")
    return StepVerdict.invalid(f"{after.lhs.name} = {value.constant_term()} does not satisfy the equation")


_RULES = {
    Rule.SUBSTITUTE: _algebra,
    Rule.CANCEL_COMMON: _algebra,
    Rule.ALGEBRA: _algebra,
    Rule.GROUP_BY_SIGN: _group_by_sign,
    Rule.DIVIDE_BY_E: _divide_by_e,
    Rule.DISCARD_E: _discard_e,
    Rule.SOLVE: _solve,
}


def validate_step(before: Step | None, after: Step) -> StepVerdict:
    """Judge ``after`` as a consequence of ``before`` (``None`` for a premise)."""
    if not isinstance(after, Step) or (before is not None and not isinstance(before, Step)):
        raise MalformedStep("validate_step takes Step objects")
    if before is None:
        return _premise(after)
    return _RULES[after.rule](before, after)


def pattern_holds(kinds: list[RelationKind]) -> bool:
    """Equalities, then a block of adequalities, then one concluding equality."""
    return _PATTERN.fullmatch("".join(_LETTER[k] for k in kinds)) is not None


def validate_derivation(d: Derivation) -> DerivationReport:
    verdicts = []
    before = None
    for step in d:
        verdicts.append(validate_step(before, step))
        before = step
    conditions = frozenset(d.side_conditions)
    consistent = not {NONZERO_E, ZERO_E} <= conditions
    pattern = pattern_holds(d.kinds)
    if not consistent:
        reason = INCONSISTENT_E
    elif any(not v.is_valid for v in verdicts):
        i = next(i for i, v in enumerate(verdicts) if not v.is_valid)
        reason = f"step {i + 1}: {verdicts[i]}"
    elif not pattern:
        reason = "no adequality block followed by a single equality"
    else:
        reason = ""
    return DerivationReport(verdicts, pattern, consistent, reason, conditions)


def breger_transcription() -> Derivation:
    """The max/min example redone with equalities throughout.

    Terms are moved to one side, ``E`` is cancelled as if nonzero and then
    set to zero.
    """
    rows = [
        ("B*A - A^2", "B*(A + E) - (A + E)^2", Rule.SUBSTITUTE, ()),
        ("2*A*E + E^2 - B*E", "0", Rule.ALGEBRA, ()),
        ("E*(2*A + E - B)", "0", Rule.ALGEBRA, ()),
        ("2*A + E - B", "0", Rule.DIVIDE_BY_E, (NONZERO_E,)),
        ("2*A - B", "0", Rule.DISCARD_E, (ZERO_E,)),
    ]
    return Derivation(tuple(Step(parse(l), parse(r), EQ, rule, "", sc) for l, r, rule, sc in rows))


__all__ = [
    "INCONSISTENT_E", "DerivationReport", "Status", "StepVerdict", "approx_counterexample",
    "breger_transcription", "pattern_holds", "validate_derivation", "validate_step",
]
