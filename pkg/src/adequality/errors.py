"""Exception hierarchy.

Errors split into two families so the command line can map them onto exit
codes: ``InputError`` (bad text, bad files, bad arguments) and ``MathError``
(the input is well formed but the mathematics refuses).
"""

from __future__ import annotations


class AdequalityError(Exception):
    """Base class for every error raised by this package."""


class InputError(AdequalityError):
    pass


class MathError(AdequalityError):
    pass


# numfield

class InvalidPrecision(InputError, ValueError):
    pass


class ModeMismatch(MathError, TypeError):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class PrecisionExhausted(MathError):
    """Raised when a decision needs coefficients that truncation threw away."""


class InfiniteValue(MathError):
    pass


class ExactModeUnsupported(MathError):
    pass


class NegativeSqrtArgument(MathError, ValueError):
    pass


# expr

class ParseError(InputError, ValueError):
    """Syntax error in an expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownFunction(ParseError):
    pass


class UnboundVariable(MathError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class NotPolynomial(MathError, ValueError):
    pass


# fermat

class DegenerateConstant(MathError):
    pass


class PointNotOnCurve(MathError):
    pass


class VerticalTangent(MathError):
    pass


class SingularPoint(MathError):
    pass


class ZeroOrdinate(MathError):
    pass


class StationaryPoint(PrecisionExhausted):
    pass


class InvalidGeometry(MathError, ValueError):
    pass


class ToleranceNotReached(MathError):
    pass


# checker

class MalformedStep(InputError, ValueError):
    pass
