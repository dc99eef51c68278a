"""Fermat's adequality procedures, each returning its answer with a derivation trace."""

from .extremum import ExtremumResult, maximize
from .refraction import RefractionResult, refract
from .tangent import SlopeResult, TangentResult, parametric_tangent, subtangent
from .trace import NONZERO_E, ZERO_E, Derivation, RelationKind, Rule, Step

__all__ = [
    "ExtremumResult", "maximize", "RefractionResult", "refract", "SlopeResult", "TangentResult",
    "parametric_tangent", "subtangent", "NONZERO_E", "ZERO_E", "Derivation", "RelationKind", "Rule",
    "Step",
]
