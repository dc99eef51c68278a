"""Exact arithmetic for Fermat's method of adequality.

Subpackages:

* :mod:`adequality.numfield` -- truncated Laurent series in an infinitesimal ``E``
* :mod:`adequality.expr` -- expression parsing, printing and normal forms
* :mod:`adequality.fermat` -- the four solvers and their derivation traces
* :mod:`adequality.checker` -- step validation for derivations
* :mod:`adequality.cli` -- the ``adequality`` command
"""

from . import errors, numfield
from .checker import DerivationReport, StepVerdict, validate_derivation, validate_step
from .expr import parse, render
from .fermat import (Derivation, RelationKind, Rule, Step, maximize, parametric_tangent, refract,
                     subtangent)
from .numfield import Series, adequal, approx, epsilon, st

__version__ = "0.1.0"

__all__ = [
    "errors", "numfield", "DerivationReport", "StepVerdict", "validate_derivation", "validate_step",
    "parse", "render", "Derivation", "RelationKind", "Rule", "Step", "maximize", "parametric_tangent",
    "refract", "subtangent", "Series", "adequal", "approx", "epsilon", "st",
]
