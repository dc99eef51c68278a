"""Expression language: parsing, printing, evaluation and normal forms."""

from .ast import (
    EPSILON,
    FUNCTIONS,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    free_vars,
    lift,
    substitute,
)
from .derivative import symbolic_derivative
from .evaluate import (
    check_polynomial,
    eval_float,
    eval_rational,
    eval_series,
    make_binding,
    rf_series_eval,
    to_polynomial,
)
from .mpoly import MPoly, is_identity, to_mpoly
from .parser import parse, tokenize
from .poly import Polynomial, RationalFunction, poly_gcd
from .render import render, render_juxtaposed

__all__ = [
    "EPSILON", "FUNCTIONS", "Add", "Const", "Div", "Expr", "Func", "Mul", "Neg", "Pow", "Sub",
    "Var", "free_vars", "lift", "substitute", "symbolic_derivative", "check_polynomial",
    "eval_float", "eval_rational", "eval_series", "make_binding", "rf_series_eval", "to_polynomial", "MPoly",
    "is_identity", "to_mpoly", "parse", "tokenize", "Polynomial", "RationalFunction", "poly_gcd",
    "render", "render_juxtaposed",
]
