"""
Symbolic scalar expressions: DSL parsing, evaluation, differentiation,
Taylor polynomials and zero testing
"""

from .expression import (
    Constant,
    Cos,
    Expression,
    Negation,
    Product,
    Sin,
    Sum,
    Variable,
    differentiate,
    evaluate,
    lambdify,
    substitute,
)
from .parser import parse, parse_components
from .polynomial import Polynomial, is_zero, taylor, total_degree, weighted_degree
from .printer import field_to_dsl, to_dsl

__all__ = [
    "Constant",
    "Cos",
    "Expression",
    "Negation",
    "Product",
    "Sin",
    "Sum",
    "Variable",
    "differentiate",
    "evaluate",
    "lambdify",
    "substitute",
    "parse",
    "parse_components",
    "Polynomial",
    "is_zero",
    "taylor",
    "total_degree",
    "weighted_degree",
    "field_to_dsl",
    "to_dsl",
]
