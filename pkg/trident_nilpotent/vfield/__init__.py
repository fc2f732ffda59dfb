"""
Vector fields, Lie brackets, growth vectors, weights and nonholonomic orders
"""

from .field import VectorField, combine, fd_bracket, lie_bracket, load_fields, values_matrix
from .flag import ORDER_UNBOUNDED, Flag, bracket_levels, function_order, growth_vector, numeric_rank, weights

__all__ = [
    "VectorField",
    "combine",
    "fd_bracket",
    "lie_bracket",
    "load_fields",
    "values_matrix",
    "ORDER_UNBOUNDED",
    "Flag",
    "bracket_levels",
    "function_order",
    "growth_vector",
    "numeric_rank",
    "weights",
]
