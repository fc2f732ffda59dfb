"""
Nilpotent approximation: coordinate change, weighted truncation and certificates
"""

from .certificates import (
    FirstOrderReport,
    NilpotentReport,
    hat_brackets,
    is_constant_field,
    verify_first_order,
    verify_nilpotent,
)
from .pipeline import Approximation, approximate
from .truncation import WeightedField, dilate, pullback, pushforward, weighted_truncate

__all__ = [
    "FirstOrderReport",
    "NilpotentReport",
    "hat_brackets",
    "is_constant_field",
    "verify_first_order",
    "verify_nilpotent",
    "Approximation",
    "approximate",
    "WeightedField",
    "dilate",
    "pullback",
    "pushforward",
    "weighted_truncate",
]
