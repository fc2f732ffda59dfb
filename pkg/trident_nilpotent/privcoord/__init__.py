"""
Privileged coordinates: adapted frame, linear transform and order checks
"""

from .frame import (
    DEFAULT_BRACKET_ORDER,
    FrameMatrix,
    FrameRole,
    PrivilegedReport,
    DegeneratePoint,
    adapted_frame,
    coordinate_functions,
    identity_residual,
    privileged_transform,
    scan_degenerate,
    verify_privileged,
)
from .linalg import block_lower_inverse, gauss_jordan_inverse

__all__ = [
    "DEFAULT_BRACKET_ORDER",
    "FrameMatrix",
    "FrameRole",
    "PrivilegedReport",
    "DegeneratePoint",
    "adapted_frame",
    "coordinate_functions",
    "identity_residual",
    "privileged_transform",
    "scan_degenerate",
    "verify_privileged",
    "block_lower_inverse",
    "gauss_jordan_inverse",
]
