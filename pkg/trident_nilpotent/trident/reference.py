"""
Printed reference values for the transformed trident model at p = 0

These are the values as they appear in the published derivation. Several of
them are inconsistent with the transformed fields (the bracket values, the
6x6 transform, the x-coordinate hat fields), so they are only compared and
reported, never used as ground truth.
"""

import math
from typing import Dict, Tuple

import numpy as np

from ..vfield.field import VectorField

_R3 = math.sqrt(3.0)

# [g1,g2], [g2,g3], [g1,g3] at 0
PRINTED_BRACKETS: Dict[Tuple[int, int], Tuple[float, ...]] = {
    (1, 2): (0.0, 0.0, 0.0, 1.0, 1.0, 1.0),
    (2, 3): (0.0, 0.0, 0.0, 0.0, _R3, -_R3),
    (1, 3): (0.0, 0.0, 0.0, 2.0, -1.0, -1.0),
}

PRINTED_TRANSFORM = np.array([
    [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
    [_R3 / 2, 0.5, -2.0, 1.0, -1.0, _R3],
    [0.0, -1.0, -2.0, 1.0, 2.0, 0.0],
    [-_R3 / 2, 0.5, -2.0, 1.0, -1.0, -_R3],
])

PRINTED_HATS_Y: Tuple[str, str, str] = (
    "d/dy1 - y2/2*d/dy4 + (-y2/2 - y3)*d/dy5 - y1/2*d/dy6",
    "d/dy2 + y1/2*d/dy4 - y1/2*d/dy5 + (y2/2 - y3)*d/dy6",
    "d/dy3",
)

PRINTED_HATS_X: Tuple[str, ...] = (
    "d/dx1 - (x2 + x3)*d/dx4 - (sqrt(3)*x1/4 + x2/4 - x3/2 - sqrt(3)/2)*d/dx5"
    " + (sqrt(3)*x1/2 - x2/4 + x3/2 - sqrt(3)/2)*d/dx6",
    "d/dx2 - d/dx4 + (3*x1/4 + sqrt(3)*x2/4 - sqrt(3)*x3/2 + 1/2)*d/dx5"
    " + (3*x1/4 - sqrt(3)*x2/4 + sqrt(3)*x3/2 + 1/2)*d/dx6",
    "d/dx3 - 2*d/dx4 - 2*d/dx5 - 2*d/dx6",
    "d/dx4 + d/dx5 + d/dx6",
    "-sqrt(3)/2*d/dx5 + sqrt(3)/2*d/dx6",
    "-d/dx3 + 1/2*d/dx5 + 1/2*d/dx6",
)


def printed_hats_y() -> Tuple[VectorField, ...]:
    return tuple(VectorField.from_dsl(s, "y", f"h{i}") for i, s in enumerate(PRINTED_HATS_Y, start=1))


def printed_hats_x() -> Tuple[VectorField, ...]:
    return tuple(VectorField.from_dsl(s, "x", f"h{i}") for i, s in enumerate(PRINTED_HATS_X, start=1))


def bracket_discrepancy(computed: Dict[Tuple[int, int], np.ndarray]) -> Dict[str, Dict]:
    """Computed vs printed bracket values at 0, keyed ``"i,j"``."""
    ledger = {}
    for pair, printed in PRINTED_BRACKETS.items():
        value = np.asarray(computed[pair], dtype=float)
        ledger[f"{pair[0]},{pair[1]}"] = {
            "computed": value.tolist(),
            "printed": list(printed),
            "max_abs_diff": float(np.max(np.abs(value - np.asarray(printed)))),
        }
    return ledger
