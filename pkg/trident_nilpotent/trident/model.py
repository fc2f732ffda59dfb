"""
Control fields of the trident snake in both parametrizations

Coordinates (x1, ..., x6) = (x, y, theta, phi1, phi2, phi3), link lengths r = l = 1.
"""

from enum import Enum
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..vfield.field import VectorField

# World-frame root velocity, leg offsets 0, 2pi/3, 4pi/3.
ORIGINAL_DSL: Tuple[str, str, str] = (
    "cos(x3)*d/dx1 + sin(x3)*d/dx2 + sin(x4)*d/dx4 + sin(x5 + 2*pi/3)*d/dx5 + sin(x6 + 4*pi/3)*d/dx6",
    "-sin(x3)*d/dx1 + cos(x3)*d/dx2 - cos(x4)*d/dx4 - cos(x5 + 2*pi/3)*d/dx5 - cos(x6 + 4*pi/3)*d/dx6",
    "d/dx3 - (1 + cos(x4))*d/dx4 - (1 + cos(x5))*d/dx5 - (1 + cos(x6))*d/dx6",
)

# Body-frame root velocity v with w' = R_theta v, leg offsets -2pi/3, 0, 2pi/3.
TRANSFORMED_DSL: Tuple[str, str, str] = (
    "d/dx1 + sin(x4 - 2*pi/3)*d/dx4 + sin(x5)*d/dx5 + sin(x6 + 2*pi/3)*d/dx6",
    "d/dx2 - cos(x4 - 2*pi/3)*d/dx4 - cos(x5)*d/dx5 - cos(x6 + 2*pi/3)*d/dx6",
    "d/dx3 - (1 + cos(x4))*d/dx4 - (1 + cos(x5))*d/dx5 - (1 + cos(x6))*d/dx6",
)


class Parametrization(Enum):
    """Field family; fixes the leg offsets and the frame of the root velocity"""
    ORIGINAL = "original"
    TRANSFORMED = "transformed"

    @property
    def leg_offsets(self) -> Tuple[float, float, float]:
        if self is Parametrization.ORIGINAL:
            return (0.0, 2 * np.pi / 3, 4 * np.pi / 3)
        return (-2 * np.pi / 3, 0.0, 2 * np.pi / 3)

    @property
    def body_frame_velocity(self) -> bool:
        return self is Parametrization.TRANSFORMED

    @property
    def dsl(self) -> Tuple[str, str, str]:
        return ORIGINAL_DSL if self is Parametrization.ORIGINAL else TRANSFORMED_DSL


def _parse_family(sources: Tuple[str, str, str]) -> Tuple[VectorField, VectorField, VectorField]:
    return tuple(VectorField.from_dsl(s, "x", f"g{i}") for i, s in enumerate(sources, start=1))


@lru_cache(maxsize=None)
def fields_original() -> Tuple[VectorField, VectorField, VectorField]:
    """(g1, g2, g3) in generalized coordinates, offsets 0, 2pi/3, 4pi/3."""
    return _parse_family(ORIGINAL_DSL)


@lru_cache(maxsize=None)
def fields_transformed() -> Tuple[VectorField, VectorField, VectorField]:
    """(g1, g2, g3) after the spatial coordinate change, offsets -2pi/3, 0, 2pi/3."""
    return _parse_family(TRANSFORMED_DSL)


def fields_for(parametrization: Parametrization) -> Tuple[VectorField, VectorField, VectorField]:
    if parametrization is Parametrization.ORIGINAL:
        return fields_original()
    return fields_transformed()


def rotation(theta: float) -> np.ndarray:
    """R_theta: planar rotation by theta, identity on the third axis."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_transpose(theta: float) -> np.ndarray:
    """R_theta^T as it appears in the Pfaff form A(phi) R_theta^T w' = phi'."""
    return rotation(theta).T
