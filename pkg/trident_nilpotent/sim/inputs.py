"""
Control inputs u(t) = (u1, u2, u3) for q' = sum_i u_i(t) g_i(q)
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np


class InputKind(Enum):
    """Periodic loops realizing [g_i, g_j], plus user-supplied inputs"""
    BRACKET12 = "bracket12"
    BRACKET13 = "bracket13"
    BRACKET23 = "bracket23"
    CUSTOM = "custom"

    @property
    def pair(self) -> Optional[Tuple[int, int]]:
        if self is InputKind.CUSTOM:
            return None
        digits = self.value[-2:]
        return (int(digits[0]), int(digits[1]))

    @property
    def tag(self) -> str:
        """Index-pair suffix used in output file names, e.g. ``12``."""
        return self.value[-2:] if self is not InputKind.CUSTOM else "custom"

    @classmethod
    def from_pair(cls, i: int, j: int) -> "InputKind":
        i, j = sorted((i, j))
        return cls(f"bracket{i}{j}")


BRACKET_KINDS: Tuple[InputKind, ...] = (InputKind.BRACKET12, InputKind.BRACKET13, InputKind.BRACKET23)


@dataclass(frozen=True, eq=False)
class ControlInput:
    """
    Attributes:
        kind: which loop, or CUSTOM
        amplitude: A
        omega: angular frequency
        function: t -> array of 3 inputs
    """

    kind: InputKind
    amplitude: float
    omega: float
    function: Callable[[float], np.ndarray]

    def __call__(self, t: float) -> np.ndarray:
        return self.function(t)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "amplitude": self.amplitude, "omega": self.omega}


def periodic_input(kind, amplitude: float, omega: float) -> ControlInput:
    """
    Closed loop for the bracket of the paired fields: the active pair gets
    (-A w sin wt, A w cos wt), the third input stays 0.

    A = 0 gives the zero input.

    Raises:
        ValueError: negative amplitude, non-positive frequency or a custom kind
    """
    kind = InputKind(kind)
    if kind is InputKind.CUSTOM:
        raise ValueError("periodic_input builds bracket loops only")
    if amplitude < 0:
        raise ValueError(f"amplitude must be >= 0, got {amplitude}")
    if omega <= 0:
        raise ValueError(f"omega must be > 0, got {omega}")
    i, j = kind.pair
    scale = amplitude * omega

    def u(t: float) -> np.ndarray:
        values = np.zeros(3)
        values[i - 1] = -scale * math.sin(omega * t)
        values[j - 1] = scale * math.cos(omega * t)
        return values

    return ControlInput(kind, float(amplitude), float(omega), u)


def constant_input(values: Sequence[float]) -> ControlInput:
    fixed = np.array(values, dtype=float)
    if fixed.shape != (3,):
        raise ValueError("constant input needs 3 values")
    return ControlInput(InputKind.CUSTOM, 0.0, 1.0, lambda t: fixed.copy())


def custom_input(function: Callable[[float], Sequence[float]], omega: float = 1.0) -> ControlInput:
    return ControlInput(InputKind.CUSTOM, 0.0, omega, lambda t: np.asarray(function(t), dtype=float))
