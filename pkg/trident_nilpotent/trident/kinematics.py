"""
Planar kinematics of the trident snake: root, vertices, wheels and wheel slip

Vertex i sits at angle alpha_i = theta + psi_i on the unit circle around the
root, wheel i at angle beta_i = alpha_i + phi_i from its vertex. The wheel
rolls along its link; slip is the wheel velocity along the link normal
n_i = (-sin beta_i, cos beta_i).
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..core.config import format_number
from .model import Parametrization, rotation

POSE_COLUMNS: Tuple[str, ...] = (
    "t",
    "root_x", "root_y",
    "v1_x", "v1_y", "v2_x", "v2_y", "v3_x", "v3_y",
    "w1_x", "w1_y", "w2_x", "w2_y", "w3_x", "w3_y",
)


@dataclass(frozen=True)
class Configuration:
    """q = (x, y, theta, phi1, phi2, phi3); angles are not wrapped."""

    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0
    phi3: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "theta", "phi1", "phi2", "phi3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"configuration entry {name} is not finite: {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, q: Sequence[float]) -> "Configuration":
        values = [float(v) for v in q]
        if len(values) != 6:
            raise ValueError(f"configuration needs 6 entries, got {len(values)}")
        return cls(*values)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.theta, self.phi1, self.phi2, self.phi3])

    @property
    def phi(self) -> Tuple[float, float, float]:
        return (self.phi1, self.phi2, self.phi3)


@dataclass(frozen=True, eq=False)
class BodyPose:
    """Root, vertices, wheels (one row per leg) and unit link directions"""

    root: np.ndarray
    vertices: np.ndarray
    wheels: np.ndarray
    link_directions: np.ndarray

    def to_csv_row(self, t: float) -> List[str]:
        values = [t, *self.root, *self.vertices.ravel(), *self.wheels.ravel()]
        return [format_number(v) for v in values]

    def points(self) -> dict:
        """Tracked points by name, for plotting."""
        named = {"root": self.root}
        for i in range(3):
            named[f"v{i + 1}"] = self.vertices[i]
            named[f"w{i + 1}"] = self.wheels[i]
        return named


def _as_array(q) -> np.ndarray:
    return q.as_array() if isinstance(q, Configuration) else np.asarray(q, dtype=float)


def _angles(q: np.ndarray, parametrization: Parametrization) -> Tuple[np.ndarray, np.ndarray]:
    alpha = q[2] + np.asarray(parametrization.leg_offsets)
    beta = alpha + q[3:6]
    return alpha, beta


def kinematics(q, parametrization: Parametrization = Parametrization.TRANSFORMED) -> BodyPose:
    """Root, vertices and wheels for configuration ``q`` (r = l = 1)."""
    q = _as_array(q)
    alpha, beta = _angles(q, parametrization)
    root = q[0:2].copy()
    vertices = root + np.column_stack([np.cos(alpha), np.sin(alpha)])
    links = np.column_stack([np.cos(beta), np.sin(beta)])
    return BodyPose(root, vertices, vertices + links, links)


def root_velocity(q, qdot, parametrization: Parametrization) -> np.ndarray:
    """World-frame root velocity: R_theta (q1', q2') for body-frame families."""
    q, qdot = _as_array(q), np.asarray(qdot, dtype=float)
    if parametrization.body_frame_velocity:
        return rotation(q[2])[:2, :2] @ qdot[0:2]
    return qdot[0:2].copy()


def wheel_velocities(q, qdot, parametrization: Parametrization = Parametrization.TRANSFORMED) -> np.ndarray:
    """Analytic time derivative of the wheel positions along ``qdot``, one row per wheel."""
    q, qdot = _as_array(q), np.asarray(qdot, dtype=float)
    alpha, beta = _angles(q, parametrization)
    theta_dot = qdot[2]
    vertex_rates = theta_dot * np.column_stack([-np.sin(alpha), np.cos(alpha)])
    link_rates = (theta_dot + qdot[3:6])[:, None] * np.column_stack([-np.sin(beta), np.cos(beta)])
    return root_velocity(q, qdot, parametrization) + vertex_rates + link_rates


def slip(q, qdot, parametrization: Parametrization = Parametrization.TRANSFORMED) -> np.ndarray:
    """Wheel velocity components normal to the links; zero for admissible motions."""
    q = _as_array(q)
    _, beta = _angles(q, parametrization)
    normals = np.column_stack([-np.sin(beta), np.cos(beta)])
    return np.einsum("ij,ij->i", wheel_velocities(q, qdot, parametrization), normals)
