"""
Fixed-step RK4 for control-affine systems and the resulting trajectories
"""

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from ..core.config import CFG, format_number
from ..core.errors import FieldCountError, IntegrationError
from ..trident.kinematics import POSE_COLUMNS, BodyPose, kinematics
from ..trident.model import Parametrization
from ..vfield.field import VectorField
from .inputs import ControlInput

logger = logging.getLogger(__name__)

STATE_COLUMNS: Tuple[str, ...] = ("t", "x1", "x2", "x3", "x4", "x5", "x6")


class ModelTag(Enum):
    EXACT = "exact"
    NILPOTENT_X = "nilpotent-x"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled solution: ``states[k]`` is q at ``times[k]``."""

    times: np.ndarray
    states: np.ndarray
    control: ControlInput
    model: ModelTag
    step: float
    integrator: str = "rk4"

    @property
    def endpoint(self) -> np.ndarray:
        return self.states[-1]

    def poses(self, parametrization: Parametrization = Parametrization.TRANSFORMED) -> List[BodyPose]:
        return [kinematics(q, parametrization) for q in self.states]

    def velocities(self, fields: Sequence[VectorField]) -> np.ndarray:
        """q'(t_k) = sum_i u_i(t_k) g_i(q_k) at every sample."""
        return np.array([
            np.column_stack([g.evaluate(q) for g in fields]) @ self.control(t)
            for t, q in zip(self.times, self.states)
        ])

    def metadata(self) -> dict:
        return {
            "model": self.model.value,
            "integrator": self.integrator,
            "step": self.step,
            "samples": len(self.times),
            "input": self.control.to_json(),
        }

    def write_csv(self, path: Path) -> Path:
        """Header ``t,x1..x6``, 17 significant digits."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(STATE_COLUMNS)
            for t, q in zip(self.times, self.states):
                writer.writerow([format_number(t), *(format_number(v) for v in q)])
        return path

    def write_pose_csv(self, path: Path, parametrization: Parametrization = Parametrization.TRANSFORMED) -> Path:
        """Root, vertices and wheels per sample."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(POSE_COLUMNS)
            for t, pose in zip(self.times, self.poses(parametrization)):
                writer.writerow(pose.to_csv_row(t))
        return path


def integrate(
    fields: Sequence[VectorField],
    control: ControlInput,
    q0: Sequence[float],
    duration: float,
    steps: int = CFG.steps,
    model: ModelTag = ModelTag.EXACT,
) -> Trajectory:
    """
    Classical fixed-step RK4 on q' = sum_i u_i(t) g_i(q) over [0, duration]

    Raises:
        ValueError: steps < 1 or duration <= 0
        FieldCountError: the input has a different number of entries than there are fields
        IntegrationError: a non-finite state, with the time it appeared
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if duration <= 0:
        raise ValueError("duration must be > 0")
    inputs = len(control(0.0))
    if inputs != len(fields):
        raise FieldCountError(len(fields), inputs, "control inputs")
    compiled = [g.compiled for g in fields]

    def rhs(t: float, q: np.ndarray) -> np.ndarray:
        u = control(t)
        velocity = np.zeros_like(q)
        for ui, g in zip(u, compiled):
            if ui != 0.0:
                velocity += ui * np.asarray(g(q))
        return velocity

    h = duration / steps
    times = np.linspace(0.0, duration, steps + 1)
    states = np.empty((steps + 1, len(q0)))
    q = np.array(q0, dtype=float)
    states[0] = q
    for k in range(steps):
        t = times[k]
        k1 = rhs(t, q)
        k2 = rhs(t + h / 2, q + h / 2 * k1)
        k3 = rhs(t + h / 2, q + h / 2 * k2)
        k4 = rhs(t + h, q + h * k3)
        q = q + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(q)):
            raise IntegrationError(float(times[k + 1]))
        states[k + 1] = q
    logger.debug("rk4 %s: %d steps of %.3e, endpoint %s", model.value, steps, h, np.round(q, 6).tolist())
    return Trajectory(times, states, control, model, h)
