"""
Bracket-motion experiments: net displacement of periodic loops and
exact-vs-nilpotent comparisons
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import CFG, format_number
from ..core.errors import FieldCountError
from ..trident.kinematics import slip
from ..trident.model import Parametrization
from ..vfield.field import VectorField, lie_bracket
from .inputs import BRACKET_KINDS, InputKind, periodic_input
from .integrator import ModelTag, Trajectory, integrate

logger = logging.getLogger(__name__)


def _number(value: float) -> float:
    return float(format_number(value))


def direction_cosine(a: np.ndarray, b: np.ndarray) -> float:
    """cos of the angle between a and b; 0 when either vanishes."""
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def max_slip(trajectory: Trajectory, fields: Sequence[VectorField], parametrization: Parametrization) -> float:
    """Largest |slip| of any wheel along the trajectory driven by ``fields``."""
    velocities = trajectory.velocities(fields)
    return float(max(
        np.max(np.abs(slip(q, qdot, parametrization))) for q, qdot in zip(trajectory.states, velocities)
    ))


@dataclass(frozen=True, eq=False)
class BracketDisplacement:
    endpoint: np.ndarray
    bracket: np.ndarray             # [g_i, g_j] at q0
    direction_cosine: float
    magnitude: float
    trajectory: Trajectory

    def to_json(self) -> Dict:
        return {
            "endpoint": [_number(v) for v in self.endpoint],
            "bracket": [_number(v) for v in self.bracket],
            "direction_cosine": _number(self.direction_cosine),
            "magnitude": _number(self.magnitude),
        }


def bracket_displacement(
    fields: Sequence[VectorField],
    kind,
    amplitude: float = CFG.amplitude,
    omega: float = CFG.omega,
    steps: int = CFG.steps,
    periods: int = CFG.periods,
    q0: Optional[Sequence[float]] = None,
    model: ModelTag = ModelTag.EXACT,
) -> BracketDisplacement:
    """
    Net displacement after whole periods of the loop for ``kind``, compared
    with the direction of the symbolic bracket of the paired fields at q0.
    """
    kind = InputKind(kind)
    if len(fields) != CFG.control_count:
        raise FieldCountError(CFG.control_count, len(fields))
    control = periodic_input(kind, amplitude, omega)
    start = np.zeros(len(fields[0].components)) if q0 is None else np.asarray(q0, dtype=float)
    trajectory = integrate(fields, control, start, periods * control.period, steps, model)
    i, j = kind.pair
    bracket = lie_bracket(fields[i - 1], fields[j - 1]).evaluate(start)
    displacement = trajectory.endpoint - start
    return BracketDisplacement(
        trajectory.endpoint,
        bracket,
        direction_cosine(displacement, bracket),
        float(np.linalg.norm(displacement)),
        trajectory,
    )


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    """Exact model against the nilpotent approximation under the same input"""

    kind: InputKind
    amplitude: float
    omega: float
    steps: int
    max_dev: float
    endpoint_dev: float
    wheel_dev: Tuple[float, float, float]
    max_slip: float
    exact_max_slip: float
    direction_cosine: float
    magnitude: float
    exact: Trajectory
    nilpotent: Trajectory

    @property
    def relative_endpoint_dev(self) -> float:
        """endpoint_dev / magnitude; 0 for a motionless run."""
        return self.endpoint_dev / self.magnitude if self.magnitude > 0 else 0.0

    def to_json(self) -> Dict:
        return {
            "kind": self.kind.value,
            "amplitude": self.amplitude,
            "omega": self.omega,
            "steps": self.steps,
            "max_dev": _number(self.max_dev),
            "endpoint_dev": _number(self.endpoint_dev),
            "wheel_dev": [_number(v) for v in self.wheel_dev],
            "max_slip": _number(self.max_slip),
            "exact_max_slip": _number(self.exact_max_slip),
            "direction_cosine": _number(self.direction_cosine),
            "magnitude": _number(self.magnitude),
            "relative_endpoint_dev": _number(self.relative_endpoint_dev),
        }


def compare(
    exact_fields: Sequence[VectorField],
    hat_fields_x: Sequence[VectorField],
    kind,
    amplitude: float = CFG.amplitude,
    omega: float = CFG.omega,
    steps: int = CFG.steps,
    periods: int = CFG.periods,
    parametrization: Parametrization = Parametrization.TRANSFORMED,
    q0: Optional[Sequence[float]] = None,
) -> ComparisonReport:
    """
    Run both models from q0 (default 0) with the same loop and measure how far apart they
    end up, in configuration space and at the wheels.
    """
    kind = InputKind(kind)
    if len(hat_fields_x) != len(exact_fields):
        raise ValueError(f"expected {len(exact_fields)} hat fields, got {len(hat_fields_x)}")
    for h in hat_fields_x:
        if h.coordinate != "x":
            raise ValueError("hat fields must be expressed in x-coordinates")
    exact = bracket_displacement(exact_fields, kind, amplitude, omega, steps, periods, q0)
    nilpotent = integrate(
        hat_fields_x, exact.trajectory.control, exact.trajectory.states[0],
        exact.trajectory.times[-1], steps, ModelTag.NILPOTENT_X,
    )
    states_exact, states_nil = exact.trajectory.states, nilpotent.states
    deviation = np.linalg.norm(states_exact - states_nil, axis=1)
    wheels_exact = np.array([p.wheels for p in exact.trajectory.poses(parametrization)])
    wheels_nil = np.array([p.wheels for p in nilpotent.poses(parametrization)])
    wheel_dev = np.max(np.linalg.norm(wheels_exact - wheels_nil, axis=2), axis=0)
    report = ComparisonReport(
        kind=kind,
        amplitude=float(amplitude),
        omega=float(omega),
        steps=steps,
        max_dev=float(np.max(deviation)),
        endpoint_dev=float(deviation[-1]),
        wheel_dev=tuple(float(v) for v in wheel_dev),
        max_slip=max_slip(nilpotent, hat_fields_x, parametrization),
        exact_max_slip=max_slip(exact.trajectory, exact_fields, parametrization),
        direction_cosine=exact.direction_cosine,
        magnitude=exact.magnitude,
        exact=exact.trajectory,
        nilpotent=nilpotent,
    )
    logger.info(
        "compare %s A=%g: endpoint_dev %.3e, magnitude %.3e, nilpotent slip %.3e",
        kind.value, amplitude, report.endpoint_dev, report.magnitude, report.max_slip,
    )
    return report


SWEEP_COLUMNS: Tuple[str, ...] = (
    "kind", "amplitude", "magnitude", "direction_cosine", "endpoint_dev",
    "relative_endpoint_dev", "max_dev", "max_slip", "exact_max_slip",
)


def sweep(
    exact_fields: Sequence[VectorField],
    hat_fields_x: Sequence[VectorField],
    kinds: Sequence[InputKind] = BRACKET_KINDS,
    amplitudes: Sequence[float] = CFG.sweep_amplitudes,
    omega: float = CFG.omega,
    steps: int = CFG.steps,
    periods: int = CFG.periods,
    parametrization: Parametrization = Parametrization.TRANSFORMED,
    workers: int = 4,
    q0: Optional[Sequence[float]] = None,
) -> List[ComparisonReport]:
    """
    ``compare`` over every (kind, amplitude), fanned out on a thread pool.
    Results come back in (kind, amplitude) input order.
    """
    jobs = [(InputKind(kind), float(a)) for kind in kinds for a in amplitudes]
    results: Dict[Tuple[InputKind, float], ComparisonReport] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(
                compare, exact_fields, hat_fields_x, kind, a, omega, steps, periods, parametrization, q0
            ): (kind, a)
            for kind, a in jobs
        }
        for future in as_completed(futures):
            results[futures[future]] = future.result()
            logger.debug("sweep job %s done", futures[future])
    logger.info("sweep: %d comparisons over %d kinds", len(jobs), len(kinds))
    return [results[job] for job in jobs]


def sweep_rows(reports: Sequence[ComparisonReport]) -> List[List[str]]:
    """Convergence table rows matching ``SWEEP_COLUMNS``."""
    rows = []
    for r in reports:
        rows.append([
            r.kind.value,
            format_number(r.amplitude),
            format_number(r.magnitude),
            format_number(r.direction_cosine),
            format_number(r.endpoint_dev),
            format_number(r.relative_endpoint_dev),
            format_number(r.max_dev),
            format_number(r.max_slip),
            format_number(r.exact_max_slip),
        ])
    return rows
