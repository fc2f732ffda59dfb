"""
End-to-end nilpotent approximation at a point
"""

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from ..core.config import CFG
from ..privcoord.frame import (
    DEFAULT_BRACKET_ORDER,
    FrameMatrix,
    Pair,
    PrivilegedReport,
    adapted_frame,
    identity_residual,
    privileged_transform,
    verify_privileged,
)
from ..vfield.field import VectorField
from ..vfield.flag import Flag, growth_vector
from .certificates import FirstOrderReport, NilpotentReport, hat_brackets, verify_first_order, verify_nilpotent
from .truncation import WeightedField, pullback, pushforward, weighted_truncate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Approximation:
    """Everything computed on the way from g_i to the hat fields at a point"""

    point: Tuple[float, ...]
    flag: Flag
    frame: FrameMatrix
    transform: FrameMatrix
    fields_y: Tuple[VectorField, ...]
    hats: Tuple[WeightedField, ...]
    hats_x: Tuple[VectorField, ...]
    brackets_y: Dict[Pair, VectorField]
    brackets_x: Dict[Pair, VectorField]
    privileged: PrivilegedReport
    first_order: Tuple[FirstOrderReport, ...]
    nilpotent: NilpotentReport

    @property
    def weights(self) -> Tuple[int, ...]:
        return self.flag.weights

    @property
    def residual(self) -> float:
        return identity_residual(self.transform, self.frame)

    @property
    def passed(self) -> bool:
        return (
            self.privileged.passed
            and all(r.passed for r in self.first_order)
            and self.nilpotent.passed
            and self.residual <= CFG.identity_tol
        )

    def to_json(self) -> Dict:
        origin = np.zeros(CFG.dimension)
        return {
            "point": list(self.point),
            "growth_vector": list(self.flag.dims),
            "degree_of_nonholonomy": self.flag.degree_of_nonholonomy,
            "weights": list(self.weights),
            "frame": self.frame.to_json(),
            "transform": self.transform.to_json(),
            "identity_residual": self.residual,
            "hat_fields_y": [h.to_dsl() for h in self.hats],
            "hat_fields_x": [h.to_dsl() for h in self.hats_x],
            "hat_polynomials": [h.to_json() for h in self.hats],
            "hat_brackets_y": {
                f"{i},{j}": B.evaluate(origin).tolist() for (i, j), B in self.brackets_y.items()
            },
            "reports": {
                "privileged": self.privileged.to_json(),
                "first_order": [r.to_json() for r in self.first_order],
                "nilpotent": self.nilpotent.to_json(),
            },
            "passed": self.passed,
        }

    def to_text(self, decimals: int = 12) -> str:
        """Human-readable report with G and M as aligned decimal matrices."""
        lines = [
            f"point: {list(self.point)}",
            f"growth vector: {list(self.flag.dims)}",
            f"weights: {list(self.weights)}",
            "frame G:",
            self.frame.to_text(decimals),
            "transform M:",
            self.transform.to_text(decimals),
            f"identity residual: {self.residual:.3e}",
            "hat fields:",
        ]
        lines.extend(f"  {h.name} = {h.to_dsl()}" for h in self.hats)
        lines.append(f"passed: {self.passed}")
        return "\n".join(lines)


def approximate(
    fields: Sequence[VectorField],
    point: Sequence[float],
    bracket_order: Sequence[Pair] = DEFAULT_BRACKET_ORDER,
) -> Approximation:
    """
    Growth vector, adapted frame, privileged transform, hat fields and all
    certificates at ``point``.

    Raises:
        NotBracketGeneratingError: the flag does not reach full rank
        RankDeficiencyError: the adapted frame is singular at the point
    """
    p = tuple(float(v) for v in point)
    flag = growth_vector(fields, p)
    weights = flag.weights
    frame = adapted_frame(fields, p, bracket_order)
    transform = privileged_transform(frame)
    privileged = verify_privileged(transform, fields, p, weights)

    fields_y = tuple(pushforward(g, transform) for g in fields)
    hats = tuple(weighted_truncate(g.named(f"h{i}"), weights) for i, g in enumerate(fields_y, start=1))
    first_order = tuple(verify_first_order(g, h) for g, h in zip(fields_y, hats))
    nilpotent = verify_nilpotent(*hats)

    brackets_y = hat_brackets(hats, frame.pairs)
    hats_x = tuple(pullback(h.to_vector_field(), transform) for h in hats)
    brackets_x = {pair: pullback(B, transform) for pair, B in brackets_y.items()}

    approximation = Approximation(
        p, flag, frame, transform, fields_y, hats, hats_x, brackets_y, brackets_x,
        privileged, first_order, nilpotent,
    )
    logger.info(
        "nilpotent approximation at p=%s: weights %s, passed=%s",
        [round(v, 6) for v in p], list(weights), approximation.passed,
    )
    return approximation
