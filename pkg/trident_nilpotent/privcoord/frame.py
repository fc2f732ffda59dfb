"""
Adapted frames and the linear privileged-coordinate transform at a point

The transform M maps x to y = M (x - p) and satisfies M G = I where the
columns of G are the control fields and the chosen brackets at p, so that
d/dy_i at p equals the i-th frame column.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import CFG, format_number
from ..core.errors import RankDeficiencyError, SingularFrameError
from ..symexpr.expression import Constant, Expression, Variable, add, linear_combination
from ..vfield.field import VectorField, lie_bracket
from ..vfield.flag import ORDER_UNBOUNDED, function_order, numeric_rank
from .linalg import block_lower_inverse, gauss_jordan_inverse, has_zero_upper_right

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

# Fixed bracket order: [g1,g2], [g2,g3], [g1,g3]
DEFAULT_BRACKET_ORDER: Tuple[Pair, ...] = ((1, 2), (2, 3), (1, 3))


class FrameRole(Enum):
    """What the columns / rows of a FrameMatrix mean"""
    FRAME = "frame"              # columns are field values at the point
    TRANSFORM = "transform"      # maps x - p to y


@dataclass(frozen=True, eq=False)
class FrameMatrix:
    """
    6x6 real matrix with its role

    Attributes:
        entries: the matrix (read-only copy)
        role: frame or transform
        labels: column labels of a frame, row labels (y1..y6) of a transform
        point: base point p in x-coordinates
        pairs: index pairs of the bracket columns of the frame it came from
    """

    entries: np.ndarray
    role: FrameRole
    labels: Tuple[str, ...] = ()
    point: Tuple[float, ...] = (0.0,) * CFG.dimension
    pairs: Tuple[Pair, ...] = DEFAULT_BRACKET_ORDER

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        n = CFG.dimension
        if entries.shape != (n, n):
            raise ValueError(f"frame matrix must be {n}x{n}, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "point", tuple(float(v) for v in self.point))
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if self.role is FrameRole.FRAME:
            rank = numeric_rank(entries)
            if rank < n:
                raise SingularFrameError(f"frame has rank {rank} < {n}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def column(self, i: int) -> np.ndarray:
        """Column i, 1-based."""
        return self.entries[:, i - 1]

    def inverse(self) -> np.ndarray:
        return gauss_jordan_inverse(self.entries)

    def to_json(self) -> Dict:
        """Row-major entries at 17 significant digits."""
        return {
            "role": self.role.value,
            "labels": list(self.labels),
            "point": [float(format_number(v)) for v in self.point],
            "entries": [[float(format_number(v)) for v in row] for row in self.entries],
        }

    def to_text(self, decimals: int = 12) -> str:
        """Aligned decimal text, one row per line."""
        width = decimals + 4
        lines = []
        if self.labels and self.role is FrameRole.FRAME:
            lines.append(" ".join(f"{label:>{width}}" for label in self.labels))
        for k, row in enumerate(self.entries):
            prefix = f"{self.labels[k]:>3} " if self.labels and self.role is FrameRole.TRANSFORM else ""
            # +0.0 turns -0.0 into 0.0
            lines.append(prefix + " ".join(f"{v + 0.0:>{width}.{decimals}f}" for v in row))
        return "\n".join(lines)


def _candidate_pairs(count: int, order: Sequence[Pair]) -> List[Pair]:
    pairs = [tuple(p) for p in order if max(p) <= count]
    for i in range(1, count + 1):
        for j in range(i + 1, count + 1):
            if (i, j) not in pairs:
                pairs.append((i, j))
    return pairs


def adapted_frame(
    fields: Sequence[VectorField],
    point: Sequence[float],
    bracket_order: Sequence[Pair] = DEFAULT_BRACKET_ORDER,
    tol: float = CFG.rank_tol,
) -> FrameMatrix:
    """
    Frame adapted to the (3,6) flag at ``point``

    Columns 1-3 are the field values, columns 4-6 the first brackets in
    ``bracket_order`` that increase the rank; pairs missing from the order are
    tried afterwards.

    Raises:
        RankDeficiencyError: fields plus brackets stay below full rank
    """
    n = CFG.dimension
    p = np.asarray(point, dtype=float)
    columns = [f.evaluate(p) for f in fields]
    labels = [f.name or f"g{i}" for i, f in enumerate(fields, start=1)]
    rank = numeric_rank(np.column_stack(columns), tol)
    if rank < len(fields):
        raise RankDeficiencyError(rank, n, p)
    chosen: List[Pair] = []
    for i, j in _candidate_pairs(len(fields), bracket_order):
        if rank == n:
            break
        value = lie_bracket(fields[i - 1], fields[j - 1]).evaluate(p)
        trial = numeric_rank(np.column_stack(columns + [value]), tol)
        if trial > rank:
            columns.append(value)
            labels.append(f"[{labels[i - 1]},{labels[j - 1]}]")
            chosen.append((i, j))
            rank = trial
        else:
            logger.debug("bracket [g%d,g%d] does not increase rank %d", i, j, rank)
    if rank < n:
        raise RankDeficiencyError(rank, n, p)
    return FrameMatrix(np.column_stack(columns), FrameRole.FRAME, tuple(labels), tuple(p), tuple(chosen))


def privileged_transform(frame: FrameMatrix, split: int = 3) -> FrameMatrix:
    """
    M = G^-1 as a transform

    When the upper-right block of G vanishes the inverse is assembled block by
    block, [[I, 0], [-B^-1 A, B^-1]] for an identity upper-left block.

    Raises:
        SingularFrameError: G is singular
    """
    G = frame.entries
    if has_zero_upper_right(G, split):
        M = block_lower_inverse(G, split)
        structure = "block"
    else:
        M = gauss_jordan_inverse(G)
        structure = "general"
    residual = identity_residual(M, G)
    if residual > CFG.identity_tol:
        logger.warning("privileged transform residual |M G - I| = %.3e above %.0e", residual, CFG.identity_tol)
    logger.debug("privileged transform (%s inverse), residual %.3e", structure, residual)
    labels = tuple(f"y{k}" for k in range(1, G.shape[0] + 1))
    return FrameMatrix(M, FrameRole.TRANSFORM, labels, frame.point, frame.pairs)


def identity_residual(transform: np.ndarray, frame: np.ndarray) -> float:
    """max |M G - I|, the defining residual of a privileged transform."""
    M = transform.entries if isinstance(transform, FrameMatrix) else np.asarray(transform)
    G = frame.entries if isinstance(frame, FrameMatrix) else np.asarray(frame)
    return float(np.max(np.abs(M @ G - np.eye(G.shape[0]))))


def coordinate_functions(transform: FrameMatrix) -> Tuple[Expression, ...]:
    """y_j = (M (x - p))_j as expressions in x."""
    M = transform.entries
    p = np.asarray(transform.point)
    variables = [Variable(k) for k in range(1, M.shape[0] + 1)]
    return tuple(
        add(linear_combination(row, variables), Constant(-float(row @ p))) for row in M
    )

# -------------------------------------------------------------------
# Verification
# -------------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateOrder:
    index: int
    weight: int
    order: float
    passed: bool


@dataclass(frozen=True)
class PrivilegedReport:
    """Per-coordinate nonholonomic orders against the weights"""
    items: Tuple[CoordinateOrder, ...]
    point: Tuple[float, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def failures(self) -> List[int]:
        return [item.index for item in self.items if not item.passed]

    def to_json(self) -> Dict:
        return {
            "passed": self.passed,
            "coordinates": [
                {
                    "y": item.index,
                    "weight": item.weight,
                    "order": None if item.order == ORDER_UNBOUNDED else int(item.order),
                    "passed": item.passed,
                }
                for item in self.items
            ],
        }


def verify_privileged(
    transform: FrameMatrix,
    fields: Sequence[VectorField],
    point: Optional[Sequence[float]] = None,
    weights: Sequence[int] = (1, 1, 1, 2, 2, 2),
    tol: Optional[float] = None,
) -> PrivilegedReport:
    """
    Check ord_p(y_j) == w_j for every coordinate y = M (x - p)

    A failing coordinate is reported, never raised.
    """
    p = transform.point if point is None else tuple(float(v) for v in point)
    if point is not None:
        transform = FrameMatrix(transform.entries, transform.role, transform.labels, p, transform.pairs)
    max_order = max(weights) + 1
    items = []
    for j, (y, w) in enumerate(zip(coordinate_functions(transform), weights), start=1):
        order = function_order(y, p, fields, max_order=max_order, tol=tol)
        items.append(CoordinateOrder(j, int(w), order, order == w))
    report = PrivilegedReport(tuple(items), tuple(p))
    if not report.passed:
        logger.info("privileged check failed for y%s", report.failures)
    return report

# -------------------------------------------------------------------
# Degenerate points
# -------------------------------------------------------------------

@dataclass(frozen=True)
class DegeneratePoint:
    point: Tuple[float, ...]
    rank: int

    def to_json(self) -> Dict:
        return {"point": [float(format_number(v)) for v in self.point], "achieved_rank": self.rank}


def scan_degenerate(
    fields: Sequence[VectorField],
    base_point: Optional[Sequence[float]] = None,
    indices: Sequence[int] = (4, 5, 6),
    samples: int = 9,
    tol: float = CFG.rank_tol,
) -> Optional[DegeneratePoint]:
    """
    Coarse grid scan over the coordinates ``indices`` (angles in [-pi, pi])
    for a point where the fields and their first brackets lose rank.

    Returns the first such point in grid order, or None.
    """
    base = np.zeros(CFG.dimension) if base_point is None else np.array(base_point, dtype=float)
    pairs = _candidate_pairs(len(fields), DEFAULT_BRACKET_ORDER)
    columns = list(fields) + [lie_bracket(fields[i - 1], fields[j - 1]) for i, j in pairs]
    grid = np.linspace(-np.pi, np.pi, samples)
    for values in itertools.product(grid, repeat=len(indices)):
        p = base.copy()
        p[[k - 1 for k in indices]] = values
        rank = numeric_rank(np.column_stack([c.evaluate(p) for c in columns]), tol)
        if rank < CFG.dimension:
            logger.info("degenerate frame at p=%s (rank %d)", np.round(p, 6).tolist(), rank)
            return DegeneratePoint(tuple(p), rank)
    logger.info("no degenerate frame on a %d^%d grid", samples, len(indices))
    return None
