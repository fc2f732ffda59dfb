"""
Distribution flag at a point: growth vector, weights and nonholonomic orders
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import CFG
from ..core.errors import NotBracketGeneratingError
from ..symexpr.expression import ZERO, Constant, Expression, evaluate
from .field import VectorField, lie_bracket

logger = logging.getLogger(__name__)


def numeric_rank(matrix: np.ndarray, tol: float = CFG.rank_tol) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    if matrix.size == 0:
        return 0
    singular = np.linalg.svd(matrix, compute_uv=False)
    if singular[0] == 0.0:
        return 0
    return int(np.sum(singular > tol * singular[0]))


@dataclass(frozen=True)
class Flag:
    """
    Growth vector (n_1 <= ... <= n_r) of the flag at a point

    ``dims[s-1]`` is the rank of all brackets of length <= s.
    """

    dims: Tuple[int, ...]
    dimension: int = CFG.dimension

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("empty growth vector")
        if any(b < a for a, b in zip(dims, dims[1:])):
            raise ValueError(f"growth vector must be non-decreasing: {dims}")
        if dims[-1] > self.dimension:
            raise ValueError(f"growth vector {dims} exceeds dimension {self.dimension}")
        object.__setattr__(self, "dims", dims)

    @property
    def degree_of_nonholonomy(self) -> int:
        return len(self.dims)

    @property
    def full_rank(self) -> bool:
        return self.dims[-1] == self.dimension

    @property
    def weights(self) -> Tuple[int, ...]:
        return weights(self)

    def to_json(self) -> Dict:
        return {
            "dims": list(self.dims),
            "degree_of_nonholonomy": self.degree_of_nonholonomy,
            "weights": list(self.weights) if self.full_rank else None,
        }


def weights(flag: Flag) -> Tuple[int, ...]:
    """w_j = s iff n_{s-1} < j <= n_s."""
    if not flag.full_rank:
        raise ValueError(f"weights need a full-rank flag, got dims {flag.dims}")
    result = []
    for j in range(1, flag.dimension + 1):
        result.append(next(s for s, n in enumerate(flag.dims, start=1) if j <= n))
    return tuple(result)


def bracket_levels(fields: Sequence[VectorField]) -> Iterator[List[VectorField]]:
    """
    Left-normed brackets grouped by length: level 1 is the fields themselves,
    level s holds [X_i, B] for B of level s-1. Pairs are taken with i < j at
    level 2 since [X_i, X_i] = 0 and [X_j, X_i] = -[X_i, X_j].
    """
    level = list(fields)
    yield level
    level = [lie_bracket(fields[i], fields[j])
             for i in range(len(fields)) for j in range(i + 1, len(fields))]
    while True:
        yield level
        level = [lie_bracket(X, B) for X in fields for B in level]


def growth_vector(
    fields: Sequence[VectorField],
    point: Sequence[float],
    tol: float = CFG.rank_tol,
    depth_cap: int = CFG.depth_cap,
) -> Flag:
    """
    Flag dimensions at ``point``

    Adjoins brackets level by level until the span reaches full rank or the
    depth cap is hit.

    Raises:
        NotBracketGeneratingError: rank still short of n at the depth cap
    """
    if not fields:
        raise ValueError("growth_vector needs at least one field")
    if tol <= 0:
        raise ValueError("rank tolerance must be positive")
    p = np.asarray(point, dtype=float)
    columns: List[np.ndarray] = []
    dims: List[int] = []
    for depth, level in enumerate(bracket_levels(fields), start=1):
        columns.extend(B.evaluate(p) for B in level)
        dims.append(numeric_rank(np.column_stack(columns), tol))
        logger.debug("growth_vector depth %d: rank %d", depth, dims[-1])
        if dims[-1] == CFG.dimension or depth >= depth_cap:
            break
    if dims[-1] < CFG.dimension:
        raise NotBracketGeneratingError(depth, dims)
    flag = Flag(tuple(dims))
    logger.info("growth vector %s at p=%s", flag.dims, np.round(p, 6).tolist())
    return flag


# Returned by function_order when no derivative up to max_order is non-zero.
ORDER_UNBOUNDED = math.inf


def function_order(
    f: Expression,
    point: Sequence[float],
    fields: Sequence[VectorField],
    max_order: int = 3,
    tol: Optional[float] = None,
) -> Union[int, float]:
    """
    Nonholonomic order of ``f`` at ``point``

    Smallest s such that some X_{i1}...X_{is} f is non-zero at the point,
    searched breadth-first over words of increasing length. Returns
    ``ORDER_UNBOUNDED`` (infinity) when every derivative up to ``max_order``
    vanishes, i.e. the order is at least max_order + 1.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    tol = CFG.zero_tol if tol is None else tol
    p = np.asarray(point, dtype=float)
    level = [f]
    for s in range(max_order + 1):
        if any(abs(evaluate(g, p)) > tol for g in level):
            return s
        if s == max_order:
            break
        level = [X.apply(g) for g in level for X in fields]
        level = [g for g in level if not (isinstance(g, Constant) and g == ZERO)]
        if not level:
            break
    return ORDER_UNBOUNDED
