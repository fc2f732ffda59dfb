"""
Polynomials keyed by multi-index, Taylor extraction and the zero test
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.config import CFG, format_number
from .expression import Constant, Expression, Variable, differentiate, evaluate, mul, add

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]


def total_degree(alpha: MultiIndex) -> int:
    """|alpha| = sum_i alpha_i"""
    return sum(alpha)


def weighted_degree(alpha: MultiIndex, weights: Sequence[int]) -> int:
    """w(alpha) = sum_i alpha_i * w_i"""
    return sum(a * w for a, w in zip(alpha, weights))


def multi_indices(dimension: int, max_total_degree: int) -> Iterator[MultiIndex]:
    """All multi-indices with |alpha| <= max_total_degree, ordered by total degree."""
    for degree in range(max_total_degree + 1):
        for combo in itertools.combinations_with_replacement(range(dimension), degree):
            alpha = [0] * dimension
            for i in combo:
                alpha[i] += 1
            yield tuple(alpha)


@dataclass(frozen=True)
class Polynomial:
    """
    Real polynomial sum_alpha a_alpha * y^alpha

    Exact zero coefficients are never stored.
    """

    coefficients: Mapping[MultiIndex, float] = field(default_factory=dict)
    dimension: int = CFG.dimension

    def __post_init__(self):
        cleaned: Dict[MultiIndex, float] = {}
        for alpha, value in self.coefficients.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.dimension:
                raise ValueError(f"multi-index {alpha} has length {len(alpha)}, expected {self.dimension}")
            if value != 0.0:
                cleaned[alpha] = float(value)
        object.__setattr__(self, "coefficients", dict(sorted(cleaned.items(), key=_monomial_order)))

    # ---------------------------------------------------------------

    @classmethod
    def constant(cls, value: float, dimension: int = CFG.dimension) -> "Polynomial":
        return cls({(0,) * dimension: value}, dimension)

    def __getitem__(self, alpha: MultiIndex) -> float:
        return self.coefficients.get(tuple(alpha), 0.0)

    def __iter__(self):
        return iter(self.coefficients.items())

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged = dict(self.coefficients)
        for alpha, value in other.coefficients.items():
            merged[alpha] = merged.get(alpha, 0.0) + value
        return Polynomial(merged, self.dimension)

    def __neg__(self) -> "Polynomial":
        return Polynomial({a: -v for a, v in self.coefficients.items()}, self.dimension)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def filter(self, keep) -> "Polynomial":
        """Sub-polynomial of the monomials whose multi-index satisfies ``keep``."""
        return Polynomial({a: v for a, v in self.coefficients.items() if keep(a)}, self.dimension)

    def evaluate(self, point: Sequence[float]) -> float:
        y = np.asarray(point, dtype=float)
        return math.fsum(value * float(np.prod(y ** np.asarray(alpha))) for alpha, value in self.coefficients.items())

    def to_expression(self) -> Expression:
        terms = []
        for alpha, value in self.coefficients.items():
            factors = [Constant(value)]
            for index, power in enumerate(alpha, start=1):
                factors.extend([Variable(index)] * power)
            terms.append(mul(*factors))
        return add(*terms)

    def to_json(self) -> Dict[str, float]:
        """Coefficient map keyed by the comma-joined multi-index."""
        return {",".join(map(str, a)): float(format_number(v)) for a, v in self.coefficients.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, float]) -> "Polynomial":
        coefficients = {tuple(int(k) for k in key.split(",")): value for key, value in data.items()}
        dimension = len(next(iter(coefficients))) if coefficients else CFG.dimension
        return cls(coefficients, dimension)

    def __repr__(self) -> str:
        return f"Polynomial({self.coefficients!r})"


def _monomial_order(item):
    alpha = item[0]
    return (total_degree(alpha), tuple(-a for a in alpha))


def taylor(
    e: Expression,
    center: Sequence[float],
    max_total_degree: int,
    tol: Optional[float] = None,
    dimension: int = CFG.dimension,
) -> Polynomial:
    """
    Taylor polynomial of ``e`` at ``center``, in the shifted variables x - center

    Coefficients a_alpha = (d^alpha e)(center) / alpha! are obtained by repeated
    symbolic differentiation; |a_alpha| <= tol is dropped.
    """
    if max_total_degree < 0:
        raise ValueError("max_total_degree must be >= 0")
    tol = CFG.zero_tol if tol is None else tol
    derivatives: Dict[MultiIndex, Expression] = {(0,) * dimension: e}
    coefficients: Dict[MultiIndex, float] = {}
    for alpha in multi_indices(dimension, max_total_degree):
        if alpha not in derivatives:
            # differentiate the parent with one fewer power of the last non-zero index
            i = max(k for k, a in enumerate(alpha) if a > 0)
            parent = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
            derivatives[alpha] = differentiate(derivatives[parent], i + 1)
        value = evaluate(derivatives[alpha], center)
        value /= math.prod(math.factorial(a) for a in alpha)
        if abs(value) > tol:
            coefficients[alpha] = value
    return Polynomial(coefficients, dimension)


def sample_points(count: int = CFG.zero_samples, seed: int = CFG.zero_seed, dimension: int = CFG.dimension) -> np.ndarray:
    """Deterministic sample set in [-1, 1]^n used by ``is_zero``."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, size=(count, dimension))


_SAMPLES = sample_points()


def is_zero(e: Expression, tol: Optional[float] = None) -> bool:
    """
    Zero test: |e| <= tol on the fixed sample set and every degree-2 Taylor
    coefficient at 0 within tol.
    """
    tol = CFG.zero_tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(e, Constant):
        return abs(e.value) <= tol
    for point in _SAMPLES:
        if abs(evaluate(e, point)) > tol:
            return False
    return taylor(e, np.zeros(CFG.dimension), 2, tol=tol).is_zero
