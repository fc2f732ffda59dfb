"""
Change of coordinates for vector fields and weighted-degree truncation
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from ..core.config import CFG
from ..privcoord.frame import FrameMatrix, FrameRole
from ..symexpr.expression import Constant, Variable, add, linear_combination, substitute
from ..symexpr.polynomial import Polynomial, taylor, weighted_degree
from ..symexpr.printer import field_to_dsl
from ..vfield.field import VectorField

logger = logging.getLogger(__name__)


def _transport(
    X: VectorField,
    linear: np.ndarray,
    substitution: np.ndarray,
    offset: np.ndarray,
    target: str,
) -> VectorField:
    """
    Components ``linear @ X(substitution @ z + offset)`` as fields in ``target``
    coordinates z.
    """
    n = CFG.dimension
    z = [Variable(k) for k in range(1, n + 1)]
    mapping = {
        k + 1: add(linear_combination(substitution[k], z), Constant(float(offset[k])))
        for k in range(n)
    }
    moved = [substitute(c, mapping) for c in X.components]
    components = tuple(linear_combination(row, moved) for row in linear)
    return VectorField(components, target, X.name)


def pushforward(X: VectorField, transform: FrameMatrix) -> VectorField:
    """
    X in y = M (x - p) coordinates

    Component i is sum_j M_ij X_j(p + M^-1 y).
    """
    if X.coordinate != "x":
        raise ValueError(f"pushforward expects an x-field, got {X.coordinate!r}")
    if transform.role is not FrameRole.TRANSFORM:
        raise ValueError("pushforward needs a transform matrix")
    M = transform.entries
    return _transport(X, M, transform.inverse(), np.asarray(transform.point), "y")


def pullback(Y: VectorField, transform: FrameMatrix) -> VectorField:
    """
    Y back in x-coordinates

    Component k is sum_i (M^-1)_ki Y_i(M (x - p)).
    """
    if Y.coordinate != "y":
        raise ValueError(f"pullback expects a y-field, got {Y.coordinate!r}")
    M = transform.entries
    return _transport(Y, transform.inverse(), M, -(M @ np.asarray(transform.point)), "x")


@dataclass(frozen=True, eq=False)
class WeightedField:
    """
    Polynomial vector field in y-coordinates with coordinate weights

    Every stored monomial y^alpha on component j has w(alpha) >= w_j - 1.
    """

    components: Tuple[Polynomial, ...]
    weights: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.components) != len(self.weights):
            raise ValueError("one weight per component is required")
        for j, (poly, w) in enumerate(zip(self.components, self.weights), start=1):
            for alpha in poly.coefficients:
                if weighted_degree(alpha, self.weights) < w - 1:
                    raise ValueError(
                        f"monomial {alpha} on component {j} has weighted degree below {w - 1}"
                    )

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedField):
            return NotImplemented
        return self.weights == other.weights and all(
            a.coefficients == b.coefficients for a, b in zip(self.components, other.components)
        )

    def to_vector_field(self) -> VectorField:
        return VectorField(tuple(p.to_expression() for p in self.components), "y", self.name)

    def evaluate(self, point: Sequence[float]) -> np.ndarray:
        return np.array([p.evaluate(point) for p in self.components])

    def with_coefficient(self, component: int, alpha: Tuple[int, ...], value: float) -> "WeightedField":
        """Copy with one coefficient replaced (component 1-based)."""
        polys = list(self.components)
        coefficients = dict(polys[component - 1].coefficients)
        coefficients[tuple(alpha)] = value
        polys[component - 1] = Polynomial(coefficients, polys[component - 1].dimension)
        return WeightedField(tuple(polys), self.weights, self.name)

    def to_dsl(self) -> str:
        return field_to_dsl([p.to_expression() for p in self.components], "y")

    def to_json(self) -> Dict:
        return {
            "name": self.name,
            "weights": list(self.weights),
            "components": [p.to_json() for p in self.components],
        }


def weighted_truncate(X: Union[VectorField, WeightedField], weights: Sequence[int]) -> WeightedField:
    """
    Degree -1 part of a y-field: component j keeps exactly the Taylor
    monomials at 0 with w(alpha) = w_j - 1.
    """
    weights = tuple(int(w) for w in weights)
    if isinstance(X, WeightedField):
        X = X.to_vector_field()
    if X.coordinate != "y":
        raise ValueError(f"weighted_truncate expects a y-field, got {X.coordinate!r}")
    # total degree never exceeds weighted degree, so max(w) - 1 is enough
    degree = max(max(weights) - 1, 0)
    origin = np.zeros(CFG.dimension)
    kept: List[Polynomial] = []
    for j, (component, w) in enumerate(zip(X.components, weights), start=1):
        expansion = taylor(component, origin, degree)
        kept.append(expansion.filter(lambda alpha, w=w: weighted_degree(alpha, weights) == w - 1))
        logger.debug("component %d: %d of %d monomials kept", j, len(kept[-1]), len(expansion))
    return WeightedField(tuple(kept), weights, X.name)


def dilate(point: Sequence[float], weights: Sequence[int], factor: float) -> np.ndarray:
    """delta_lambda(y) = (lambda^w1 y1, ..., lambda^wn yn)"""
    return np.asarray(point, dtype=float) * factor ** np.asarray(weights, dtype=float)
