"""
Vector fields as tuples of expressions, symbolic and finite-difference Lie brackets
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Literal, Sequence, Tuple

import numpy as np

from ..core.config import CFG
from ..core.errors import CoordinateMismatchError, ParseError
from ..symexpr.expression import (
    ONE,
    ZERO,
    Constant,
    Expression,
    add,
    differentiate,
    evaluate,
    lambdify,
    linear_combination,
    mul,
    neg,
)
from ..symexpr.parser import parse_components
from ..symexpr.polynomial import is_zero
from ..symexpr.printer import field_to_dsl

logger = logging.getLogger(__name__)

Coordinate = Literal["x", "y"]


@dataclass(frozen=True)
class VectorField:
    """
    X = sum_k components[k] * d/d{coordinate}{k+1}

    Attributes:
        components: one expression per coordinate direction
        coordinate: coordinate-system tag, "x" or "y"
        name: display label, not part of equality
    """

    components: Tuple[Expression, ...]
    coordinate: Coordinate = "x"
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.coordinate not in ("x", "y"):
            raise ValueError(f"unknown coordinate system {self.coordinate!r}")
        if len(self.components) != CFG.dimension:
            raise ValueError(
                f"vector field has {len(self.components)} components, expected {CFG.dimension}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components and self.coordinate == other.coordinate

    def __hash__(self) -> int:
        return hash((self.components, self.coordinate))

    # ---------------------------------------------------------------
    # Construction
    # ---------------------------------------------------------------

    @classmethod
    def from_dsl(cls, source: str, coordinate: Coordinate = None, name: str = "") -> "VectorField":
        """Parse ``"sin(x4)*d/dx1 + d/dx2"``-style text."""
        symbol, components = parse_components(source, coordinate)
        return cls(components, symbol, name)

    @classmethod
    def coordinate_field(cls, k: int, coordinate: Coordinate = "x") -> "VectorField":
        """The constant field d/d{coordinate}{k}, k 1-based."""
        components = [ZERO] * CFG.dimension
        components[k - 1] = ONE
        return cls(tuple(components), coordinate, f"d/d{coordinate}{k}")

    @classmethod
    def zero(cls, coordinate: Coordinate = "x") -> "VectorField":
        return cls((ZERO,) * CFG.dimension, coordinate, "0")

    @classmethod
    def constant(cls, values: Sequence[float], coordinate: Coordinate = "x", name: str = "") -> "VectorField":
        return cls(tuple(Constant(float(v)) for v in values), coordinate, name)

    def named(self, name: str) -> "VectorField":
        return VectorField(self.components, self.coordinate, name)

    # ---------------------------------------------------------------
    # Evaluation
    # ---------------------------------------------------------------

    @cached_property
    def compiled(self) -> Callable[[Sequence[float]], Tuple[float, ...]]:
        """Fast numeric evaluator (generated Python source)."""
        return lambdify(self.components)

    def evaluate(self, point: Sequence[float]) -> np.ndarray:
        return np.array(self.compiled(point), dtype=float)

    def evaluate_exact(self, point: Sequence[float]) -> np.ndarray:
        """Tree-walking evaluation, used as a reference for ``evaluate``."""
        return np.array([evaluate(c, point) for c in self.components], dtype=float)

    def jacobian(self, point: Sequence[float], h: float = CFG.fd_step) -> np.ndarray:
        """Central-difference Jacobian J[k, j] = dX_k/dx_j."""
        p = np.asarray(point, dtype=float)
        columns = []
        for j in range(CFG.dimension):
            step = np.zeros_like(p)
            step[j] = h
            columns.append((self.evaluate(p + step) - self.evaluate(p - step)) / (2.0 * h))
        return np.column_stack(columns)

    # ---------------------------------------------------------------
    # Algebra
    # ---------------------------------------------------------------

    def apply(self, f: Expression) -> Expression:
        """Lie derivative X f = sum_j X_j * df/dx_j."""
        return add(*(mul(c, differentiate(f, j)) for j, c in enumerate(self.components, start=1) if c != ZERO))

    def __add__(self, other: "VectorField") -> "VectorField":
        _require_same_coordinates(self, other)
        return VectorField(tuple(add(a, b) for a, b in zip(self.components, other.components)), self.coordinate)

    def __neg__(self) -> "VectorField":
        return VectorField(tuple(neg(c) for c in self.components), self.coordinate)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def is_zero(self, tol: float = None) -> bool:
        return all(is_zero(c, tol) for c in self.components)

    # ---------------------------------------------------------------
    # Text
    # ---------------------------------------------------------------

    def to_dsl(self) -> str:
        return field_to_dsl(self.components, self.coordinate)

    def __str__(self) -> str:
        return self.to_dsl()


def _require_same_coordinates(X: VectorField, Y: VectorField) -> None:
    if X.coordinate != Y.coordinate:
        raise CoordinateMismatchError(
            f"vector fields live in different coordinates: {X.coordinate!r} and {Y.coordinate!r}"
        )


def combine(coefficients: Sequence[float], fields: Sequence[VectorField]) -> VectorField:
    """Constant-coefficient combination sum_i c_i X_i."""
    if not fields:
        raise ValueError("no fields to combine")
    for other in fields[1:]:
        _require_same_coordinates(fields[0], other)
    components = tuple(
        linear_combination(coefficients, [f.components[k] for f in fields]) for k in range(CFG.dimension)
    )
    return VectorField(components, fields[0].coordinate)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """
    Symbolic Lie bracket [X, Y]

    Component k is sum_j (X_j dY_k/dx_j - Y_j dX_k/dx_j).

    Raises:
        CoordinateMismatchError: X and Y carry different coordinate tags
    """
    _require_same_coordinates(X, Y)
    components = tuple(add(X.apply(y), neg(Y.apply(x))) for x, y in zip(X.components, Y.components))
    name = f"[{X.name},{Y.name}]" if X.name and Y.name else ""
    return VectorField(components, X.coordinate, name)


def fd_bracket(X: VectorField, Y: VectorField, point: Sequence[float], h: float = CFG.fd_step) -> np.ndarray:
    """Finite-difference oracle JY(p) X(p) - JX(p) Y(p)."""
    if h <= 0:
        raise ValueError("finite-difference step must be positive")
    p = np.asarray(point, dtype=float)
    return Y.jacobian(p, h) @ X.evaluate(p) - X.jacobian(p, h) @ Y.evaluate(p)


def load_fields(path: Path) -> Tuple[VectorField, ...]:
    """
    Read a DSL file: one field per non-empty line, ``#`` starts a comment,
    an optional ``name =`` prefix labels the field.

    Raises:
        ParseError: with the offending line number in the message
    """
    fields = []
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name = ""
        if "=" in line:
            name, line = (part.strip() for part in line.split("=", 1))
        try:
            fields.append(VectorField.from_dsl(line, name=name or f"g{len(fields) + 1}"))
        except ParseError as e:
            raise type(e)(f"line {number}: {e.detail}", e.position) from e
    if not fields:
        raise ParseError(f"no vector fields in {path}")
    coordinate = fields[0].coordinate
    for field in fields[1:]:
        _require_same_coordinates(fields[0], field)
    logger.debug("loaded %d %s-fields from %s", len(fields), coordinate, path)
    return tuple(fields)


def values_matrix(fields: Iterable[VectorField], point: Sequence[float]) -> np.ndarray:
    """Matrix whose columns are the field values at ``point``."""
    return np.column_stack([f.evaluate(point) for f in fields])
