"""
First-order approximation and nilpotency certificates for hat fields
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import CFG, format_number
from ..privcoord.frame import DEFAULT_BRACKET_ORDER, Pair
from ..symexpr.expression import differentiate
from ..symexpr.polynomial import is_zero, taylor, weighted_degree
from ..vfield.field import VectorField, lie_bracket
from .truncation import WeightedField

logger = logging.getLogger(__name__)

HatField = Union[VectorField, WeightedField]


def _as_field(X: HatField) -> VectorField:
    return X.to_vector_field() if isinstance(X, WeightedField) else X


def hat_brackets(
    hats: Sequence[HatField],
    pairs: Sequence[Pair] = DEFAULT_BRACKET_ORDER,
) -> Dict[Pair, VectorField]:
    """Brackets [h_i, h_j] of the hat fields keyed by (i, j)."""
    fields = [_as_field(h) for h in hats]
    result = {}
    for i, j in pairs:
        bracket = lie_bracket(fields[i - 1], fields[j - 1])
        result[(i, j)] = bracket.named(f"[h{i},h{j}]")
    return result

# -------------------------------------------------------------------
# First-order approximation
# -------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    component: int
    alpha: Tuple[int, ...]
    coefficient: float
    weighted_degree: int

    def to_json(self) -> Dict:
        return {
            "component": self.component,
            "alpha": list(self.alpha),
            "coefficient": float(format_number(self.coefficient)),
            "weighted_degree": self.weighted_degree,
        }


@dataclass(frozen=True)
class FirstOrderReport:
    """Residual monomials of g - g_hat with w(alpha) < w_j"""
    name: str
    degree: int
    violations: Tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> Dict:
        return {
            "field": self.name,
            "passed": self.passed,
            "degree": self.degree,
            "violations": [v.to_json() for v in self.violations],
        }


def verify_first_order(
    g: VectorField,
    g_hat: WeightedField,
    degree: int = CFG.taylor_degree,
    tol: Optional[float] = None,
) -> FirstOrderReport:
    """
    Order >= 0 certificate for g - g_hat up to total degree ``degree``

    Every Taylor monomial at 0 of component j of the difference must have
    weighted degree >= w_j.
    """
    if g.coordinate != "y":
        raise ValueError(f"verify_first_order expects a y-field, got {g.coordinate!r}")
    weights = g_hat.weights
    residual = g - g_hat.to_vector_field()
    origin = np.zeros(CFG.dimension)
    violations: List[Violation] = []
    for j, (component, w) in enumerate(zip(residual.components, weights), start=1):
        for alpha, value in taylor(component, origin, degree, tol):
            d = weighted_degree(alpha, weights)
            if d < w:
                violations.append(Violation(j, alpha, value, d))
    report = FirstOrderReport(g.name or g_hat.name, degree, tuple(violations))
    if not report.passed:
        logger.info("first-order check of %s: %d violating monomials", report.name, len(violations))
    return report

# -------------------------------------------------------------------
# Nilpotency
# -------------------------------------------------------------------

@dataclass(frozen=True)
class BracketCheck:
    word: Tuple[int, ...]        # (i, j) or (i, j, k)
    passed: bool
    value_at_origin: Tuple[float, ...]

    @property
    def label(self) -> str:
        if len(self.word) == 2:
            return f"[h{self.word[0]},h{self.word[1]}]"
        i, j, k = self.word
        return f"[[h{i},h{j}],h{k}]"

    def to_json(self) -> Dict:
        return {
            "bracket": self.label,
            "passed": self.passed,
            "value_at_origin": [float(format_number(v)) for v in self.value_at_origin],
        }


@dataclass(frozen=True)
class NilpotentReport:
    """Pairwise brackets constant, brackets of length 3 identically zero"""
    pairwise: Tuple[BracketCheck, ...]
    triple: Tuple[BracketCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.pairwise + self.triple)

    @property
    def step(self) -> Optional[int]:
        """Nilpotency step certified: 2 when every check passes."""
        return 2 if self.passed else None

    def to_json(self) -> Dict:
        return {
            "passed": self.passed,
            "step": self.step,
            "pairwise_constant": [c.to_json() for c in self.pairwise],
            "triple_zero": [c.to_json() for c in self.triple],
        }


def is_constant_field(X: VectorField, tol: Optional[float] = None) -> bool:
    """Every partial derivative of every component vanishes."""
    return all(
        is_zero(differentiate(c, k), tol) for c in X.components for k in range(1, CFG.dimension + 1)
    )


def verify_nilpotent(*hats: HatField, tol: Optional[float] = None) -> NilpotentReport:
    """
    Certify that the hat fields generate a step-2 nilpotent Lie algebra

    (a) [h_i, h_j] has constant components for all i < j;
    (b) [[h_i, h_j], h_k] is zero for every i, j, k.
    """
    fields = [_as_field(h) for h in hats]
    origin = np.zeros(CFG.dimension)
    m = len(fields)
    pairwise = []
    brackets: Dict[Pair, VectorField] = {}
    for i, j in itertools.product(range(1, m + 1), repeat=2):
        brackets[(i, j)] = lie_bracket(fields[i - 1], fields[j - 1])
        if i < j:
            B = brackets[(i, j)]
            pairwise.append(BracketCheck((i, j), is_constant_field(B, tol), tuple(B.evaluate(origin))))
    triple = []
    for (i, j), k in itertools.product(brackets, range(1, m + 1)):
        T = lie_bracket(brackets[(i, j)], fields[k - 1])
        triple.append(BracketCheck((i, j, k), T.is_zero(tol), tuple(T.evaluate(origin))))
    report = NilpotentReport(tuple(pairwise), tuple(triple))
    logger.info(
        "nilpotency: %d/%d pairwise constant, %d/%d triple zero",
        sum(c.passed for c in pairwise), len(pairwise), sum(c.passed for c in triple), len(triple),
    )
    return report
