"""
Symbolic scalar expressions over the coordinates x1..xn

Grammar: Constant, Variable, Sin, Cos, Sum, Product, Negation. Arguments of
Sin/Cos are affine in the variables, which keeps the class closed under
differentiation and under affine changes of coordinates.

Nodes are built through ``add``/``mul``/``neg``: they flatten nested sums and
products, fold constants and drop zero terms. Nothing else is simplified.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

from ..core.errors import NonAffineArgumentError


class Expression:
    """Base node. Subclasses are frozen dataclasses."""

    __slots__ = ()

    def __add__(self, other) -> "Expression":
        return add(self, as_expression(other))

    def __radd__(self, other) -> "Expression":
        return add(as_expression(other), self)

    def __sub__(self, other) -> "Expression":
        return add(self, neg(as_expression(other)))

    def __rsub__(self, other) -> "Expression":
        return add(as_expression(other), neg(self))

    def __mul__(self, other) -> "Expression":
        return mul(self, as_expression(other))

    def __rmul__(self, other) -> "Expression":
        return mul(as_expression(other), self)

    def __neg__(self) -> "Expression":
        return neg(self)

    def __str__(self) -> str:
        from .printer import to_dsl
        return to_dsl(self)


@dataclass(frozen=True, repr=False)
class Constant(Expression):
    value: float

    def __repr__(self) -> str:
        return f"Constant({self.value!r})"


@dataclass(frozen=True, repr=False)
class Variable(Expression):
    index: int          # 1-based

    def __repr__(self) -> str:
        return f"Variable({self.index})"


@dataclass(frozen=True, repr=False)
class Sin(Expression):
    arg: Expression

    def __post_init__(self):
        _require_affine(self.arg, "sin")

    def __repr__(self) -> str:
        return f"Sin({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Cos(Expression):
    arg: Expression

    def __post_init__(self):
        _require_affine(self.arg, "cos")

    def __repr__(self) -> str:
        return f"Cos({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Sum(Expression):
    terms: Tuple[Expression, ...]

    def __repr__(self) -> str:
        return f"Sum({', '.join(map(repr, self.terms))})"


@dataclass(frozen=True, repr=False)
class Product(Expression):
    factors: Tuple[Expression, ...]

    def __repr__(self) -> str:
        return f"Product({', '.join(map(repr, self.factors))})"


@dataclass(frozen=True, repr=False)
class Negation(Expression):
    arg: Expression

    def __repr__(self) -> str:
        return f"Negation({self.arg!r})"


ZERO = Constant(0.0)
ONE = Constant(1.0)

# -------------------------------------------------------------------
# Constructors
# -------------------------------------------------------------------

def as_expression(value) -> Expression:
    if isinstance(value, Expression):
        return value
    return Constant(float(value))


def is_affine(e: Expression) -> bool:
    """True for constants, variables and sums/negations/constant multiples of them."""
    if isinstance(e, (Constant, Variable)):
        return True
    if isinstance(e, Negation):
        return is_affine(e.arg)
    if isinstance(e, Sum):
        return all(is_affine(t) for t in e.terms)
    if isinstance(e, Product):
        varying = [f for f in e.factors if not isinstance(f, Constant)]
        return len(varying) <= 1 and all(is_affine(f) for f in varying)
    return False


def _require_affine(arg: Expression, name: str) -> None:
    if not is_affine(arg):
        raise NonAffineArgumentError(f"non-affine trigonometric argument in {name}")


def sin(arg: Expression) -> Expression:
    arg = as_expression(arg)
    _require_affine(arg, "sin")
    if isinstance(arg, Constant):
        return Constant(math.sin(arg.value))
    return Sin(arg)


def cos(arg: Expression) -> Expression:
    arg = as_expression(arg)
    _require_affine(arg, "cos")
    if isinstance(arg, Constant):
        return Constant(math.cos(arg.value))
    return Cos(arg)


def neg(e: Expression) -> Expression:
    if isinstance(e, Constant):
        return Constant(-e.value)
    if isinstance(e, Negation):
        return e.arg
    if isinstance(e, Product) and isinstance(e.factors[0], Constant):
        return _product_from(-e.factors[0].value, list(e.factors[1:]))
    return Negation(e)


def add(*terms: Expression) -> Expression:
    flat = []
    constant = 0.0
    constant_slot = None
    for term in _flatten(terms, Sum, "terms"):
        if isinstance(term, Constant):
            if constant_slot is None:
                constant_slot = len(flat)
                flat.append(None)
            constant += term.value
        else:
            flat.append(term)
    if constant_slot is not None:
        if constant != 0.0:
            flat[constant_slot] = Constant(constant)
        else:
            del flat[constant_slot]
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def mul(*factors: Expression) -> Expression:
    coefficient = 1.0
    rest = []
    pending = list(factors)
    while pending:
        factor = pending.pop(0)
        if isinstance(factor, Constant):
            coefficient *= factor.value
        elif isinstance(factor, Negation):
            coefficient = -coefficient
            pending.insert(0, factor.arg)
        elif isinstance(factor, Product):
            pending[0:0] = list(factor.factors)
        else:
            rest.append(factor)
    return _product_from(coefficient, rest)


def _product_from(coefficient: float, factors: list) -> Expression:
    if coefficient == 0.0:
        return ZERO
    if not factors:
        return Constant(coefficient)
    if coefficient == 1.0:
        return factors[0] if len(factors) == 1 else Product(tuple(factors))
    if coefficient == -1.0:
        return Negation(_product_from(1.0, factors))
    return Product((Constant(coefficient),) + tuple(factors))


def _flatten(items: Iterable[Expression], kind: type, attr: str):
    for item in items:
        if isinstance(item, kind):
            yield from getattr(item, attr)
        else:
            yield item


def linear_combination(coefficients: Sequence[float], expressions: Sequence[Expression]) -> Expression:
    """sum_k c_k * e_k, skipping exact zero coefficients."""
    return add(*(mul(Constant(float(c)), e) for c, e in zip(coefficients, expressions) if c != 0.0))

# -------------------------------------------------------------------
# Operations
# -------------------------------------------------------------------

def evaluate(e: Expression, point: Sequence[float]) -> float:
    """Exact recursive evaluation; ``point[i-1]`` is the value of variable i."""
    if isinstance(e, Constant):
        return e.value
    if isinstance(e, Variable):
        return float(point[e.index - 1])
    if isinstance(e, Sin):
        return math.sin(evaluate(e.arg, point))
    if isinstance(e, Cos):
        return math.cos(evaluate(e.arg, point))
    if isinstance(e, Sum):
        return math.fsum(evaluate(t, point) for t in e.terms)
    if isinstance(e, Product):
        return math.prod(evaluate(f, point) for f in e.factors)
    if isinstance(e, Negation):
        return -evaluate(e.arg, point)
    raise TypeError(f"not an expression: {e!r}")


def differentiate(e: Expression, i: int) -> Expression:
    """Symbolic partial derivative with respect to variable ``i``."""
    if isinstance(e, Constant):
        return ZERO
    if isinstance(e, Variable):
        return ONE if e.index == i else ZERO
    if isinstance(e, Sin):
        return mul(cos(e.arg), differentiate(e.arg, i))
    if isinstance(e, Cos):
        return neg(mul(sin(e.arg), differentiate(e.arg, i)))
    if isinstance(e, Sum):
        return add(*(differentiate(t, i) for t in e.terms))
    if isinstance(e, Negation):
        return neg(differentiate(e.arg, i))
    if isinstance(e, Product):
        terms = []
        for k, factor in enumerate(e.factors):
            d = differentiate(factor, i)
            if d != ZERO:
                terms.append(mul(*e.factors[:k], d, *e.factors[k + 1:]))
        return add(*terms)
    raise TypeError(f"not an expression: {e!r}")


def substitute(e: Expression, mapping: Mapping[int, Expression]) -> Expression:
    """Replace variables by expressions; affine replacements keep sin/cos arguments affine."""
    if isinstance(e, Constant):
        return e
    if isinstance(e, Variable):
        return mapping.get(e.index, e)
    if isinstance(e, Sin):
        return sin(substitute(e.arg, mapping))
    if isinstance(e, Cos):
        return cos(substitute(e.arg, mapping))
    if isinstance(e, Sum):
        return add(*(substitute(t, mapping) for t in e.terms))
    if isinstance(e, Product):
        return mul(*(substitute(f, mapping) for f in e.factors))
    if isinstance(e, Negation):
        return neg(substitute(e.arg, mapping))
    raise TypeError(f"not an expression: {e!r}")


def variables(e: Expression) -> frozenset:
    """Indices of the variables occurring in ``e``."""
    if isinstance(e, Constant):
        return frozenset()
    if isinstance(e, Variable):
        return frozenset((e.index,))
    if isinstance(e, (Sin, Cos, Negation)):
        return variables(e.arg)
    children = e.terms if isinstance(e, Sum) else e.factors
    found = frozenset()
    for child in children:
        found |= variables(child)
    return found

# -------------------------------------------------------------------
# Code generation
# -------------------------------------------------------------------

def to_python(e: Expression, state: str = "q") -> str:
    """Python source of ``e`` reading variable i from ``state[i-1]``."""
    if isinstance(e, Constant):
        return repr(e.value)
    if isinstance(e, Variable):
        return f"{state}[{e.index - 1}]"
    if isinstance(e, Sin):
        return f"sin({to_python(e.arg, state)})"
    if isinstance(e, Cos):
        return f"cos({to_python(e.arg, state)})"
    if isinstance(e, Sum):
        return "(" + " + ".join(to_python(t, state) for t in e.terms) + ")"
    if isinstance(e, Product):
        return "(" + " * ".join(to_python(f, state) for f in e.factors) + ")"
    if isinstance(e, Negation):
        return f"(-{to_python(e.arg, state)})"
    raise TypeError(f"not an expression: {e!r}")


_NAMESPACE: Dict[str, Callable] = {"sin": math.sin, "cos": math.cos, "__builtins__": {}}


def lambdify(expressions: Sequence[Expression]) -> Callable[[Sequence[float]], Tuple[float, ...]]:
    """Compile expressions into one function returning a tuple of their values."""
    body = ", ".join(to_python(e) for e in expressions)
    source = f"lambda q: ({body},)"
    return eval(compile(source, "<trident-dsl>", "eval"), dict(_NAMESPACE))
