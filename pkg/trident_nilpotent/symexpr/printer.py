"""
DSL printer; ``parse(to_dsl(parse(s))) == parse(s)``
"""

import math
from typing import Optional, Sequence, Tuple

from .expression import Constant, Cos, Expression, Negation, Product, Sin, Sum, Variable


# Irrational constants printed by name when a value is exactly k*base/d as
# the parser folds it.
SYMBOLIC_BASES: Tuple[Tuple[str, float], ...] = (
    ("pi", math.pi),
    ("sqrt(3)", math.sqrt(3)),
    ("sqrt(2)", math.sqrt(2)),
)
MAX_SYMBOLIC_TERM = 12


def _symbolic(magnitude: float) -> Optional[str]:
    for name, base in SYMBOLIC_BASES:
        for d in range(1, MAX_SYMBOLIC_TERM + 1):
            for k in range(1, MAX_SYMBOLIC_TERM + 1):
                if math.gcd(k, d) != 1 or (k * base) / d != magnitude:
                    continue
                text = name if k == 1 else f"{k}*{name}"
                return text if d == 1 else f"{text}/{d}"
    return None


def format_constant(value: float) -> str:
    """Integers as integers, k*pi/d and k*sqrt(n)/d by name, anything else by repr."""
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    named = _symbolic(abs(value))
    if named is not None:
        return named if value > 0 else f"-{named}"
    return repr(value)


def to_dsl(e: Expression, symbol: str = "x") -> str:
    """Render ``e`` in the DSL with coordinates named ``{symbol}1..``."""
    if isinstance(e, Constant):
        return format_constant(e.value)
    if isinstance(e, Variable):
        return f"{symbol}{e.index}"
    if isinstance(e, Sin):
        return f"sin({to_dsl(e.arg, symbol)})"
    if isinstance(e, Cos):
        return f"cos({to_dsl(e.arg, symbol)})"
    if isinstance(e, Negation):
        return "-" + _wrapped(e.arg, symbol, (Sum,))
    if isinstance(e, Product):
        head, *rest = e.factors
        if isinstance(head, Constant):
            first = format_constant(head.value)
        else:
            first = _wrapped(head, symbol, (Sum, Negation))
        return "*".join([first] + [_wrapped(f, symbol, (Sum, Negation)) for f in rest])
    if isinstance(e, Sum):
        text = to_dsl(e.terms[0], symbol)
        for term in e.terms[1:]:
            sign, magnitude = _split_sign(term)
            text += f" {sign} {_wrapped(magnitude, symbol, (Sum,)) if sign == '-' else to_dsl(magnitude, symbol)}"
        return text
    raise TypeError(f"not an expression: {e!r}")


def _wrapped(e: Expression, symbol: str, kinds: tuple) -> str:
    text = to_dsl(e, symbol)
    if isinstance(e, kinds):
        return f"({text})"
    if isinstance(e, Constant) and e.value < 0:
        return f"({text})"
    return text


def _split_sign(term: Expression):
    if isinstance(term, Negation):
        return "-", term.arg
    if isinstance(term, Constant) and term.value < 0:
        return "-", Constant(-term.value)
    if isinstance(term, Product) and isinstance(term.factors[0], Constant) and term.factors[0].value < 0:
        head = -term.factors[0].value
        rest = term.factors[1:]
        magnitude = Product((Constant(head),) + rest) if head != 1.0 else (
            rest[0] if len(rest) == 1 else Product(rest)
        )
        return "-", magnitude
    return "+", term


def field_to_dsl(components: Sequence[Expression], symbol: str = "x") -> str:
    """Render a vector field as ``c1*d/dx1 + ...``; the zero field prints as ``0``."""
    parts = []
    for k, coefficient in enumerate(components, start=1):
        if coefficient == Constant(0.0):
            continue
        direction = f"d/d{symbol}{k}"
        sign, magnitude = _split_sign(coefficient)
        if magnitude == Constant(1.0):
            body = direction
        else:
            body = f"{_wrapped(magnitude, symbol, (Sum, Negation))}*{direction}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"
