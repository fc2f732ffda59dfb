"""
Recursive-descent parser of the vector-field DSL

EBNF (see docs/MATHEMATICS.md):

    field      = expr                        (linear in the d/dxk directions)
    expr       = term { ("+" | "-") term }
    term       = unary { ("*" | "/") unary }  (divisor must be constant)
    unary      = ("-" | "+") unary | primary
    primary    = number | "pi" | coordinate | direction
               | ("sin" | "cos") "(" expr ")"
               | "sqrt" "(" integer ")"
               | "(" expr ")"
    coordinate = ("x" | "y") digit
    direction  = "d/d" ("x" | "y") digit
"""

import math
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core.config import CFG
from ..core.errors import NonAffineArgumentError, ParseError, UnknownIdentifierError
from .expression import (
    Constant,
    Expression,
    Variable,
    add,
    cos,
    differentiate,
    mul,
    neg,
    sin,
    substitute,
    variables,
)

# Directions d/dxk are parsed as placeholder variables with this index offset.
DIRECTION_OFFSET = 1000

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<direction>d/d[a-z]\d+)"
    r"|(?P<number>\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+(?:[eE][-+]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/()])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(source: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(source):
        if source[position:].strip() == "":
            break
        match = _TOKEN.match(source, position)
        if match is None or match.end() == position:
            offset = position + len(source[position:]) - len(source[position:].lstrip())
            raise ParseError(f"unexpected character {source[offset]!r}", offset)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, symbol: Optional[str], allow_directions: bool):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0
        self.symbol = symbol
        self.allow_directions = allow_directions

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text:
            found = self.current.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.current.position)
        return self.advance()

    def parse(self) -> Expression:
        result = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.position)
        return result

    def expr(self) -> Expression:
        terms = [self.term()]
        while self.current.text in ("+", "-"):
            op = self.advance().text
            term = self.term()
            terms.append(term if op == "+" else neg(term))
        return add(*terms)

    def term(self) -> Expression:
        result = self.unary()
        while self.current.text in ("*", "/"):
            op = self.advance()
            right = self.unary()
            if op.text == "*":
                result = mul(result, right)
                continue
            if not isinstance(right, Constant):
                raise ParseError("division by a non-constant expression", op.position)
            if right.value == 0.0:
                raise ParseError("division by zero", op.position)
            if isinstance(result, Constant):
                result = Constant(result.value / right.value)
            else:
                result = mul(result, Constant(1.0 / right.value))
        return result

    def unary(self) -> Expression:
        if self.current.text == "-":
            self.advance()
            return neg(self.unary())
        if self.current.text == "+":
            self.advance()
            return self.unary()
        return self.primary()

    def primary(self) -> Expression:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Constant(float(token.text))
        if token.kind == "direction":
            self.advance()
            return Variable(DIRECTION_OFFSET + self._coordinate_index(token.text[3:], token, direction=True))
        if token.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind == "ident":
            self.advance()
            name = token.text
            if name == "pi":
                return Constant(math.pi)
            if name in ("sin", "cos"):
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                try:
                    return sin(arg) if name == "sin" else cos(arg)
                except NonAffineArgumentError:
                    raise NonAffineArgumentError(
                        f"non-affine trigonometric argument in {name}", token.position
                    ) from None
            if name == "sqrt":
                self.expect("(")
                radicand = self.current
                if radicand.kind != "number" or not radicand.text.isdigit():
                    raise ParseError("sqrt takes a non-negative integer literal", radicand.position)
                self.advance()
                self.expect(")")
                return Constant(math.sqrt(int(radicand.text)))
            return Variable(self._coordinate_index(name, token))
        found = token.text or "end of input"
        raise ParseError(f"unexpected {found!r}", token.position)

    def _coordinate_index(self, name: str, token: Token, direction: bool = False) -> int:
        match = re.fullmatch(r"([xy])(\d+)", name)
        if match is None or not 1 <= int(match.group(2)) <= CFG.dimension:
            raise UnknownIdentifierError(f"unknown identifier {token.text!r}", token.position)
        if direction and not self.allow_directions:
            raise ParseError(f"direction {token.text!r} not allowed in a scalar expression", token.position)
        prefix = match.group(1)
        if self.symbol is None:
            self.symbol = prefix
        elif prefix != self.symbol:
            raise UnknownIdentifierError(
                f"identifier {token.text!r} mixes coordinates {prefix!r} and {self.symbol!r}",
                token.position,
            )
        return int(match.group(2))


def parse(source: str, symbol: Optional[str] = None) -> Expression:
    """
    Parse a scalar DSL expression

    Args:
        source: expression text, e.g. ``"sin(x4 - 2*pi/3)"``
        symbol: required coordinate prefix ("x" or "y"); any single prefix if None

    Returns:
        The expression tree

    Raises:
        ParseError: syntax error (with position)
        UnknownIdentifierError: identifier outside x1..x6 / y1..y6 and the built-ins
        NonAffineArgumentError: sin/cos of a non-affine argument
    """
    return _Parser(source, symbol, allow_directions=False).parse()


def parse_components(source: str, symbol: Optional[str] = None) -> Tuple[str, Tuple[Expression, ...]]:
    """
    Parse a field written as a combination of directions, e.g.
    ``"d/dx1 + sin(x4 - 2*pi/3)*d/dx4"``.

    Returns:
        (coordinate symbol, one coefficient expression per coordinate)
    """
    parser = _Parser(source, symbol, allow_directions=True)
    tree = parser.parse()
    directions = range(DIRECTION_OFFSET + 1, DIRECTION_OFFSET + CFG.dimension + 1)
    components = []
    for index in directions:
        coefficient = differentiate(tree, index)
        if any(v > DIRECTION_OFFSET for v in variables(coefficient)):
            raise ParseError("vector field is not linear in the directions d/d*", 0)
        components.append(coefficient)
    remainder = substitute(tree, {index: Constant(0.0) for index in directions})
    if remainder != Constant(0.0):
        raise ParseError("vector field has a term without a direction d/d*", 0)
    return parser.symbol or "x", tuple(components)
