"""
Exception hierarchy of the trident_nilpotent toolkit

Failures that come from bad arguments also derive from ``ValueError``.
"""

from typing import Optional, Sequence


class TridentError(Exception):
    """Base class of every error raised by the toolkit."""


class ConfigError(TridentError, ValueError):
    """Invalid run configuration."""


class ParseError(TridentError, ValueError):
    """DSL syntax error; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        self.detail = message
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class UnknownIdentifierError(ParseError):
    """Identifier that is neither a coordinate nor a built-in symbol."""


class NonAffineArgumentError(ParseError):
    """sin/cos applied to something that is not affine in the coordinates."""


class CoordinateMismatchError(TridentError, ValueError):
    """Vector fields tagged with different coordinate systems."""


class RankDeficiencyError(TridentError):
    """The point is not regular: the adapted frame does not reach full rank."""

    def __init__(self, achieved_rank: int, expected_rank: int, point: Sequence[float] = ()):
        self.achieved_rank = achieved_rank
        self.expected_rank = expected_rank
        self.point = tuple(point)
        super().__init__(
            f"rank deficient frame: achieved rank {achieved_rank} of {expected_rank}"
            + (f" at p={self.point}" if self.point else "")
        )


class NotBracketGeneratingError(TridentError):
    """Flag stopped below full rank within the bracket depth cap."""

    def __init__(self, depth: int, dims: Sequence[int]):
        self.depth = depth
        self.dims = tuple(dims)
        super().__init__(f"not bracket-generating at p within depth {depth} (dims {self.dims})")


class SingularFrameError(TridentError, ValueError):
    """Matrix that should be invertible is singular at the rank tolerance."""


class IntegrationError(TridentError):
    """Non-finite state met by the integrator."""

    def __init__(self, time: float):
        self.time = time
        super().__init__(f"non-finite state encountered at t={time:.17g}")


class FieldCountError(TridentError, ValueError):
    """Number of control fields does not match what the operation drives."""

    def __init__(self, expected: int, got: int, what: str = "control fields"):
        self.expected = expected
        self.got = got
        super().__init__(f"expected {expected} {what}, got {got}")
