"""
trident_nilpotent - Lie-bracket calculus, privileged coordinates and
nilpotent approximation of the trident snake robot, with a periodic-input
simulator comparing the exact model against its approximation.
"""

__version__ = "1.0.0"

from . import core
from . import symexpr
from . import vfield
from . import privcoord
from . import nilpotent
from . import trident
from . import sim

__all__ = [
    "core",
    "symexpr",
    "vfield",
    "privcoord",
    "nilpotent",
    "trident",
    "sim",
]
