"""
Simulation: RK4 integration, periodic bracket loops and model comparisons
"""

from .experiments import (
    SWEEP_COLUMNS,
    BracketDisplacement,
    ComparisonReport,
    bracket_displacement,
    compare,
    direction_cosine,
    max_slip,
    sweep,
    sweep_rows,
)
from .inputs import BRACKET_KINDS, ControlInput, InputKind, constant_input, custom_input, periodic_input
from .integrator import STATE_COLUMNS, ModelTag, Trajectory, integrate
from .plot import render_svg, write_svg

__all__ = [
    "SWEEP_COLUMNS",
    "BracketDisplacement",
    "ComparisonReport",
    "bracket_displacement",
    "compare",
    "direction_cosine",
    "max_slip",
    "sweep",
    "sweep_rows",
    "BRACKET_KINDS",
    "ControlInput",
    "InputKind",
    "constant_input",
    "custom_input",
    "periodic_input",
    "STATE_COLUMNS",
    "ModelTag",
    "Trajectory",
    "integrate",
    "render_svg",
    "write_svg",
]
