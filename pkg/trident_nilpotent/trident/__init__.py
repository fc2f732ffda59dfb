"""
Trident snake model: control fields, rotations, kinematics and slip
"""

from .kinematics import (
    POSE_COLUMNS,
    BodyPose,
    Configuration,
    kinematics,
    root_velocity,
    slip,
    wheel_velocities,
)
from .model import (
    ORIGINAL_DSL,
    TRANSFORMED_DSL,
    Parametrization,
    fields_for,
    fields_original,
    fields_transformed,
    rotation,
    rotation_transpose,
)

__all__ = [
    "POSE_COLUMNS",
    "BodyPose",
    "Configuration",
    "kinematics",
    "root_velocity",
    "slip",
    "wheel_velocities",
    "ORIGINAL_DSL",
    "TRANSFORMED_DSL",
    "Parametrization",
    "fields_for",
    "fields_original",
    "fields_transformed",
    "rotation",
    "rotation_transpose",
]
