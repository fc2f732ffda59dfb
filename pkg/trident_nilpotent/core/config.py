#!/usr/bin/env python3
# trident_nilpotent/core/config.py

"""
config.py – numerical constants and run configuration

The immutable ``Config`` holds every tolerance and default used by the
pipeline; ``RunConfig`` is the validated per-invocation configuration of
the command-line surface (flags and ``--config`` JSON files).
"""

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError

# -------------------------------------------------------------------
# Immutable configuration
# -------------------------------------------------------------------

@dataclass(frozen=True)
class Config:
    dimension: int = 6                  # configuration space R^6
    control_count: int = 3              # inputs u1..u3, fields g1..g3
    zero_tol: float = 1e-9              # dropped Taylor coefficients, is_zero
    rank_tol: float = 1e-8              # relative to the largest singular value
    identity_tol: float = 1e-12         # M·G = I check
    depth_cap: int = 4                  # longest bracket tried by growth_vector
    taylor_degree: int = 2              # enough for weights (1, 2)
    zero_samples: int = 64              # sample points for is_zero
    zero_seed: int = 20160101           # seed of the is_zero sample set
    fd_step: float = 1e-5               # central differences
    fd_tol: float = 1e-6                # symbolic vs finite-difference bracket
    slip_tol: float = 1e-8              # exact model counts as slip-free
    amplitude: float = 0.1
    omega: float = 1.0
    periods: int = 1
    steps: int = 2000
    sweep_amplitudes: Tuple[float, ...] = (0.2, 0.1, 0.05)
    csv_digits: int = 17

CFG = Config()

OUTPUT_ENV = "TRIDENT_OUTPUT_DIR"


def default_output_dir() -> Path:
    """Output directory from ``TRIDENT_OUTPUT_DIR``, ``./out`` otherwise."""
    return Path(os.getenv(OUTPUT_ENV, "out"))


def format_number(value: float) -> str:
    """Fixed 17-significant-digit rendering used by every CSV and JSON writer."""
    return format(float(value), f".{CFG.csv_digits}g")

# -------------------------------------------------------------------
# Run configuration (CLI)
# -------------------------------------------------------------------

class RunConfig(BaseModel):
    """Validated configuration of one CLI invocation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    model: Literal["original", "transformed", "dsl-file"] = "transformed"
    dsl_path: Optional[Path] = None
    point: Tuple[float, float, float, float, float, float] = (0.0,) * 6
    kind: Literal["bracket12", "bracket13", "bracket23"] = "bracket12"
    amplitude: float = Field(default=CFG.amplitude, ge=0.0)
    omega: float = Field(default=CFG.omega, gt=0.0)
    periods: int = Field(default=CFG.periods, ge=1)
    steps: int = Field(default=CFG.steps, ge=1)
    amplitudes: List[float] = Field(default_factory=lambda: list(CFG.sweep_amplitudes))
    output_dir: Path = Field(default_factory=default_output_dir)
    emit: Literal["csv", "svg", "both"] = "both"
    strict: bool = False
    workers: int = Field(default=4, ge=1)

    @field_validator("amplitudes")
    @classmethod
    def _amplitudes_nonnegative(cls, values: List[float]) -> List[float]:
        if not values or any(a < 0 for a in values):
            raise ValueError("sweep amplitudes must be a non-empty list of values >= 0")
        return values

    @classmethod
    def from_json_file(cls, path: Path, **overrides) -> "RunConfig":
        """
        Load a configuration file; explicit overrides win over file values.

        Raises:
            ConfigError: unreadable file or invalid values
        """
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.build(**data)

    @classmethod
    def build(cls, **values) -> "RunConfig":
        """Construct, converting pydantic validation failures to ``ConfigError``."""
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(str(e)) from e
