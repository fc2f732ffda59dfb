"""
Core services: configuration, errors, logging and the command-line surface
"""

from .config import CFG, Config, RunConfig
from .errors import TridentError

__all__ = ["CFG", "Config", "RunConfig", "TridentError"]
