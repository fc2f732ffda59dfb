"""
Root-logger setup for the command-line surface

Library modules only create ``logging.getLogger(__name__)`` loggers; the CLI
calls ``configure_logging`` once.
"""

import logging
import sys

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = "[%(asctime)s] %(levelname)s - %(message)s"
JSON_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def configure_logging(json_output: bool = False, verbose: bool = False) -> None:
    """
    Install a single stderr handler on the root logger

    Args:
        json_output: emit one JSON object per record (python-json-logger)
        verbose: DEBUG instead of INFO
    """
    handler = logging.StreamHandler(sys.stderr)
    if json_output:
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
