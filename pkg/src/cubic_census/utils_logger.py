"""Shared loguru logging for the cubic-census package.

Module Information:
    - Filename: utils_logger.py
    - Module: utils_logger
    - Location: src/cubic_census/

Every module logs through the single loguru ``logger``. Library modules bind
their own name once (``LOGGER = get_logger(__name__)``) so each line in the
console and in ``logs/project.log`` shows where it came from.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

import os
from pathlib import Path
import sys

from loguru import logger

#####################################
# Project-level directory references
#####################################

PROJECT_DIR = Path(__file__).resolve().parents[2]
LOG_DIR = PROJECT_DIR / "logs"
LOG_FILE_NAME = "project.log"
LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {extra[name]} | {message}"
ENV_LOG_LEVEL = "CUBIC_CENSUS_LOG_LEVEL"

_current_log_dir: Path = LOG_DIR

logger.configure(extra={"name": "cubic_census"})

#####################################
# Define Functions
#####################################


def get_log_file_path() -> Path:
    """Return the path of the project log file."""
    return _current_log_dir / LOG_FILE_NAME


def init_logger(level: str = "INFO", log_dir: str | Path | None = None) -> None:
    """Install the console and file sinks, replacing any earlier ones.

    Args:
        level: Minimum level for both sinks. ``CUBIC_CENSUS_LOG_LEVEL`` wins
            when set.
        log_dir: Directory for ``project.log``; defaults to ``<project>/logs``.
    """
    global _current_log_dir

    level = os.environ.get(ENV_LOG_LEVEL, level).upper()
    _current_log_dir = Path(log_dir) if log_dir is not None else LOG_DIR
    _current_log_dir.mkdir(parents=True, exist_ok=True)

    logger.remove()
    logger.configure(extra={"name": "cubic_census"})
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)
    logger.add(get_log_file_path(), level=level, format=LOG_FORMAT, encoding="utf-8")


def get_logger(name: str = "cubic_census"):
    """Return the shared logger bound to a module name."""
    return logger.bind(name=name)


def log_example() -> None:
    """Write one line at each common level."""
    logger.debug("Debug detail (hidden at INFO).")
    logger.info("Logger ready.")
    logger.warning("Warnings look like this.")


#####################################
# main() (for standalone testing)
#####################################


def main() -> None:
    """Initialize logging and write the example lines."""
    init_logger()
    log_example()
    logger.info(f"Log file: {get_log_file_path()}")


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    main()


#####################################
# List all exports
#####################################

__all__ = ["logger", "init_logger", "get_logger", "get_log_file_path", "log_example", "main"]
