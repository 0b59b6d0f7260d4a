"""Entry point for the cubic-census command line.

Module Information:
    - Filename: main.py
    - Module: main
    - Location: src/cubic_census/

Key Concepts:
    - ``cubic-census`` (the console script) and ``python -m cubic_census.main``
      both land here.
    - Argument parsing, configuration and dispatch live in ``cli``; this module
      only converts unexpected crashes into a logged failure and exit code 1.

Example:
    cubic-census predict --q 5 --M 8
    cubic-census verify --q 5 --threads 4
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Sequence

from .cli import run
from .utils_logger import logger

#####################################
# main()
#####################################


def main(argv: Sequence[str] | None = None) -> int:
    """Run one cubic-census subcommand.

    Returns:
        int: 0 on success, 1 on failure, 2 when a budget ran out.
    """
    try:
        return run(argv)
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return 1


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    raise SystemExit(main())


#####################################
# List all exports
#####################################

__all__ = ["main"]
