"""Exception hierarchy for cubic-census.

Module Information:
    - Filename: errors.py
    - Module: errors
    - Location: src/cubic_census/

Every error raised on purpose by the package derives from
``CubicCensusError`` and from the closest builtin, so callers can catch
either. The CLI maps ``BudgetExceededError`` to exit code 2 and every other
``CubicCensusError`` to exit code 1.
"""

from __future__ import annotations

from typing import Any


class CubicCensusError(Exception):
    """Base class for package errors."""


class InvalidFieldError(CubicCensusError, ValueError):
    """The requested q is outside 2,3 ∤ q, q = p^k, k ≤ 2, q ≤ 49."""


class DomainError(CubicCensusError, ValueError):
    """An operation was called outside its precondition."""


class PrecisionError(CubicCensusError, ArithmeticError):
    """A Laurent coefficient was needed beyond the known precision."""


class HenselError(CubicCensusError, ArithmeticError):
    """Newton lifting was started from a root that is not simple mod π."""


class IntegrationError(CubicCensusError, RuntimeError):
    """Local integration reached its depth cap without resolving a region."""


class RootFindingError(CubicCensusError, RuntimeError):
    """Numerical root extraction failed."""


class SplittingDataError(CubicCensusError, ArithmeticError):
    """Prime counts produced a non-integral L-polynomial coefficient."""


class AcceptanceError(CubicCensusError, AssertionError):
    """A verification check failed."""


class BudgetExceededError(CubicCensusError, RuntimeError):
    """A work budget ran out; ``partial`` holds whatever was finished."""

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial


__all__ = [
    "CubicCensusError",
    "InvalidFieldError",
    "DomainError",
    "PrecisionError",
    "HenselError",
    "IntegrationError",
    "RootFindingError",
    "SplittingDataError",
    "AcceptanceError",
    "BudgetExceededError",
]
