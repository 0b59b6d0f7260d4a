"""Test finite Fourier transforms of form statistics modulo P.

Module Information:
    - Filename: test_fourier.py
    - Module: test_fourier
    - Location: tests/
"""

from fractions import Fraction

import numpy as np
import pytest

from cubic_census.errors import AcceptanceError, BudgetExceededError, DomainError
from cubic_census.ffpoly import PolyFq, ResidueRing, get_field
from cubic_census.forms import SPLITTING_ORDER, SplittingType, splitting_type_table
from cubic_census.fourier import (
    DualForm,
    brute_fourier,
    fourier_table,
    max_closed_deviation,
    nu,
    omega_values,
    parseval_gap,
    rationalize,
)

F5 = get_field(5)
T = PolyFq.T(F5)
RING = ResidueRing(T)


def test_splitting_table_counts():
    """Forms over F_5 by type: 80, 240, 160, 120, 24 and the zero form."""
    codes, _ = splitting_type_table(RING)
    counts = [int(np.sum(codes == i)) for i in range(len(SPLITTING_ORDER))]
    assert counts == [80, 240, 160, 120, 24, 1]


def test_transform_of_constant_is_delta():
    """The transform of 1 is 1 at y = 0 and vanishes elsewhere."""
    table = fourier_table(np.ones((5,) * 4), RING)
    assert table[0, 0, 0, 0] == pytest.approx(1)
    table[0, 0, 0, 0] = 0
    assert np.max(np.abs(table)) < 1e-9


def test_parseval():
    """Plancherel holds for ω_P."""
    assert abs(parseval_gap(omega_values(RING), RING)) < 1e-8


def test_brute_matches_table():
    """Direct summation agrees with the tensor transform."""
    values = omega_values(RING)
    y = DualForm(RING, (1, 2, 0, 3))
    assert abs(brute_fourier(values, y) - fourier_table(values, RING)[1, 2, 0, 3]) < 1e-9


@pytest.mark.parametrize("tilde", [False, True])
def test_closed_forms_match_brute_force(tilde):
    """ω̂_P and the transform of ω̃_P agree with their closed forms at every y."""
    assert max_closed_deviation(RING, T, tilde=tilde) < 1e-9


def test_nu_at_zero_is_density():
    """At y = 0 the transform of an indicator is the share of that type."""
    assert nu(1, SplittingType.S111, T) == Fraction(80, 625)
    assert nu(1, SplittingType.S13, T) == Fraction(24, 625)


def test_nu_rejects_bad_anchor():
    """Only the three anchors are defined."""
    with pytest.raises(DomainError):
        nu(4, SplittingType.S3, T)


def test_budget_is_enforced():
    """A table larger than the budget is refused."""
    with pytest.raises(BudgetExceededError):
        fourier_table(np.ones((5,) * 4), RING, budget=100)


def test_rationalize():
    """Values close to n/d are snapped; anything else is an acceptance failure."""
    assert rationalize(0.25 + 1e-12j, 4) == Fraction(1, 4)
    with pytest.raises(AcceptanceError):
        rationalize(0.3, 2)
