"""Test exact scalars in Q(q^(1/6)) and the φ-symbol algebra.

Module Information:
    - Filename: test_qsixth.py
    - Module: test_qsixth
    - Location: tests/
"""

from fractions import Fraction
import math

import pytest

from cubic_census.errors import DomainError
from cubic_census.qsixth import QSixth, SecondaryElem, isclose


def test_integer_powers_are_rational():
    """q^(6/6) is q itself."""
    assert QSixth.power(5, 6) == 5
    assert QSixth.power(5, -6).as_fraction() == Fraction(1, 5)


def test_cube_roots_multiply():
    """(q^(1/3))^3 = q."""
    assert QSixth.power(7, 2) ** 3 == 7


def test_float_value():
    """Floats follow q^(s/6)."""
    assert math.isclose(float(QSixth.power(5, 4, 2)), 2 * 5 ** (2 / 3))


def test_quadratic_field_powers():
    """For q = 25 the base is 5 and q^(1/6) = 5^(1/3)."""
    x = QSixth.power(25, 1)
    assert x.p == 5
    assert x**3 == 5


def test_irrational_as_fraction_raises():
    """Only rational elements convert to Fraction."""
    with pytest.raises(DomainError):
        QSixth.power(5, 1).as_fraction()


def test_mixing_q_raises():
    """Elements attached to different q do not mix."""
    with pytest.raises(DomainError):
        QSixth.of(5, 1) + QSixth.of(7, 1)


def test_division_by_monomial():
    """Dividing by a monomial multiplies by its inverse."""
    x = QSixth.power(5, 4) + QSixth.power(5, 2)
    assert x / QSixth.power(5, 2) == QSixth.power(5, 2) + 1


def test_tensor_adds_shifts():
    """φ(-2) ⊗ φ(-4) = φ(-6), coefficients multiplied."""
    a = SecondaryElem.phi(5, -2, 3)
    b = SecondaryElem.phi(5, -4, QSixth.power(5, 2))
    assert a @ b == SecondaryElem.phi(5, -6, QSixth.power(5, 2, 3))


def test_odd_shift_rejected():
    """Every φ-shift is even."""
    with pytest.raises(DomainError):
        SecondaryElem.phi(5, -1)


def test_cancellation_drops_terms():
    """x - x has no terms."""
    x = SecondaryElem.phi(5, 0, 2) + SecondaryElem.phi(5, -2, 1)
    assert (x - x).terms == {}


def test_truncate_and_evaluate():
    """Truncation drops deep shifts; evaluation is linear in the coefficients."""
    x = SecondaryElem.phi(5, 0, 1) + SecondaryElem.phi(5, -2, 2) + SecondaryElem.phi(5, -4, 4)
    assert list(x.truncate(-2).shifts()) == [0, -2]
    value = x.evaluate(lambda n: QSixth.of(5, -n))
    assert isclose(value, QSixth.of(5, 2 * 2 + 4 * 4))
