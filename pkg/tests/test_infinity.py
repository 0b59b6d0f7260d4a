"""Test σ-classes at infinity and the exact C₂ integrals.

Module Information:
    - Filename: test_infinity.py
    - Module: test_infinity
    - Location: tests/
"""

import pytest

from cubic_census.errors import DomainError
from cubic_census.ffpoly import get_field
from cubic_census.forms import NONZERO_TYPES, CubicForm, SplittingType
from cubic_census.infinity import (
    SigmaClass,
    aut_order,
    c2_closed,
    c2_star_from_integrals,
    classify_at_infinity,
    eval_C2,
    fine_classes,
    gamma,
)
from cubic_census.predict import C2_star
from cubic_census.qsixth import QSixth

F5 = get_field(5)


def test_fine_classes_depend_on_cube_roots_of_unity():
    """Three (1³) classes when q ≡ 1 mod 3, one otherwise."""
    assert len(fine_classes(5)) == 6
    assert len(fine_classes(7)) == 8


def test_sigma_label_parse():
    """Labels carry the fine index of ramified classes only."""
    sig = SigmaClass.parse("(1^2 1)_1")
    assert sig == SigmaClass(SplittingType.S121, 1)
    assert sig.label == "(1^2 1)_1"
    assert SigmaClass(SplittingType.S21).label == "(21)"


def test_sigma_rejects_bad_index_and_zero():
    """Out-of-range indices and the (0) type are not σ-classes."""
    with pytest.raises(DomainError):
        SigmaClass(SplittingType.S111, 1)
    with pytest.raises(DomainError):
        SigmaClass(SplittingType.ZERO)


def test_gamma_and_aut():
    """γ is 0, 1, 2 by ramification; #Aut of (1³) depends on q mod 3."""
    assert [gamma(s) for s in NONZERO_TYPES] == [0, 0, 0, 1, 2]
    assert aut_order(SplittingType.S111, 5) == 6
    assert aut_order(SplittingType.S13, 5) == 1
    assert aut_order(SplittingType.S13, 7) == 3


@pytest.mark.parametrize("q", [5, 7])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_c2_star_assembles_from_table(q, k):
    """Σ_σ q^{-5γ/6}/#Aut · C₂^σ(k − γ) equals C₂*(k)."""
    assert c2_star_from_integrals(k, q, closed=True) == C2_star(k, q)


def test_c2_star_residue_zero_value():
    """C₂*(0) = q + 3 + q⁻¹."""
    q = 5
    assert C2_star(0, q) == QSixth.of(q, q + 3) + QSixth.power(q, -6)


@pytest.mark.parametrize("stype", NONZERO_TYPES)
@pytest.mark.parametrize("ell", [0, 1, 2])
def test_integrals_match_table(stype, ell):
    """The exact local integral reproduces each tabulated C₂^σ(ℓ) for q = 5."""
    assert eval_C2(SigmaClass(stype), ell, 5) == c2_closed(stype, ell, 5)


@pytest.mark.parametrize(
    ("coeffs", "expected"),
    [((1, 0, 1, 1), SplittingType.S3), ((1, 0, 0, 3), SplittingType.S21), ((0, 1, 4, 0), SplittingType.S111)],
)
def test_constant_forms_are_unramified_at_infinity(coeffs, expected):
    """A form with constant coefficients reads σ off its own reduction."""
    data = classify_at_infinity(CubicForm.from_ints(F5, *coeffs))
    assert data.sigma == SigmaClass(expected)
    assert data.gamma == 0


def test_totally_ramified_at_infinity():
    """x³ + T y³ is totally ramified at infinity with γ = 2."""
    data = classify_at_infinity(CubicForm.from_ints(F5, 1, 0, 0, [0, 1]))
    assert data.sigma.coarse is SplittingType.S13
    assert data.gamma == 2


def test_classify_rejects_singular_form():
    """A form with zero discriminant has no étale algebra."""
    with pytest.raises(DomainError):
        classify_at_infinity(CubicForm.from_ints(F5, 1, 0, 0, 0))
