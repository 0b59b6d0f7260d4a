"""Test one-level densities computed from zeros and from prime counts.

Module Information:
    - Filename: test_onelevel.py
    - Module: test_onelevel
    - Location: tests/
"""

import numpy as np
import pytest

from cubic_census.census import CensusResult, EnumBounds, FieldRecord
from cubic_census.errors import DomainError
from cubic_census.ffpoly import get_field
from cubic_census.forms import CubicForm
from cubic_census.infinity import classify_at_infinity
from cubic_census.onelevel import (
    D_L_explicit,
    D_L_from_zeros,
    TestFunction,
    check_fourier_pair,
    family_average,
    fejer_pair,
    trivial_bound,
)
from cubic_census.zeta import l_polynomial

F5 = get_field(5)


def record(coeffs, M) -> FieldRecord:
    """A field record for the pure cubic form x³ + d y³."""
    form = CubicForm.from_ints(F5, 1, 0, 0, coeffs)
    return FieldRecord(q=5, form=form, M=M, sigma=classify_at_infinity(form).sigma, galois=False)


def family(*records: FieldRecord) -> CensusResult:
    return CensusResult(
        q=5,
        M=records[0].M if records else 6,
        bounds=EnumBounds(1, 2),
        fields=tuple(records),
        galois_count=0,
        stable=True,
        partial=False,
        fingerprint_conflicts=0,
        generators_scanned=len(records),
    )


@pytest.fixture(scope="module")
def genus_one():
    """x³ + T(T + 1)y³ has M = 6 and zeros at angles ±π/2."""
    return record([0, 1, 1], 6)


@pytest.mark.parametrize(("supp", "expected"), [(1.0, 0.5), (0.5, 0.75)])
def test_symplectic_prediction(supp, expected):
    """ψ̂(0) − ψ(0)/2 = 1 − σ/2 for the Fejér pair."""
    assert fejer_pair(supp).symplectic_prediction() == pytest.approx(expected)


def test_fejer_needs_positive_support():
    """The support must be positive."""
    with pytest.raises(DomainError):
        fejer_pair(0.0)


def test_fejer_is_a_fourier_pair():
    """Quadrature confirms ψ̂ is the transform of ψ."""
    assert check_fourier_pair(fejer_pair(1.0), [0.0, 0.25, 0.5]) < 1e-4


def test_wrong_pair_is_rejected():
    """Doubling ψ̂ breaks the pair."""
    tf = fejer_pair(1.0)
    bad = TestFunction(1.0, tf.psi, lambda u: 2 * tf.psi_hat(u), name="doubled")
    with pytest.raises(DomainError):
        check_fourier_pair(bad, [0.0])


def test_two_ways_agree(genus_one):
    """The zero sum and the explicit formula both give 1 for σ = 1."""
    tf = fejer_pair(1.0)
    lp = l_polynomial(genus_one)
    from_zeros = D_L_from_zeros(lp, tf)
    assert from_zeros == pytest.approx(1.0, abs=1e-9)
    assert abs(from_zeros - D_L_explicit(genus_one, tf)) < 1e-6
    assert abs(from_zeros) <= trivial_bound(lp, tf)


@pytest.mark.parametrize("supp", [0.5, 0.75, 1.5, 2.0])
def test_two_ways_agree_other_supports(genus_one, supp):
    """The identity holds for supports beyond 1, and where σN_L is not an integer."""
    tf = fejer_pair(supp)
    lp = l_polynomial(genus_one)
    assert abs(D_L_from_zeros(lp, tf) - D_L_explicit(genus_one, tf)) < 1e-6


@pytest.mark.parametrize(("supp", "expected"), [(0.5, 1.0), (1.0, 1.0), (1.5, 1 / 3)])
def test_zero_sum_matches_fejer_kernel(genus_one, supp, expected):
    """With σN_L = m an integer the lattice sum is sin²(mθ/2)/(mN_L sin²(θ/2)) at θ = ±π/2."""
    lp = l_polynomial(genus_one)
    m = supp * 2
    kernel = sum(np.sin(m * t / 2) ** 2 / (m * 2 * np.sin(t / 2) ** 2) for t in lp.angles())
    assert kernel == pytest.approx(expected)
    assert D_L_from_zeros(lp, fejer_pair(supp)) == pytest.approx(expected, abs=1e-8)


def test_zero_sum_without_tail_is_truncated(genus_one):
    """A test function without a tail gets only the direct shifts, a hair below the full sum."""
    tf = fejer_pair(1.0)
    bare = TestFunction(tf.supp, tf.psi, tf.psi_hat)
    value = D_L_from_zeros(l_polynomial(genus_one), bare)
    assert 1.0 - 1e-4 < value < 1.0


def test_genus_zero_has_no_zeros():
    """M = 4 fields have D_L = 0 both ways."""
    rec = record([0, 1], 4)
    tf = fejer_pair(1.0)
    assert D_L_from_zeros(l_polynomial(rec), tf) == 0.0
    assert D_L_explicit(rec, tf) == 0.0


def test_explicit_needs_enough_coefficients(genus_one):
    """Asking for fewer c_n than ψ̂'s support reaches is an error."""
    with pytest.raises(DomainError):
        D_L_explicit(genus_one, fejer_pair(2.0), n_available=2)


def test_family_average(genus_one):
    """A one-field family reports that field's density and passes both checks."""
    report = family_average(family(genus_one), fejer_pair(1.0))
    assert report.family_size == 1
    assert report.average_explicit == pytest.approx(1.0, abs=1e-6)
    assert report.max_method_gap < 1e-6
    assert report.bound_ok
    assert report.gap == pytest.approx(0.5, abs=1e-6)
    assert np.isfinite(report.corrected_prediction)
    assert set(report.as_row()) >= {"M", "sigma_supp", "avg_D", "prediction", "gap", "family_size"}


def test_family_average_empty():
    """An empty family has no average."""
    with pytest.raises(DomainError):
        family_average(family(), fejer_pair(1.0))
