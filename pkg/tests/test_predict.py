"""Test the closed-form main and secondary terms.

Module Information:
    - Filename: test_predict.py
    - Module: test_predict
    - Location: tests/
"""

from fractions import Fraction

import pytest

from cubic_census.errors import DomainError
from cubic_census.ffpoly import PolyFq, get_field, primes_of_degree
from cubic_census.forms import NONZERO_TYPES, SplittingType
from cubic_census.predict import (
    C2_star,
    c1_split,
    c_S,
    collapse_element,
    d_P,
    dominance_threshold,
    euler_collapse_product,
    inverse_depth,
    inverse_local_factor,
    local_factor,
    main_coefficient,
    onelevel_inequality,
    predict_split,
    predict_total,
    predicted_split_fraction,
    secondary_table,
    secondary_assembly_check,
)
from cubic_census.qsixth import QSixth, SecondaryElem

F5 = get_field(5)
T = PolyFq.T(F5)


def test_main_coefficient_q5():
    """(q² − 1)(q³ − 1)/(q⁴(q − 1)) at q = 5."""
    assert main_coefficient(5) == Fraction(744, 625)


def test_predict_total_main_term():
    """The main term is the coefficient times q^M."""
    result = predict_total(5, 6)
    assert result.main_exact == Fraction(744, 625) * 5**6
    assert result.combined == pytest.approx(result.main + result.secondary)
    assert result.secondary < 0


def test_predict_rejects_odd_exponent():
    """Global discriminant exponents are even."""
    with pytest.raises(DomainError):
        predict_total(5, 7)


@pytest.mark.parametrize("q", [5, 7, 25])
def test_secondary_constant_assembles(q):
    """(q² − 1)C₂(M) matches its table and C₂*(M) − q^{−2/3}C₂*(M − 2) in every residue class."""
    for _, lhs, table, rhs in secondary_assembly_check(q):
        assert lhs == table == rhs


@pytest.mark.parametrize("M", [6, 8, 10])
def test_unconditioned_split_equals_total(M):
    """With no conditions the splitting prediction is the total prediction."""
    total, split = predict_total(5, M), predict_split(5, M, [])
    assert split.main_exact == total.main_exact
    assert split.secondary_exact == total.secondary_exact


def test_conditioned_main_term():
    """Each condition multiplies the main term by c_S x_P."""
    result = predict_split(5, 8, [(T, SplittingType.S111)])
    assert result.main_exact == Fraction(744, 625) * 5**8 * Fraction(1, 6) / (1 + Fraction(1, 5) + Fraction(1, 25))


@pytest.mark.parametrize("d", [1, 2])
def test_splitting_constants_partition(d):
    """Σ_S c_S = 1 + |P|⁻¹ + |P|⁻², so the C₁ shares add up to the total."""
    P = primes_of_degree(5, d)[0]
    norm = Fraction(P.norm())
    assert sum(c_S(s, P) for s in NONZERO_TYPES) == 1 + 1 / norm + 1 / norm**2
    assert sum(c1_split(P, s) for s in NONZERO_TYPES) == main_coefficient(5)


def test_split_conditions_are_validated():
    """Non-primes, repeated primes and the zero type are refused."""
    with pytest.raises(DomainError):
        predict_split(5, 6, [(T * T, SplittingType.S111)])
    with pytest.raises(DomainError):
        predict_split(5, 6, [(T, SplittingType.S111), (T, SplittingType.S3)])
    with pytest.raises(DomainError):
        predict_split(5, 6, [(T, SplittingType.ZERO)])


def test_inverse_local_factor_telescopes():
    """The local factor times its truncated inverse leaves one tail term."""
    P = primes_of_degree(5, 2)[0]
    depth = inverse_depth(P)
    product = local_factor(P) @ inverse_local_factor(P)
    tail = -2 * (depth + 1) * P.deg
    assert set(product.shifts()) == {0, tail}
    assert product.coefficient(0) == 1
    assert product.coefficient(tail) == -QSixth.power(5, -10 * (depth + 1) * P.deg)


def test_inequality_combination_of_local_factors():
    """2d(111) − d(3) + d(1²1) = −Q⁻²φ(0) − Q^{−5/3}φ(−2) + Q^{−1/3}(1 + Q⁻¹)φ(−4) at Q = 5."""
    combo = d_P(SplittingType.S111, T) * 2 - d_P(SplittingType.S3, T) + d_P(SplittingType.S121, T)
    expected = SecondaryElem(
        5,
        {
            0: QSixth.of(5, Fraction(-1, 25)),
            -2: -QSixth.power(5, -10),
            -4: QSixth.power(5, -2, Fraction(6, 5)),
        },
    )
    assert combo == expected


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("M", [4, 6, 8])
def test_onelevel_inequality_is_negative(d, M):
    """The secondary combination is negative with a positive bracket."""
    result = onelevel_inequality(primes_of_degree(5, d)[0], M)
    assert result.negative
    assert result.bracket > 0


def test_onelevel_leading_term_factor():
    """The φ(−4 deg P) coefficient of 2d(111) − d(3) + d(1²1) is |P|^{−1/3}(1 + |P|^{−1}),
    so the leading term is −(1/q)|P|^{−1/3}(1 − |P|^{−2}) times the bracket."""
    P = T + 1  # noqa: N806
    combined = d_P(SplittingType.S111, P) * 2 - d_P(SplittingType.S3, P) + d_P(SplittingType.S121, P)
    assert float(combined.coefficient(-4)) == pytest.approx(5 ** (-1 / 3) * (1 + 1 / 5))
    result = onelevel_inequality(P, 8)
    assert result.leading == pytest.approx(-result.bracket * 5 ** (-1 / 3) * (1 - 1 / 25) / 5)


def test_onelevel_inequality_checks_field():
    """A prime over F_5 cannot be used with q = 7."""
    with pytest.raises(DomainError):
        onelevel_inequality(T, 6, q=7)


def test_euler_collapse_matches_through_degree():
    """Π_P(φ(0) − φ(−2deg P)|P|^{−5/3}) agrees with φ(0) − q^{−2/3}φ(−2) up to the truncation degree."""
    product = euler_collapse_product(5, 4)
    target = collapse_element(5)
    for n in range(0, 5):
        assert product.coefficient(-2 * n) == target.coefficient(-2 * n)


def test_c2_star_is_periodic():
    """C₂*(k) only depends on k mod 3."""
    assert C2_star(4, 7) == C2_star(1, 7)
    assert C2_star(-1, 7) == C2_star(2, 7)


def test_dominance_threshold():
    """From the threshold on the secondary term stays below the main term."""
    m0 = dominance_threshold(5, max_M=40)
    assert m0 % 2 == 0
    for M in range(m0, 41, 2):
        result = predict_total(5, M)
        assert abs(result.secondary) < result.main


def test_split_fraction_main_shares():
    """For large M the predicted shares approach c_S x_P."""
    share = predicted_split_fraction(5, 60, T, SplittingType.S21)
    assert share == pytest.approx(0.5 / (1 + 0.2 + 0.04), rel=1e-6)


def test_secondary_table_shape():
    """One row per coarse σ and ℓ mod 3."""
    rows = secondary_table(5)
    assert len(rows) == 15
    assert {r["ell_mod3"] for r in rows} == {0, 1, 2}
