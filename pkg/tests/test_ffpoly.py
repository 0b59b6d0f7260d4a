"""Test exact arithmetic in F_q, F_q[T] and residue rings.

Module Information:
    - Filename: test_ffpoly.py
    - Module: test_ffpoly
    - Location: tests/
"""

from fractions import Fraction

import pytest

from cubic_census.errors import DomainError, InvalidFieldError
from cubic_census.ffpoly import (
    PolyFq,
    ResidueRing,
    check_q,
    gcd,
    get_field,
    is_irreducible,
    moebius,
    poly_factor,
    poly_sqrt,
    prime_count,
    primes_of_degree,
    sigma_divisors,
    xgcd,
    zeta_R,
)

F5 = get_field(5)


def poly(*coeffs: int) -> PolyFq:
    """Build a polynomial over F_5 from constant-first coefficients."""
    return PolyFq.from_ints(F5, coeffs)


@pytest.mark.parametrize("q", [2, 3, 4, 6, 9, 121, 125])
def test_check_q_rejects_unsupported(q):
    """Characteristic 2 or 3, non prime powers and large fields are refused."""
    with pytest.raises(InvalidFieldError):
        check_q(q)


@pytest.mark.parametrize(("q", "expected"), [(5, (5, 1)), (7, (7, 1)), (25, (5, 2)), (49, (7, 2))])
def test_check_q_accepts_supported(q, expected):
    """Supported q return their (p, k) decomposition."""
    assert check_q(q) == expected


@pytest.mark.parametrize("q", [5, 25])
def test_field_inverses(q):
    """Every nonzero element times its inverse is one."""
    fq = get_field(q)
    for a in range(1, q):
        assert fq.mul(a, fq.inv(a)) == 1


def test_field_squares_in_f5():
    """The squares of F_5 are 0, 1 and 4."""
    assert [a for a in range(5) if F5.is_square(a)] == [0, 1, 4]
    assert F5.least_nonsquare() == 2


def test_divmod_reconstructs():
    """a = (a // b) * b + a % b with deg(a % b) < deg b."""
    a = poly(3, 0, 2, 1, 4, 1)
    b = poly(2, 1, 3)
    quot, rem = divmod(a, b)
    assert quot * b + rem == a
    assert rem.deg < b.deg


def test_gcd_is_monic_common_factor():
    """gcd((T+1)(T+2), 2(T+1)(T+3)) = T+1."""
    a = poly(1, 1) * poly(2, 1)
    b = (poly(1, 1) * poly(3, 1)).scale(2)
    assert gcd(a, b) == poly(1, 1)


def test_xgcd_bezout():
    """u a + v b equals the gcd."""
    a, b = poly(2, 0, 1), poly(1, 1)
    g, u, v = xgcd(a, b)
    assert u * a + v * b == g


def test_poly_sqrt():
    """Squares have their square root recovered and non-squares give None."""
    h = poly(3, 2, 1)
    root = poly_sqrt(h * h)
    assert root is not None and root * root == h * h
    assert poly_sqrt(poly(0, 1)) is None
    assert poly_sqrt(poly(2, 0, 1)) is None


@pytest.mark.parametrize(("q", "d", "expected"), [(5, 1, 5), (5, 2, 10), (5, 3, 40), (7, 2, 21)])
def test_prime_count(q, d, expected):
    """The number of monic irreducibles of degree d."""
    assert prime_count(q, d) == expected
    assert len(primes_of_degree(q, d)) == expected


def test_is_irreducible_quadratics():
    """T^2 + 2 is irreducible over F_5, T^2 + 1 is not."""
    assert is_irreducible(poly(2, 0, 1))
    assert not is_irreducible(poly(1, 0, 1))


def test_poly_factor_expands_back():
    """A factorization multiplies back to the input."""
    f = (poly(0, 1) ** 2 * poly(1, 1) ** 3 * poly(2, 0, 1)).scale(3)
    fac = poly_factor(f, seed=7)
    assert fac.expand(F5) == f
    assert fac.unit == 3
    assert dict(fac.factors) == {poly(0, 1): 2, poly(1, 1): 3, poly(2, 0, 1): 1}


def test_poly_factor_is_reproducible():
    """The same seed gives the same factorization."""
    f = poly(1, 0, 0, 0, 1) * poly(2, 1)
    assert poly_factor(f, seed=3) == poly_factor(f, seed=3)


def test_moebius_and_sigma():
    """μ and σ on small monic polynomials over F_5."""
    assert moebius(poly(0, 1) * poly(1, 1)) == 1
    assert moebius(poly(0, 0, 1)) == 0
    assert moebius(poly(2, 0, 1)) == -1
    assert sigma_divisors(poly(0, 1) * poly(1, 1)) == 36


def test_moebius_rejects_non_monic():
    """Arithmetic functions need monic input."""
    with pytest.raises(DomainError):
        moebius(poly(0, 2))


def test_zeta_values():
    """ζ_R(2) = 1/(1 - 1/q)."""
    assert zeta_R(5, 2) == Fraction(5, 4)
    with pytest.raises(DomainError):
        zeta_R(5, 1)


def test_residue_ring_indexing():
    """element and index are inverse bijections on R/F."""
    ring = ResidueRing(poly(2, 0, 1))
    assert ring.size == 25
    assert all(ring.index(ring.element(i)) == i for i in range(ring.size))


def test_residue_ring_tables_match_arithmetic():
    """The numpy tables agree with direct arithmetic."""
    ring = ResidueRing(poly(1, 1) * poly(2, 1))
    add, mul = ring.tables()
    a, b = ring.element(7), ring.element(13)
    assert add[7, 13] == ring.index(a + b)
    assert mul[7, 13] == ring.index(a * b)
