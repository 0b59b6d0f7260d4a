"""Test binary cubic forms, splitting types and maximality.

Module Information:
    - Filename: test_forms.py
    - Module: test_forms
    - Location: tests/
"""

import pytest

from cubic_census.errors import DomainError
from cubic_census.ffpoly import PolyFq, get_field
from cubic_census.forms import (
    CubicForm,
    GL2Elem,
    SplittingType,
    classify_mod_P,
    count_maximal_mod_P2,
    discriminant,
    gl2_act,
    is_galois,
    is_irreducible_form,
    is_maximal_at,
    ldf_ring,
    maximalize,
    omega_P,
    orbit_partition,
)

F5 = get_field(5)
T = PolyFq.T(F5)


def form(*coeffs) -> CubicForm:
    """A form over F_5[T]; each coefficient is a code or a constant-first list."""
    return CubicForm.from_ints(F5, *coeffs)


@pytest.mark.parametrize(
    ("text", "expected"),
    [("(111)", SplittingType.S111), ("21", SplittingType.S21), ("(1^2 1)", SplittingType.S121), ("(1³)", SplittingType.S13)],
)
def test_parse_splitting_type(text, expected):
    """Splitting types parse from the usual spellings."""
    assert SplittingType.parse(text) is expected


def test_parse_unknown_type_raises():
    """Unknown shapes are rejected."""
    with pytest.raises(DomainError):
        SplittingType.parse("(4)")


def test_residue_degrees():
    """Residue degrees of the places above P for each type."""
    assert SplittingType.S21.residue_degrees == (1, 2)
    assert SplittingType.S121.residue_degrees == (1, 1)
    assert SplittingType.S3.is_unramified
    assert not SplittingType.S13.is_unramified


@pytest.mark.parametrize(
    ("coeffs", "expected"),
    [
        ((0, 1, 4, 0), SplittingType.S111),
        ((1, 0, 0, 3), SplittingType.S21),
        ((1, 0, 1, 1), SplittingType.S3),
        ((0, 1, 0, 0), SplittingType.S121),
        ((1, 0, 0, 0), SplittingType.S13),
        (([0, 1], [0, 1], [0, 1], [0, 1]), SplittingType.ZERO),
    ],
)
def test_classify_mod_T(coeffs, expected):
    """One representative of each splitting type modulo T."""
    assert classify_mod_P(form(*coeffs), T) is expected


def test_omega_counts_roots():
    """xy(x - y) has three roots in P^1(F_5); x^3 has one."""
    assert omega_P(form(0, 1, 4, 0), T) == 3
    assert omega_P(form(1, 0, 0, 0), T) == 1


def test_lower_shear_updates_b():
    """(x + y)^3 = x^3 + 3x^2y + 3xy^2 + y^3."""
    one = PolyFq.one(F5)
    image = gl2_act(GL2Elem.lower_shear(one), form(1, 0, 0, 0))
    assert image == form(1, 3, 3, 1)


def test_unimodular_action_keeps_discriminant():
    """Shears have determinant one and fix the discriminant."""
    f = form(1, [0, 1], 2, [1, 0, 1])
    assert discriminant(gl2_act(GL2Elem.lower_shear(T), f)) == discriminant(f)
    assert discriminant(gl2_act(GL2Elem.upper_shear(T + 1), f)) == discriminant(f)


def test_orbit_partition_over_f5():
    """GL_2(F_5) has six orbits on the 625 forms, one per splitting type."""
    orbits = orbit_partition(F5)
    assert sorted(len(o) for o in orbits) == [1, 24, 80, 120, 160, 240]


def test_count_maximal_mod_p2():
    """q^8 (1 - q^-2)(1 - q^-3) forms over R/P^2 are maximal at P."""
    q = 5
    assert count_maximal_mod_P2(F5, T) == q**8 - q**6 - q**5 + q**3


def test_count_maximal_needs_degree_one():
    """The exhaustive count is limited to degree-one primes."""
    with pytest.raises(DomainError):
        count_maximal_mod_P2(F5, T * T + 2)


def test_maximalize_divides_content():
    """T(x^3 + y^3) loses its content T with index T^2."""
    g, index = maximalize(form([0, 1], 0, 0, [0, 1]))
    assert index == T * T
    assert g == form(1, 0, 0, 1)
    assert discriminant(form([0, 1], 0, 0, [0, 1])) == index * index * discriminant(g)
    assert is_maximal_at(g, T)


def test_maximalize_keeps_discriminant_relation():
    """Disc(f) = index^2 Disc(g) and g is maximal at every prime of the index."""
    f = form(1, 0, [0, 0, 1], [0, 0, 0, 1])
    g, index = maximalize(f)
    assert discriminant(f) == index * index * discriminant(g)


def test_irreducible_and_galois():
    """An F_5-irreducible constant cubic stays irreducible and is cyclic."""
    f = form(1, 0, 1, 1)
    assert is_irreducible_form(f)
    assert is_galois(f)
    assert not is_irreducible_form(form(0, 1, 4, 1))


def test_is_galois_rejects_reducible():
    """The Galois test is only defined for irreducible forms."""
    with pytest.raises(DomainError):
        is_galois(form([0, 1], 1, 4, 0))


def test_ldf_ring_discriminant_matches_form():
    """The trace-form discriminant of the ring equals Disc(f)."""
    f = form(1, [0, 1], 2, [1, 0, 1])
    ring = ldf_ring(f)
    assert ring.is_associative()
    assert ring.discriminant() == discriminant(f)
