"""Test the field census, splitting counts and form orbit counts.

Module Information:
    - Filename: test_census.py
    - Module: test_census
    - Location: tests/

The census runs on a tiny generator box (deg A, deg B ≤ 1) so the suite
stays fast; it still contains the pure cubic field x³ + T.
"""

import itertools
import json

import pytest

from cubic_census.census import (
    EnumBounds,
    FieldRecord,
    _candidate,
    canonicalize,
    count_fields_split,
    enumerate_fields,
    enumerate_form_orbits,
    field_counts_by_type,
    generator_form,
    is_reduced_generator,
    stabilizer_weight,
)
from cubic_census.errors import BudgetExceededError, DomainError
from cubic_census.ffpoly import PolyFq, get_field, primes_of_degree
from cubic_census.forms import CubicForm, GL2Elem, SplittingType, gl2_act
from cubic_census.infinity import SigmaClass

F5 = get_field(5)
T = PolyFq.T(F5)
ZERO = PolyFq.zero(F5)
TINY = EnumBounds(deg_a=1, deg_b=1, margin=0)


@pytest.fixture(scope="module")
def tiny_census():
    """Fields of discriminant exponent 4 with generators in the tiny box."""
    return enumerate_fields(5, 4, TINY)


def test_for_exponent_bounds():
    """The default box follows M: deg A ≤ (M + 2)/3, deg B ≤ M/2."""
    bounds = EnumBounds.for_exponent(8)
    assert (bounds.deg_a, bounds.deg_b) == (3, 4)


def test_reduced_generators():
    """Unit-scaled and non-primitive generators are skipped."""
    assert is_reduced_generator(ZERO, T)
    assert not is_reduced_generator(ZERO, T.scale(2))
    assert not is_reduced_generator(T * T, T**3)
    assert not is_reduced_generator(ZERO, ZERO)


def test_candidate_pure_cubic():
    """x³ + T is an S₃ field with M = 4, totally ramified at T and at infinity."""
    cand = _candidate(F5, ZERO, T, 4, 1)
    assert cand is not None and cand["bookkeeping_ok"]
    record = FieldRecord.from_json(cand["record"])
    assert record.M == 4
    assert record.sigma == SigmaClass(SplittingType.S13)
    assert not record.galois
    assert record.splitting_at(T) is SplittingType.S13
    assert FieldRecord.from_json(json.loads(json.dumps(record.to_json()))) == record


def test_candidate_wrong_exponent():
    """The same generator is rejected for another M."""
    assert _candidate(F5, ZERO, T, 6, 1) is None


def test_census_tiny_box(tiny_census):
    """Every field found has M = 4 and the type counts at each prime add up."""
    assert tiny_census.count >= 1
    assert not tiny_census.partial
    assert tiny_census.bookkeeping_failures == 0
    assert all(rec.M == 4 for rec in tiny_census.fields)
    for P in primes_of_degree(5, 1) + primes_of_degree(5, 2):
        assert sum(field_counts_by_type(tiny_census, P).values()) == tiny_census.count


def test_count_fields_split(tiny_census):
    """No conditions counts everything; the conditioned counts partition it."""
    assert count_fields_split(tiny_census) == tiny_census.count
    by_type = sum(count_fields_split(tiny_census, [(T, s)]) for s in SplittingType if s is not SplittingType.ZERO)
    assert by_type == tiny_census.count
    with pytest.raises(DomainError):
        count_fields_split(tiny_census, [(T, SplittingType.S3), (T, SplittingType.S21)])


def test_census_is_scheduling_independent(tiny_census):
    """A different mapper returns the same fields in the same order."""
    again = enumerate_fields(5, 4, TINY, mapper=lambda fn, tasks: [fn(t) for t in reversed(list(tasks))])
    assert again.fields == tiny_census.fields


def test_census_resumes_from_log(tmp_path, tiny_census):
    """A second run over the same log reproduces the census."""
    log = tmp_path / "candidates.jsonl"
    first = enumerate_fields(5, 4, TINY, log_path=log)
    lines = log.read_text(encoding="utf-8").splitlines()
    assert json.loads(lines[0])["kind"] == "header"
    second = enumerate_fields(5, 4, TINY, log_path=log, mapper=lambda fn, tasks: [fn(t) for t in tasks])
    assert first.fields == second.fields == tiny_census.fields


def test_census_budget_gives_partial():
    """A budget smaller than the box raises with the partial census attached."""
    with pytest.raises(BudgetExceededError) as info:
        enumerate_fields(5, 4, EnumBounds(deg_a=1, deg_b=1, margin=0, budget=75))
    assert info.value.partial.partial
    assert not info.value.partial.stable


def test_census_rejects_odd_exponent():
    """Discriminant exponents of cubic fields are even."""
    with pytest.raises(DomainError):
        enumerate_fields(5, 5, TINY)


def test_canonicalize_is_idempotent_and_scale_invariant():
    """Canonical forms are fixed points and ignore diagonal scalings."""
    f = generator_form(T + 1, T * T + 3)
    c = canonicalize(f)
    assert canonicalize(c) == c
    scaled = gl2_act(GL2Elem.diag(PolyFq.constant(F5, 2), PolyFq.constant(F5, 3)), f)
    assert canonicalize(scaled) == c


def test_canonicalize_agrees_across_gl2_fq():
    """f and g·f share a canonical form for all 480 g ∈ GL₂(F₅)."""
    f = CubicForm.from_ints(F5, 1, 0, 1, 1)
    base = canonicalize(f)
    count = 0
    for p, s, r, t in itertools.product(range(5), repeat=4):
        if (p * t - s * r) % 5 == 0:
            continue
        g = GL2Elem(*(PolyFq.constant(F5, x) for x in (p, s, r, t)))
        assert canonicalize(gl2_act(g, f)) == base
        count += 1
    assert count == 480


@pytest.mark.parametrize("shear", [GL2Elem.lower_shear, GL2Elem.upper_shear])
@pytest.mark.parametrize("c", [1, 2, 4])
def test_canonicalize_undoes_polynomial_shears(shear, c):
    """Shearing x³ + T y³ by c·T leads back to the same representative."""
    f = generator_form(ZERO, T)
    g = shear(T.scale(c))
    assert canonicalize(gl2_act(g, f), reach=1) == canonicalize(f, reach=1) == f


def test_canonicalize_rejects_singular_form():
    """A form with zero discriminant has no canonical representative."""
    with pytest.raises(DomainError):
        canonicalize(CubicForm.from_ints(F5, 1, 0, 0, 0))


def test_stabilizer_weight():
    """Cyclic cubic forms carry weight 3."""
    assert stabilizer_weight(CubicForm.from_ints(F5, 1, 0, 1, 1)) == 3
    assert stabilizer_weight(generator_form(ZERO, T)) == 1


def test_form_orbits_constant_cyclic():
    """The 160 irreducible constant forms over F₅ make one GL₂(F₅)-orbit."""
    result = enumerate_form_orbits(5, 0, SplittingType.S3, EnumBounds(0, 0, margin=0))
    # a = 1, b = 0 and c, d ∈ F₅
    assert result.forms_scanned == 25
    assert result.orbits == 1
    assert result.irreducible == result.galois == 1
    assert result.reducible == 0
    assert result.weighted == 3
    assert result.stable is True


def test_form_orbits_split_constant_forms():
    """Constant forms with three roots in F₅ make one reducible orbit."""
    result = enumerate_form_orbits(5, 0, SplittingType.S111, EnumBounds(0, 0, margin=0))
    assert result.orbits == 1
    assert result.reducible == 1
    assert result.irreducible == result.weighted == 0


def test_form_orbits_stability_skipped_past_budget():
    """When the margin + 1 pass does not fit, stability is left open."""
    result = enumerate_form_orbits(5, 0, SplittingType.S3, EnumBounds(0, 0, margin=0, budget=100))
    assert result.orbits == 1
    assert result.stable is None


def test_form_orbits_budget():
    """A degree box past the budget is refused."""
    with pytest.raises(BudgetExceededError):
        enumerate_form_orbits(5, 0, SplittingType.S3, EnumBounds(0, 0, margin=2, budget=10))
