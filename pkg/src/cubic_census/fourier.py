"""Characters on (R/F)⁴ and brute-force Fourier transforms of form statistics.

Module Information:
    - Filename: fourier.py
    - Module: fourier
    - Location: src/cubic_census/

Key Concepts:
    - χ_∞(x) = exp(−2πi/p · Tr(a₁)) reads the π¹ coefficient of x ∈ K_∞.
    - For F monic the character of a dual form y at x is χ_∞([x, y]/F),
      which only depends on the top coefficient of the representative of
      [x, y] = x₁y₁ + x₂y₂/3 + x₃y₃/3 + x₄y₄.
    - The character is separable in the four coordinates, so whole
      transforms are four tensor contractions with |F|×|F| matrices.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
import itertools
import math

import numpy as np

from .errors import AcceptanceError, BudgetExceededError, DomainError
from .ffpoly import PolyFq, ResidueElem, ResidueRing
from .forms import SPLITTING_ORDER, CubicForm, SplittingType, classify_mod_P, discriminant, splitting_type_table
from .laurent import LaurentElem
from .utils_logger import get_logger

LOGGER = get_logger(__name__)

DEFAULT_BUDGET = 10**7
ZERO_TOL = 1e-9

CharacterValue = complex

#####################################
# Dual forms and characters
#####################################


@dataclass(frozen=True)
class DualForm:
    """y = (y₁, y₂, y₃, y₄) over R/F, held as element indices."""

    ring: ResidueRing
    indices: tuple[int, int, int, int]

    @classmethod
    def zero(cls, ring: ResidueRing) -> DualForm:
        return cls(ring, (0, 0, 0, 0))

    @classmethod
    def from_elems(cls, ring: ResidueRing, elems: Sequence[ResidueElem | PolyFq | int]) -> DualForm:
        idx = tuple(ring.index(e if isinstance(e, ResidueElem) else ring(e)) for e in elems)
        return cls(ring, (idx[0], idx[1], idx[2], idx[3]))

    def elems(self) -> tuple[ResidueElem, ...]:
        return tuple(self.ring.element(i) for i in self.indices)

    def as_form(self) -> CubicForm:
        return CubicForm(*self.elems())

    @property
    def is_zero(self) -> bool:
        return not any(self.indices)


def _trace_character(field_trace: int, p: int) -> complex:
    return complex(np.exp(-2j * np.pi * field_trace / p))


def chi_infty(x: LaurentElem) -> CharacterValue:
    """exp(−2πi/p · Tr(a₁)) for the π¹ coefficient a₁ of x."""
    a1 = x.coefficient(1)
    return _trace_character(x.field.trace(a1), x.field.p)


def pairing(y: DualForm, x: Sequence[ResidueElem]) -> ResidueElem:
    """[x, y] = x₁y₁ + x₂y₂/3 + x₃y₃/3 + x₄y₄ in R/F."""
    ring = y.ring
    third = ring(3).inverse()
    ys = y.elems()
    return x[0] * ys[0] + (x[1] * ys[1] + x[2] * ys[2]) * third + x[3] * ys[3]


def chi(y: DualForm, x: Sequence[ResidueElem]) -> CharacterValue:
    """χ_∞([x, y]/F) with [x, y] lifted to its representative of degree < deg F."""
    ring = y.ring
    rep = pairing(y, x).rep
    prec = ring.degree + 2
    quotient = LaurentElem.from_poly(rep, prec) / LaurentElem.from_poly(ring.modulus, prec)
    return chi_infty(quotient)


def _weights(ring: ResidueRing) -> tuple[int, int, int, int]:
    third = ring.index(ring(3).inverse())
    one = ring.index(ring.one())
    return (one, third, third, one)


def character_matrices(ring: ResidueRing) -> list[np.ndarray]:
    """M_i[y, x] = χ(w_i · y · x) for the four pairing weights w_i."""
    _, mul = ring.tables()
    fq = ring.field
    top = ring.top_coefficient_table()
    phases = np.exp(-2j * np.pi * fq.trace_table / fq.p)
    out = []
    cache: dict[int, np.ndarray] = {}
    for w in _weights(ring):
        if w not in cache:
            wy = mul[w]
            products = mul[wy[:, None], np.arange(ring.size)[None, :]]
            cache[w] = phases[top[products]]
        out.append(cache[w])
    return out


#####################################
# Transforms
#####################################


def _check_budget(ring: ResidueRing, budget: int) -> None:
    if ring.size**4 > budget:
        raise BudgetExceededError(f"|R/F|⁴ = {ring.size**4} exceeds the budget {budget}")


def values_array(fn: Callable[[tuple[int, int, int, int]], float] | np.ndarray, ring: ResidueRing) -> np.ndarray:
    """Function values on (R/F)⁴ as an array indexed by element indices."""
    if isinstance(fn, np.ndarray):
        return fn
    shape = (ring.size,) * 4
    out = np.zeros(shape, dtype=float)
    for idx in itertools.product(range(ring.size), repeat=4):
        out[idx] = fn(idx)
    return out


def brute_fourier(
    fn: Callable[[tuple[int, int, int, int]], float] | np.ndarray,
    y: DualForm,
    ring: ResidueRing | None = None,
    budget: int = DEFAULT_BUDGET,
) -> complex:
    """|F|⁻⁴ Σ_x fn(x) χ_y(x) by direct summation."""
    ring = ring or y.ring
    _check_budget(ring, budget)
    values = values_array(fn, ring)
    mats = character_matrices(ring)
    rows = [mats[i][y.indices[i]] for i in range(4)]
    total = np.einsum("abcd,a,b,c,d->", values, *rows)
    return complex(total) / ring.size**4


def fourier_table(values: np.ndarray, ring: ResidueRing, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """f̂(y) for every dual form y at once."""
    _check_budget(ring, budget)
    out = values.astype(complex)
    for axis, mat in enumerate(character_matrices(ring)):
        out = np.moveaxis(np.tensordot(mat, out, axes=([1], [axis])), 0, axis)
    return out / ring.size**4


def parseval_gap(values: np.ndarray, ring: ResidueRing) -> float:
    """Σ_y |f̂(y)|² − |F|⁻⁴ Σ_x |f(x)|²."""
    table = fourier_table(values, ring)
    return float(np.sum(np.abs(table) ** 2) - np.sum(np.abs(values) ** 2) / ring.size**4)


#####################################
# Form statistics mod P
#####################################


def omega_values(ring: ResidueRing) -> np.ndarray:
    """ω_P(x): distinct roots in P¹(R/P), |P| + 1 on the zero form."""
    _, roots = splitting_type_table(ring)
    return roots.astype(float)


def omega_tilde_values(ring: ResidueRing) -> np.ndarray:
    """1 on nonzero singular forms, |P| + 1 at 0, 0 elsewhere."""
    codes, _ = splitting_type_table(ring)
    singular = (codes == SPLITTING_ORDER.index(SplittingType.S121)) | (codes == SPLITTING_ORDER.index(SplittingType.S13))
    out = singular.astype(float)
    out[0, 0, 0, 0] = ring.size + 1
    return out


def indicator_values(ring: ResidueRing, stype: SplittingType) -> np.ndarray:
    codes, _ = splitting_type_table(ring)
    return (codes == SPLITTING_ORDER.index(stype)).astype(float)


def reduction_indices(ring: ResidueRing, prime: PolyFq) -> np.ndarray:
    """Index in R/P of the reduction of every element of R/F, for P | F."""
    target = ResidueRing(prime)
    return np.array([target.index(ring.element(i).rep) for i in range(ring.size)], dtype=np.int64)


def omega_product_values(ring: ResidueRing, primes: Sequence[PolyFq]) -> np.ndarray:
    """ω_F = Π_P ω_P(x mod P) on (R/F)⁴ for squarefree F = Π P."""
    out = np.ones((ring.size,) * 4)
    for prime in primes:
        red = reduction_indices(ring, prime)
        local = omega_values(ResidueRing(prime))
        out = out * local[np.ix_(red, red, red, red)]
    return out


#####################################
# Closed forms
#####################################


def _as_form(y: DualForm | CubicForm) -> CubicForm:
    return y.as_form() if isinstance(y, DualForm) else y


def omega_hat_closed(P: PolyFq, y: DualForm | CubicForm) -> Fraction:  # noqa: N803
    """1 + |P|⁻¹ at y ≡ 0, |P|⁻¹ when y has a triple root mod P, 0 otherwise."""
    norm = P.norm()
    stype = classify_mod_P(_as_form(y), P)
    if stype is SplittingType.ZERO:
        return 1 + Fraction(1, norm)
    if stype is SplittingType.S13:
        return Fraction(1, norm)
    return Fraction(0)


def omega_tilde_hat_closed(P: PolyFq, y: DualForm | CubicForm) -> Fraction:  # noqa: N803
    """|P|⁻¹ 1_{y=0} + |P|⁻² 1_{Disc(y)=0}."""
    norm = P.norm()
    form = _as_form(y).reduce(ResidueRing(P))
    value = Fraction(0)
    if form.is_zero:
        value += Fraction(1, norm)
    if discriminant(form).is_zero:
        value += Fraction(1, norm * norm)
    return value


def rationalize(value: complex, denominator: int, tol: float = 1e-6) -> Fraction:
    """The rational n/denominator a brute-force transform must equal."""
    scaled = value * denominator
    nearest = round(scaled.real)
    if abs(scaled.imag) > tol or abs(scaled.real - nearest) > tol:
        raise AcceptanceError(f"{value} is not a multiple of 1/{denominator}")
    return Fraction(nearest, denominator)


NU_ANCHORS = {1: (0, 0, 0, 0), 2: (1, 0, 0, 0), 3: (0, 1, 0, 0)}


def nu(j: int, stype: SplittingType, P: PolyFq, budget: int = DEFAULT_BUDGET) -> Fraction:  # noqa: N803
    """Transform of the splitting-type indicator at the zero, triple-root or (1²1) anchor."""
    if j not in NU_ANCHORS:
        raise DomainError(f"ν index must be 1, 2 or 3, got {j}")
    ring = ResidueRing(P)
    y = DualForm.from_elems(ring, NU_ANCHORS[j])
    value = brute_fourier(indicator_values(ring, stype), y, ring, budget)
    return rationalize(value, ring.size**4)


def orbit_constancy_gap(values: np.ndarray, ring: ResidueRing) -> float:
    """Largest spread of f̂ within one splitting type of the dual form."""
    table = fourier_table(values, ring)
    codes, _ = splitting_type_table(ring)
    gap = 0.0
    for code in range(len(SPLITTING_ORDER)):
        chunk = table[codes == code]
        if chunk.size:
            gap = max(gap, float(np.max(np.abs(chunk - chunk.flat[0]))))
    return gap


def max_closed_deviation(ring: ResidueRing, P: PolyFq, tilde: bool = False) -> float:  # noqa: N803
    """max_y |brute − closed| for ω_P (or ω̃_P) over every dual form."""
    values = omega_tilde_values(ring) if tilde else omega_values(ring)
    closed_fn = omega_tilde_hat_closed if tilde else omega_hat_closed
    table = fourier_table(values, ring)
    worst = 0.0
    for idx in itertools.product(range(ring.size), repeat=4):
        closed = closed_fn(P, DualForm(ring, idx))
        worst = max(worst, abs(table[idx] - float(closed)))
    LOGGER.debug(f"max_closed_deviation: P={P}, tilde={tilde}, worst={worst:.3e}")
    return worst


def is_negligible(value: complex, tol: float = ZERO_TOL) -> bool:
    return math.isclose(abs(value), 0.0, abs_tol=tol)


#####################################
# List all exports
#####################################

__all__ = [
    "DualForm",
    "CharacterValue",
    "chi_infty",
    "chi",
    "pairing",
    "character_matrices",
    "values_array",
    "brute_fourier",
    "fourier_table",
    "parseval_gap",
    "omega_values",
    "omega_tilde_values",
    "indicator_values",
    "omega_product_values",
    "reduction_indices",
    "omega_hat_closed",
    "omega_tilde_hat_closed",
    "rationalize",
    "nu",
    "orbit_constancy_gap",
    "max_closed_deviation",
    "is_negligible",
]
