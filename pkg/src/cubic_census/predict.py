"""Closed-form main and secondary terms for counts of cubic extensions.

Module Information:
    - Filename: predict.py
    - Module: predict
    - Location: src/cubic_census/

Key Concepts:
    - Secondary terms are built in the φ-symbol algebra (SecondaryElem) and
      evaluated by sending φ(n) to C₂*(M + n); only the final report
      converts to floats.
    - The product of local factors φ(0) − φ(−2 deg P)|P|^{−5/3} over all
      primes collapses to φ(0) − q^{−2/3}φ(−2); splitting conditions divide
      out the local factor of each conditioned prime with a truncated
      geometric inverse and multiply in its d_P table entry.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
import math

from .errors import DomainError
from .ffpoly import PolyFq, is_irreducible, prime_count
from .forms import NONZERO_TYPES, SplittingType
from .infinity import c2_closed
from .qsixth import QSixth, SecondaryElem
from .utils_logger import get_logger

LOGGER = get_logger(__name__)

INVERSE_EXPONENT = 30
DEFAULT_BAND_CONSTANT = 1.0

Condition = tuple[PolyFq, SplittingType]

#####################################
# The φ algebra
#####################################


def tensor(a: SecondaryElem, b: SecondaryElem) -> SecondaryElem:
    """φ(n) ⊗ φ(m) = φ(n + m), bilinear."""
    return a.tensor(b)


def C2_star(k_mod3: int, q: int) -> QSixth:  # noqa: N802
    """C₂*(k): q+3+q⁻¹, 2q^{2/3}+2q^{−1/3}+q^{−4/3}, q^{4/3}+2q^{1/3}+2q^{−2/3}."""
    p = QSixth.power
    match k_mod3 % 3:
        case 0:
            return p(q, 6) + 3 + p(q, -6)
        case 1:
            return p(q, 4, 2) + p(q, -2, 2) + p(q, -8)
        case _:
            return p(q, 8) + p(q, 2, 2) + p(q, -4, 2)


def eval_phi(a: SecondaryElem, M: int, q: int) -> QSixth:  # noqa: N803
    """Σ c_n C₂*(M + n)."""
    return a.evaluate(lambda n: C2_star(M + n, q))


def collapse_element(q: int) -> SecondaryElem:
    """φ(0) − q^{−2/3} φ(−2)."""
    return SecondaryElem.one(q) - SecondaryElem.phi(q, -2, QSixth.power(q, -4))


#####################################
# Local factors
#####################################


def _norm_power(P: PolyFq, thirds: int) -> QSixth:  # noqa: N803
    """|P|^{thirds/3}."""
    return QSixth.power(P.field.q, 2 * thirds * P.deg)


def x_P(P: PolyFq) -> Fraction:  # noqa: N802, N803
    """(1 + |P|⁻¹ + |P|⁻²)⁻¹."""
    norm = Fraction(P.norm())
    return 1 / (1 + 1 / norm + 1 / norm**2)


def c_S(stype: SplittingType, P: PolyFq) -> Fraction:  # noqa: N802, N803
    norm = Fraction(P.norm())
    table = {
        SplittingType.S111: Fraction(1, 6),
        SplittingType.S21: Fraction(1, 2),
        SplittingType.S3: Fraction(1, 3),
        SplittingType.S121: 1 / norm,
        SplittingType.S13: 1 / norm**2,
    }
    if stype not in table:
        raise DomainError("no splitting constant for the zero type")
    return table[stype]


def main_coefficient(q: int) -> Fraction:
    """(q² − 1)(q³ − 1) / (q⁴(q − 1))."""
    return Fraction((q * q - 1) * (q**3 - 1), q**4 * (q - 1))


def c1_split(P: PolyFq, stype: SplittingType) -> Fraction:  # noqa: N803
    """Main-term coefficient of fields with splitting type S at P."""
    return main_coefficient(P.field.q) * x_P(P) * c_S(stype, P)


def d_P(stype: SplittingType, P: PolyFq) -> SecondaryElem:  # noqa: N802, N803
    """Local secondary factor of the splitting condition (P, S)."""
    q, deg = P.field.q, P.deg
    inv = Fraction(1, P.norm())
    one = QSixth.of(q, 1)

    def phi(k: int, coeff: QSixth) -> SecondaryElem:
        return SecondaryElem.phi(q, -k * deg, coeff)

    match stype:
        case SplittingType.S111:
            return phi(0, one * (Fraction(1, 6) * (1 - 2 * inv))) + phi(
                4, _norm_power(P, -1) * (Fraction(1, 6) * (2 - inv))
            )
        case SplittingType.S21:
            return phi(0, one * Fraction(1, 2)) + phi(4, _norm_power(P, -4) * Fraction(-1, 2))
        case SplittingType.S3:
            return phi(0, one * (Fraction(1, 3) * (1 + inv))) + phi(4, _norm_power(P, -1) * (Fraction(-1, 3) * (1 + inv)))
        case SplittingType.S121:
            return (
                phi(0, one * (inv * (1 - inv)))
                + phi(2, -_norm_power(P, -5))
                + phi(4, _norm_power(P, -4))
            )
        case SplittingType.S13:
            return phi(0, one * inv**2) + phi(2, -_norm_power(P, -2) * inv**2)
    raise DomainError("no local factor for the zero type")


def local_factor(P: PolyFq) -> SecondaryElem:  # noqa: N803
    """φ(0) − φ(−2 deg P)|P|^{−5/3}."""
    q = P.field.q
    return SecondaryElem.one(q) - SecondaryElem.phi(q, -2 * P.deg, _norm_power(P, -5))


def inverse_depth(P: PolyFq) -> int:  # noqa: N803
    """K with |P|^{−5(K+1)/3} below q^{−INVERSE_EXPONENT}."""
    return math.ceil(3 * INVERSE_EXPONENT / (5 * P.deg))


def inverse_local_factor(P: PolyFq, depth: int | None = None) -> SecondaryElem:  # noqa: N803
    """Σ_{k ≤ K} φ(−2k deg P)|P|^{−5k/3}."""
    q = P.field.q
    depth = inverse_depth(P) if depth is None else depth
    terms = {-2 * k * P.deg: _norm_power(P, -5 * k) for k in range(depth + 1)}
    return SecondaryElem(q, terms)


#####################################
# Predictions
#####################################


@dataclass(frozen=True)
class PredictionResult:
    """Main and secondary prediction for #fields of discriminant q^M."""

    q: int
    M: int
    conditions: tuple[tuple[str, str], ...]
    main_exact: Fraction
    secondary_exact: QSixth
    main: float
    secondary: float
    combined: float
    error_band: float
    extras: dict[str, float] = field(default_factory=dict)

    def as_record(self) -> dict[str, object]:
        return {
            "q": self.q,
            "M": self.M,
            "conditions": [list(c) for c in self.conditions],
            "main": self.main,
            "secondary": self.secondary,
            "combined": self.combined,
            "error_band": self.error_band,
            "secondary_exact": repr(self.secondary_exact),
        }


def _require_even(M: int) -> None:  # noqa: N803
    if M % 2:
        raise DomainError(f"global discriminant exponents are even, got M={M}")


def C2_total(M: int, q: int) -> QSixth:  # noqa: N802, N803
    """The three-case C₂(M): q⁻²(q+1), q^{−4/3}, q^{−5/3}(q+1)."""
    p = QSixth.power
    match M % 3:
        case 0:
            return (p(q, 6) + 1) * p(q, -12)
        case 1:
            return p(q, -8)
        case _:
            return (p(q, 6) + 1) * p(q, -10)


def _band(q: int, M: int, conditions: Sequence[Condition], constant: float) -> float:  # noqa: N803
    norms = math.prod(P.norm() for P, _ in conditions)
    return constant * q ** (2 * M / 3) * norms ** (2 / 3)


def predict_total(q: int, M: int, band_constant: float = DEFAULT_BAND_CONSTANT) -> PredictionResult:  # noqa: N803
    """Main term and secondary term of the total count."""
    _require_even(M)
    main = main_coefficient(q) * Fraction(q) ** M
    secondary = -(C2_total(M, q) * Fraction(q * q - 1, q)) * QSixth.power(q, 5 * M)
    return PredictionResult(
        q=q,
        M=M,
        conditions=(),
        main_exact=main,
        secondary_exact=secondary,
        main=float(main),
        secondary=float(secondary),
        combined=float(main) + float(secondary),
        error_band=_band(q, M, (), band_constant),
    )


def _validate_conditions(conditions: Sequence[Condition]) -> None:
    seen: set[PolyFq] = set()
    for P, stype in conditions:
        if not P.is_monic or not is_irreducible(P):
            raise DomainError(f"{P} is not a monic prime")
        if P in seen:
            raise DomainError(f"prime {P} appears twice in the conditions")
        if stype is SplittingType.ZERO:
            raise DomainError("(0) is not a splitting type of a field")
        seen.add(P)


def conditioned_element(q: int, conditions: Sequence[Condition]) -> SecondaryElem:
    """(φ(0) − q^{−2/3}φ(−2)) ⊗ Π_P [inverse local factor ⊗ d_P]."""
    elem = collapse_element(q)
    for P, stype in conditions:
        elem = elem.tensor(inverse_local_factor(P)).tensor(d_P(stype, P))
    return elem


def predict_split(
    q: int,
    M: int,  # noqa: N803
    conditions: Sequence[Condition] = (),
    band_constant: float = DEFAULT_BAND_CONSTANT,
) -> PredictionResult:
    """Main and secondary term for fields with prescribed splitting at finitely many primes."""
    _require_even(M)
    _validate_conditions(conditions)
    main = main_coefficient(q) * Fraction(q) ** M
    scalar = Fraction(1)
    for P, stype in conditions:
        main *= c_S(stype, P) * x_P(P)
        scalar *= 1 - Fraction(1, P.norm())
    value = eval_phi(conditioned_element(q, conditions), M, q)
    secondary = -(value * (scalar / q)) * QSixth.power(q, 5 * M)
    return PredictionResult(
        q=q,
        M=M,
        conditions=tuple((repr(P), stype.value) for P, stype in conditions),
        main_exact=main,
        secondary_exact=secondary,
        main=float(main),
        secondary=float(secondary),
        combined=float(main) + float(secondary),
        error_band=_band(q, M, conditions, band_constant),
    )


def predicted_split_fraction(q: int, M: int, P: PolyFq, stype: SplittingType) -> float:  # noqa: N803
    """Predicted share of fields with splitting S at P, main plus secondary."""
    return predict_split(q, M, [(P, stype)]).combined / predict_total(q, M).combined


def dominance_threshold(q: int, max_M: int = 200) -> int:  # noqa: N803
    """Least even M from which |secondary| < main holds up to max_M."""
    threshold = None
    for M in range(0, max_M + 1, 2):  # noqa: N806
        result = predict_total(q, M)
        if abs(result.secondary) < result.main:
            threshold = M if threshold is None else threshold
        else:
            threshold = None
    if threshold is None:
        raise DomainError(f"secondary term never dominated by the main term up to M={max_M}")
    return threshold


#####################################
# Consistency tables
#####################################


def euler_collapse_product(q: int, max_degree: int, n_terms: int | None = None) -> SecondaryElem:
    """Π_{deg P ≤ D} (φ(0) − φ(−2 deg P)|P|^{−5/3}), truncated after n_terms powers of φ(−2)."""
    n_terms = 3 * max_degree if n_terms is None else n_terms
    series = [0] * (n_terms + 1)
    series[0] = 1
    for d in range(1, max_degree + 1):
        count = prime_count(q, d)
        factor = [0] * (n_terms + 1)
        for j in range(n_terms // d + 1):
            factor[d * j] = (-1) ** j * math.comb(count, j)
        series = [sum(series[i] * factor[n - i] for i in range(n + 1)) for n in range(n_terms + 1)]
    return SecondaryElem(q, {-2 * n: QSixth.power(q, -10 * n, c) for n, c in enumerate(series) if c})


def secondary_table(q: int) -> list[dict[str, object]]:
    """C₂^σ(ℓ) − q^{−2/3}C₂^σ(ℓ − 2) per coarse σ and ℓ mod 3."""
    rows = []
    for stype in NONZERO_TYPES:
        for ell in range(3):
            value = c2_closed(stype, ell, q) - QSixth.power(q, -4) * c2_closed(stype, ell - 2, q)
            rows.append({"sigma": stype.value, "ell_mod3": ell, "value_exact": repr(value), "value_float": float(value)})
    return rows


def secondary_assembly_check(q: int) -> list[tuple[int, QSixth, QSixth, QSixth]]:
    """Per M mod 3: (q²−1)C₂(M), the (q−1)(q+1)-table value and C₂*(M) − q^{−2/3}C₂*(M−2)."""
    p = QSixth.power
    table = {
        0: (p(q, 6) + 1) * (p(q, 6) + 1) * p(q, -12) * (q - 1),
        1: (p(q, 6) + 1) * p(q, -8) * (q - 1),
        2: (p(q, 6) + 1) * (p(q, 6) + 1) * p(q, -10) * (q - 1),
    }
    out = []
    for m in range(3):
        lhs = C2_total(m, q) * (q * q - 1)
        rhs = C2_star(m, q) - p(q, -4) * C2_star(m - 2, q)
        out.append((m, lhs, table[m], rhs))
    return out


#####################################
# The one-level inequality
#####################################


@dataclass(frozen=True)
class InequalityResult:
    value: float
    negative: bool
    bracket: float
    leading: float


def split_secondary_constant(P: PolyFq, stype: SplittingType, M: int) -> QSixth:  # noqa: N803
    """Secondary constant C₂,P,S of one splitting condition (without the Y^{5/6} factor)."""
    q = P.field.q
    elem = collapse_element(q).tensor(inverse_local_factor(P)).tensor(d_P(stype, P))
    return -(eval_phi(elem, M, q) * ((1 - Fraction(1, P.norm())) / q))


def onelevel_inequality(P: PolyFq, M: int, q: int | None = None) -> InequalityResult:  # noqa: N803
    """2C₂,P,(111) − C₂,P,(3) + C₂,P,(1²1) with its bracket and leading term."""
    q = P.field.q if q is None else q
    if q != P.field.q:
        raise DomainError(f"P lives over F_{P.field.q}, not F_{q}")
    value = (
        split_secondary_constant(P, SplittingType.S111, M) * 2
        - split_secondary_constant(P, SplittingType.S3, M)
        + split_secondary_constant(P, SplittingType.S121, M)
    )
    shift = 4 * P.deg
    bracket = C2_star(M - shift, q) - QSixth.power(q, -4) * C2_star(M - 2 - shift, q)
    # The combined local factors carry |P|^{−1/3}(1 + |P|^{−1}) at φ(−4 deg P); with the
    # (1 − |P|^{−1})/q of every constant the leading term has |P|^{−1/3}(1 − |P|^{−2})/q.
    combined = d_P(SplittingType.S111, P) * 2 - d_P(SplittingType.S3, P) + d_P(SplittingType.S121, P)
    leading = -(bracket * combined.coefficient(-shift) * ((1 - Fraction(1, P.norm())) / q))
    LOGGER.debug(f"onelevel_inequality: P={P}, M={M}, value={float(value):.6g}, bracket={float(bracket):.6g}")
    return InequalityResult(float(value), float(value) < 0, float(bracket), float(leading))


#####################################
# List all exports
#####################################

__all__ = [
    "Condition",
    "PredictionResult",
    "InequalityResult",
    "tensor",
    "C2_star",
    "C2_total",
    "eval_phi",
    "collapse_element",
    "x_P",
    "c_S",
    "main_coefficient",
    "c1_split",
    "d_P",
    "local_factor",
    "inverse_depth",
    "inverse_local_factor",
    "conditioned_element",
    "predict_total",
    "predict_split",
    "predicted_split_fraction",
    "dominance_threshold",
    "euler_collapse_product",
    "secondary_table",
    "secondary_assembly_check",
    "split_secondary_constant",
    "onelevel_inequality",
]
