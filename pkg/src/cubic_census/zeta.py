"""L-polynomials of cubic function fields from prime-splitting counts.

Module Information:
    - Filename: zeta.py
    - Module: zeta
    - Location: src/cubic_census/

A_n counts places of L of degree dividing n (weighted by degree). The power
sums p_n = qⁿ + 1 − A_n for n ≤ g give e₁..e_g through Newton's identities in
exact arithmetic; the functional equation supplies the rest. Only the root
extraction is floating point.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Protocol

import numpy as np

from .errors import DomainError, RootFindingError, SplittingDataError
from .ffpoly import PolyFq, primes_up_to_degree
from .forms import SplittingType
from .infinity import SigmaClass
from .utils_logger import get_logger

LOGGER = get_logger(__name__)

ZETA_TOL = 1e-7

#####################################
# Splitting data
#####################################


class SplittingSource(Protocol):
    """Anything that knows its q, M, σ and its splitting type at a finite prime."""

    q: int
    M: int
    sigma: SigmaClass

    def splitting_at(self, P: PolyFq) -> SplittingType: ...  # noqa: N803


def genus(M: int) -> int:  # noqa: N803
    """g = (M − 4)/2."""
    if M < 4 or M % 2:
        raise DomainError(f"no cubic field has global discriminant exponent {M}")
    return (M - 4) // 2


def _place_contribution(stype: SplittingType, base_degree: int, n: int) -> int:
    return sum(f * base_degree for f in stype.residue_degrees if n % (f * base_degree) == 0)


def prime_count_A(field: SplittingSource, n: int) -> int:  # noqa: N802
    """Σ deg 𝔓 over places 𝔓 of L with deg 𝔓 | n."""
    if n < 1:
        raise DomainError(f"A_n needs n ≥ 1, got {n}")
    total = _place_contribution(field.sigma.coarse, 1, n)
    for P in primes_up_to_degree(field.q, n):
        if n % P.deg == 0:
            total += _place_contribution(field.splitting_at(P), P.deg, n)
    return total


#####################################
# L-polynomials
#####################################


@dataclass(frozen=True)
class LPolynomial:
    """P_L(u) = Σ e_k u^k, of degree 2g."""

    q: int
    g: int
    e: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 2 * self.g

    def functional_equation_ok(self) -> bool:
        """e_{2g−k} = q^{g−k} e_k for every k."""
        return all(self.e[2 * self.g - k] * self.q**k == self.q**self.g * self.e[k] for k in range(self.g + 1))

    def inverse_roots(self) -> np.ndarray:
        """π_i with P_L(u) = Π(1 − π_i u)."""
        if self.g == 0:
            return np.zeros(0, dtype=complex)
        try:
            roots = np.roots(np.array(self.e[::-1], dtype=float))
        except np.linalg.LinAlgError as exc:
            raise RootFindingError(f"companion eigenvalues failed for {self.e}") from exc
        if roots.size != self.degree or not np.all(np.isfinite(roots)):
            raise RootFindingError(f"root extraction returned {roots} for {self.e}")
        return 1 / roots

    def angles(self) -> np.ndarray:
        """θ_j with π_j = √q e^{iθ_j}, in (−π, π]."""
        return np.angle(self.inverse_roots())

    def to_json(self) -> dict[str, object]:
        return {"q": self.q, "g": self.g, "e": list(self.e)}


def l_polynomial_from_power_sums(q: int, g: int, power_sums: list[int]) -> LPolynomial:
    """Newton's identities for e₁..e_g, then the functional equation."""
    elem = [Fraction(1)]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * elem[k - i] * power_sums[i - 1] for i in range(1, k + 1))
        elem.append(Fraction(acc, k))
    e = [(-1) ** k * x for k, x in enumerate(elem)]
    if any(x.denominator != 1 for x in e):
        raise SplittingDataError(f"non-integral L-polynomial coefficients {e} from power sums {power_sums}")
    coeffs = [int(x) for x in e] + [0] * g
    for k in range(g):
        coeffs[2 * g - k] = q ** (g - k) * coeffs[k]
    return LPolynomial(q, g, tuple(coeffs))


def l_polynomial(field: SplittingSource) -> LPolynomial:
    """P_L(u) from A_1..A_g."""
    g = genus(field.M)
    q = field.q
    power_sums = [q**n + 1 - prime_count_A(field, n) for n in range(1, g + 1)]
    lp = l_polynomial_from_power_sums(q, g, power_sums)
    LOGGER.debug(f"l_polynomial: M={field.M}, sigma={field.sigma}, e={lp.e}")
    return lp


def rh_check(lp: LPolynomial) -> float:
    """max ||u|² − 1/q| over the roots u of P_L (0 when there are none)."""
    if lp.g == 0:
        return 0.0
    roots = 1 / lp.inverse_roots()
    return float(np.max(np.abs(np.abs(roots) ** 2 - 1 / lp.q)))


def weil_bound_ok(lp: LPolynomial, A1: int) -> bool:  # noqa: N803
    """|A₁ − (q + 1)| ≤ 2g√q."""
    return abs(A1 - (lp.q + 1)) <= 2 * lp.g * math.sqrt(lp.q) + 1e-9


#####################################
# Trace coefficients
#####################################


@dataclass(frozen=True)
class TraceCoeffs:
    """c_n = Σ_j e^{i n θ_j} for |n| ≤ n_max."""

    c: dict[int, float]

    def __getitem__(self, n: int) -> float:
        try:
            return self.c[n]
        except KeyError as exc:
            raise DomainError(f"c_{n} was not computed (n_max={self.n_max})") from exc

    @property
    def n_max(self) -> int:
        return max(self.c)

    def max_gap(self, other: TraceCoeffs) -> float:
        shared = set(self.c) & set(other.c)
        return max((abs(self.c[n] - other.c[n]) for n in shared), default=0.0)


def _symmetric(values: dict[int, float]) -> TraceCoeffs:
    return TraceCoeffs({**{-n: v for n, v in values.items()}, **values})


def trace_coeffs(lp: LPolynomial, n_max: int) -> TraceCoeffs:
    """c_n from the numerically extracted inverse roots."""
    unit = lp.inverse_roots() / math.sqrt(lp.q)
    values = {n: float(np.real(np.sum(unit**n))) for n in range(1, n_max + 1)}
    values[0] = float(lp.degree)
    return _symmetric(values)


def trace_coeffs_from_primes(field: SplittingSource, n_max: int) -> TraceCoeffs:
    """c_n = q^{−n/2}(qⁿ + 1 − A_n)."""
    q = field.q
    values = {n: (q**n + 1 - prime_count_A(field, n)) / q ** (n / 2) for n in range(1, n_max + 1)}
    values[0] = float(2 * genus(field.M))
    return _symmetric(values)


#####################################
# List all exports
#####################################

__all__ = [
    "ZETA_TOL",
    "SplittingSource",
    "genus",
    "prime_count_A",
    "LPolynomial",
    "l_polynomial_from_power_sums",
    "l_polynomial",
    "rh_check",
    "weil_bound_ok",
    "TraceCoeffs",
    "trace_coeffs",
    "trace_coeffs_from_primes",
]
