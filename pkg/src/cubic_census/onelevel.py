"""One-level density of low-lying zeros over a census family.

Module Information:
    - Filename: onelevel.py
    - Module: onelevel
    - Location: src/cubic_census/

D_L(ψ) is computed twice for every field: as a periodized sum of ψ over the
zero angles, and through Poisson summation as (1/N_L) Σ ψ̂(n/N_L) c_n with c_n
from prime counts. Family averages are compared with ψ̂(0) − ψ(0)/2 and with
a prediction assembled from the predicted splitting proportions.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
import math

import numpy as np
import scipy.special as sp

from .census import CensusResult, FieldRecord
from .errors import DomainError
from .ffpoly import primes_of_degree
from .forms import NONZERO_TYPES
from .predict import predicted_split_fraction
from .utils_logger import get_logger
from .zeta import LPolynomial, genus, l_polynomial, trace_coeffs_from_primes

LOGGER = get_logger(__name__)

ONELEVEL_TOL = 1e-6
QUADRATURE_TOL = 1e-4
TAIL_CUTOFF = 1e-10

#####################################
# Test functions
#####################################


@dataclass(frozen=True)
class TestFunction:
    """A real even ψ whose Fourier transform ψ̂ vanishes outside [−supp, supp]."""

    __test__ = False

    supp: float
    psi: Callable[[np.ndarray], np.ndarray]
    psi_hat: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"
    # (thetas, N_L, n_max) -> Σ_{|n| > n_max} ψ(N_L(θ + 2πn)/2π)
    tail: Callable[[np.ndarray, int, int], np.ndarray] | None = None

    def symplectic_prediction(self) -> float:
        """ψ̂(0) − ψ(0)/2."""
        return float(self.psi_hat(np.array(0.0)) - self.psi(np.array(0.0)) / 2)


def fejer_pair(supp: float) -> TestFunction:
    """ψ(x) = σ (sin πσx / πσx)², ψ̂(u) = (1 − |u|/σ)₊."""
    if supp <= 0:
        raise DomainError(f"support must be positive, got {supp}")

    def psi(x: np.ndarray) -> np.ndarray:
        return supp * np.sinc(supp * np.asarray(x, dtype=float)) ** 2

    def psi_hat(u: np.ndarray) -> np.ndarray:
        return np.clip(1 - np.abs(np.asarray(u, dtype=float)) / supp, 0.0, None)

    def tail(thetas: np.ndarray, n_l: int, n_max: int) -> np.ndarray:
        # ψ(N(n + t)) = sin²(πm(n + t)) / (π²σN²(n + t)²) with m = σN. For integer m
        # the numerator is sin²(πmt) at every shift; otherwise its mean 1/2 is
        # kept and the oscillating half, O(n_max⁻²), is dropped.
        t = np.asarray(thetas, dtype=float) / (2 * np.pi)
        m = supp * n_l
        numerator = np.sin(np.pi * m * t) ** 2 if float(m).is_integer() else 0.5
        hurwitz = sp.zeta(2, n_max + 1 + t) + sp.zeta(2, n_max + 1 - t)
        return numerator * hurwitz / (np.pi**2 * supp * n_l**2)

    return TestFunction(supp, psi, psi_hat, name="fejer", tail=tail)


def check_fourier_pair(tf: TestFunction, points: Sequence[float], tol: float = QUADRATURE_TOL) -> float:
    """Largest |∫ψ(x)cos(2πux)dx − ψ̂(u)| over the sample points; raises past tol."""
    half_width = 2000 / tf.supp
    step = 0.01 / tf.supp
    x = np.arange(-half_width, half_width + step / 2, step)
    weights = tf.psi(x) * step
    gaps = [abs(float(np.sum(weights * np.cos(2 * np.pi * u * x))) - float(tf.psi_hat(np.array(u)))) for u in points]
    worst = max(gaps, default=0.0)
    if worst > tol:
        raise DomainError(f"{tf.name} fails the Fourier-pair check: deviation {worst:.3g} > {tol:g}")
    return worst


#####################################
# D_L two ways
#####################################


def _lattice_reach(n_l: int, supp: float) -> int:
    """Shifts needed before the x⁻² envelope 1/(σπ²x²) drops under TAIL_CUTOFF."""
    return int(1 / (math.pi * math.sqrt(supp * TAIL_CUTOFF)) / n_l) + 2


def _tail_allowance(n_l: int, supp: float) -> float:
    """Upper bound for the envelope summed over the shifts the lattice sum leaves out."""
    return 2 / (supp * math.pi**2 * n_l**2 * (_lattice_reach(n_l, supp) - 1))


def _periodized(psi: Callable[[np.ndarray], np.ndarray], thetas: np.ndarray, n_l: int, supp: float) -> np.ndarray:
    """Σ_n ψ(N_L(θ + 2πn)/2π) per θ, truncated once ψ's envelope drops under TAIL_CUTOFF."""
    n_max = _lattice_reach(n_l, supp)
    shifts = np.arange(-n_max, n_max + 1)
    x = n_l * (thetas[:, None] + 2 * np.pi * shifts[None, :]) / (2 * np.pi)
    return np.sum(psi(x), axis=1)


def D_L_from_zeros(lp: LPolynomial, tf: TestFunction) -> float:  # noqa: N802
    """Σ_θ ψ(N_L θ/2π) over the zero angles, periodized over 2πℤ.

    ψ is evaluated directly on the shifts |n| ≤ n_max; the test function's
    tail, when it has one, adds the rest.
    """
    if lp.g == 0:
        return 0.0
    thetas, n_l = lp.angles(), 2 * lp.g
    values = _periodized(tf.psi, thetas, n_l, tf.supp)
    if tf.tail is not None:
        values = values + tf.tail(thetas, n_l, _lattice_reach(n_l, tf.supp))
    return float(np.sum(values))


def D_L_explicit(field: FieldRecord, tf: TestFunction, n_available: int | None = None) -> float:  # noqa: N802
    """(1/N_L) Σ_{|n| < σ N_L} ψ̂(n/N_L) c_n with c_n from prime counts."""
    g = genus(field.M)
    if g == 0:
        return 0.0
    n_l = 2 * g
    needed = math.ceil(tf.supp * n_l)
    if n_available is not None and n_available < needed:
        raise DomainError(f"explicit formula needs c_n up to {needed}, only {n_available} available")
    coeffs = trace_coeffs_from_primes(field, needed)
    n = np.arange(-needed, needed + 1)
    weights = tf.psi_hat(n / n_l)
    return float(np.sum(weights * np.array([coeffs[k] for k in n]))) / n_l


def trivial_bound(lp: LPolynomial, tf: TestFunction, grid: int = 257) -> float:
    """N_L · max_θ Σ_n |ψ(N_L(θ + 2πn)/2π)|, the max taken over a grid plus the zero angles."""
    if lp.g == 0:
        return 0.0
    thetas = np.concatenate([np.linspace(-np.pi, np.pi, grid), lp.angles()])
    n_l = 2 * lp.g
    values = _periodized(lambda x: np.abs(tf.psi(x)), thetas, n_l, tf.supp)
    return n_l * (float(np.max(values)) + _tail_allowance(n_l, tf.supp))


#####################################
# Family averages
#####################################


@dataclass(frozen=True)
class DensityReport:
    """Family average of D_L(ψ) and its comparison values."""

    q: int
    M: int
    supp: float
    family_size: int
    average_from_zeros: float
    average_explicit: float
    prediction: float
    corrected_prediction: float
    max_method_gap: float
    bound_ok: bool

    @property
    def gap(self) -> float:
        return self.average_explicit - self.prediction

    def as_row(self) -> dict[str, object]:
        return {
            "M": self.M,
            "sigma_supp": self.supp,
            "avg_D": self.average_explicit,
            "avg_D_zeros": self.average_from_zeros,
            "prediction": self.prediction,
            "corrected_prediction": self.corrected_prediction,
            "gap": self.gap,
            "max_method_gap": self.max_method_gap,
            "bound_ok": self.bound_ok,
            "family_size": self.family_size,
        }


def corrected_prediction(result: CensusResult, tf: TestFunction) -> float:
    """ψ̂(0) + (2/N_L) Σ_{n≥1} ψ̂(n/N_L) q^{−n/2}(qⁿ + 1 − E[A_n]).

    E[A_n] takes finite primes from the predicted splitting proportions and the
    place at infinity from the census σ-distribution.
    """
    q, M = result.q, result.M  # noqa: N806
    n_l = 2 * genus(M)
    sigma_share = {
        s: sum(rec.sigma.coarse is s for rec in result.fields) / result.count for s in NONZERO_TYPES
    }
    shares: dict[int, dict] = {}
    total = float(tf.psi_hat(np.array(0.0)))
    for n in range(1, math.ceil(tf.supp * n_l)):
        expected = sum(share * sum(f for f in s.residue_degrees if n % f == 0) for s, share in sigma_share.items())
        for d in range(1, n + 1):
            if n % d:
                continue
            primes = primes_of_degree(q, d)
            if d not in shares:
                shares[d] = {s: predicted_split_fraction(q, M, primes[0], s) for s in NONZERO_TYPES}
            per_prime = sum(share * sum(f * d for f in s.residue_degrees if n % (f * d) == 0) for s, share in shares[d].items())
            expected += len(primes) * per_prime
        c_n = (q**n + 1 - expected) / q ** (n / 2)
        total += 2 / n_l * float(tf.psi_hat(np.array(n / n_l))) * c_n
    return total


def family_average(result: CensusResult, tf: TestFunction) -> DensityReport:
    """Average of D_L(ψ) over the census family, both ways, with the trivial-bound check."""
    if result.count == 0:
        raise DomainError(f"empty family for q={result.q}, M={result.M}")
    zeros, explicit, gaps, bound_ok = [], [], [], True
    for rec in result.fields:
        lp = l_polynomial(rec)
        from_zeros = D_L_from_zeros(lp, tf)
        from_primes = D_L_explicit(rec, tf)
        zeros.append(from_zeros)
        explicit.append(from_primes)
        gaps.append(abs(from_zeros - from_primes))
        bound_ok &= abs(from_zeros) <= trivial_bound(lp, tf) + 1e-9
    report = DensityReport(
        q=result.q,
        M=result.M,
        supp=tf.supp,
        family_size=result.count,
        average_from_zeros=math.fsum(zeros) / result.count,
        average_explicit=math.fsum(explicit) / result.count,
        prediction=tf.symplectic_prediction(),
        corrected_prediction=corrected_prediction(result, tf),
        max_method_gap=max(gaps),
        bound_ok=bound_ok,
    )
    LOGGER.info(
        f"One-level q={result.q}, M={result.M}, supp={tf.supp}: avg={report.average_explicit:.6f}, "
        f"prediction={report.prediction:.6f}, method gap={report.max_method_gap:.2e}"
    )
    return report


#####################################
# List all exports
#####################################

__all__ = [
    "ONELEVEL_TOL",
    "QUADRATURE_TOL",
    "TestFunction",
    "fejer_pair",
    "check_fourier_pair",
    "D_L_from_zeros",
    "D_L_explicit",
    "trivial_bound",
    "DensityReport",
    "corrected_prediction",
    "family_average",
]
