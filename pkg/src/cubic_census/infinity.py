"""The place at infinity: σ-classes, γ, automorphisms and exact C₂ integrals.

Module Information:
    - Filename: infinity.py
    - Module: infinity
    - Location: src/cubic_census/

Key Concepts:
    - classify_at_infinity maximalizes a form over O_∞ = F_q[[π]] and reads
      σ from the residue form; the fine index of a ramified class comes from
      the square or cube class of the uniformizer part.
    - integrate_c2 evaluates the local integral of q^{2ε/3}|v|^{-2/3} over
      max(|x|, |y|) = 1 by splitting into the charts (t, 1), t ∈ O and
      (1, s), s ∈ πO, then descending through residue balls. A ball is
      resolved when the constant Taylor term dominates, and a ball around a
      simple root is summed in closed form as a geometric tail.
    - All values are exact QSixth elements.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import itertools
from math import comb, inf

from .errors import DomainError, IntegrationError, PrecisionError
from .ffpoly import FqField, PolyFq, get_field
from .forms import CubicForm, GL2Elem, SplittingType, classify_mod_P, discriminant, gl2_act, hessian
from .laurent import LaurentElem, newton_slopes
from .qsixth import QSixth
from .utils_logger import get_logger

LOGGER = get_logger(__name__)

REPRESENTATIVE_PREC = 48
MAX_DEPTH = 64
PRECISION_RETRIES = 8

#####################################
# σ-classes
#####################################


@dataclass(frozen=True, order=True)
class SigmaClass:
    """Isomorphism class of an étale cubic K_∞-algebra.

    ``index`` is r ∈ {0, 1} for (1²1)_r and i ∈ {0, 1, 2} for (1³)_i, and 0
    for the unramified classes.
    """

    coarse: SplittingType
    index: int = 0

    def __post_init__(self) -> None:
        if self.coarse is SplittingType.ZERO:
            raise DomainError("(0) is not an étale algebra")
        limit = {SplittingType.S121: 2, SplittingType.S13: 3}.get(self.coarse, 1)
        if not 0 <= self.index < limit:
            raise DomainError(f"index {self.index} out of range for {self.coarse.value}")

    @property
    def label(self) -> str:
        if self.coarse in (SplittingType.S121, SplittingType.S13):
            return f"{self.coarse.value}_{self.index}"
        return self.coarse.value

    @classmethod
    def parse(cls, text: str) -> SigmaClass:
        base, _, idx = text.partition("_")
        return cls(SplittingType.parse(base), int(idx) if idx else 0)

    def __str__(self) -> str:
        return self.label


def fine_classes(q: int) -> list[SigmaClass]:
    """Every σ-class for this q; (1³) splits into three classes when q ≡ 1 mod 3."""
    cube_classes = 3 if q % 3 == 1 else 1
    return [
        SigmaClass(SplittingType.S111),
        SigmaClass(SplittingType.S21),
        SigmaClass(SplittingType.S3),
        SigmaClass(SplittingType.S121, 0),
        SigmaClass(SplittingType.S121, 1),
        *(SigmaClass(SplittingType.S13, i) for i in range(cube_classes)),
    ]


def _coarse(sigma: SigmaClass | SplittingType) -> SplittingType:
    return sigma.coarse if isinstance(sigma, SigmaClass) else sigma


def gamma(sigma: SigmaClass | SplittingType) -> int:
    """Exponent of the infinite place in the global discriminant."""
    coarse = _coarse(sigma)
    if coarse is SplittingType.S121:
        return 1
    if coarse is SplittingType.S13:
        return 2
    if coarse is SplittingType.ZERO:
        raise DomainError("γ is undefined for (0)")
    return 0


def aut_order(sigma: SigmaClass | SplittingType, q: int) -> int:
    """#Aut(σ)."""
    coarse = _coarse(sigma)
    table = {
        SplittingType.S111: 6,
        SplittingType.S21: 2,
        SplittingType.S3: 3,
        SplittingType.S121: 2,
        SplittingType.S13: 3 if q % 3 == 1 else 1,
    }
    if coarse not in table:
        raise DomainError("#Aut is undefined for (0)")
    return table[coarse]


#####################################
# ε and the integrand
#####################################


@dataclass(frozen=True)
class EpsilonContext:
    """Residue of −v_∞(λ₀) modulo 3 for a given ℓ and σ."""

    ell: int
    sigma: SigmaClass
    v_lambda0_mod3: int

    @classmethod
    def for_sigma(cls, ell: int, sigma: SigmaClass | SplittingType) -> EpsilonContext:
        sig = sigma if isinstance(sigma, SigmaClass) else SigmaClass(sigma)
        shift = 1 if sig.coarse is SplittingType.S13 else 0
        return cls(ell, sig, (ell - shift) % 3)


def epsilon(k: int, ctx: EpsilonContext) -> int:
    """ε(uλ₀) ∈ {0, 1, 2} for an element u of valuation k."""
    return (ctx.v_lambda0_mod3 - k) % 3


def integrand_value(w: int, ctx: EpsilonContext, q: int) -> QSixth:
    """q^{2ε/3} |v|^{-2/3} on the set where v has valuation w."""
    return QSixth.power(q, 4 * epsilon(w, ctx) + 4 * w)


#####################################
# Representatives
#####################################


def _const(fq: FqField, c: int) -> LaurentElem:
    return LaurentElem.constant(fq, c, REPRESENTATIVE_PREC)


def _pi_times(fq: FqField, c: int) -> LaurentElem:
    return LaurentElem.from_pi_coeffs(fq, [c], REPRESENTATIVE_PREC, start=1)


@lru_cache(maxsize=None)
def first_irreducible_depressed_cubic(q: int) -> tuple[int, int]:
    """Least (c, d) with x³ + cx + d irreducible over F_q."""
    fq = get_field(q)
    for c, d in itertools.product(range(q), repeat=2):
        poly = PolyFq(fq, (d, c, 0, 1))
        if all(poly(x) != 0 for x in range(q)):
            return c, d
    raise DomainError(f"no irreducible depressed cubic over F_{q}")  # pragma: no cover


def representative_form(sigma: SigmaClass | SplittingType, q: int) -> CubicForm:
    """A form over O_∞ whose étale algebra has class σ."""
    sig = sigma if isinstance(sigma, SigmaClass) else SigmaClass(sigma)
    fq = get_field(q)
    zero, one = _const(fq, 0), _const(fq, 1)
    alpha = fq.least_nonsquare()
    match sig.coarse:
        case SplittingType.S111:
            return CubicForm(zero, one, one, zero)
        case SplittingType.S21:
            return CubicForm(one, zero, _const(fq, fq.neg(alpha)), zero)
        case SplittingType.S3:
            c, d = first_irreducible_depressed_cubic(q)
            return CubicForm(one, zero, _const(fq, c), _const(fq, d))
        case SplittingType.S121:
            u = fq.pow(alpha, sig.index)
            return CubicForm(one, zero, _pi_times(fq, fq.neg(u)), zero)
        case SplittingType.S13:
            beta = fq.least_noncube()
            u = 1 if beta is None else fq.pow(beta, sig.index)
            return CubicForm(one, zero, zero, _pi_times(fq, fq.neg(u)))
    raise DomainError(f"no representative for {sig}")


def bootstrap_form(v: CubicForm) -> CubicForm:
    """(π⁻²a, π⁻¹b, c, πd), i.e. π⁻² v(x, πy)."""
    return CubicForm(v.a.shift(-2), v.b.shift(-1), v.c, v.d.shift(1))


#####################################
# Local integration
#####################################


@dataclass(frozen=True)
class LocalRegion:
    """A residue ball center + π^depth O in one chart.

    Chart 1 is {(t, 1) : t ∈ O}, chart 2 is {(1, s) : s ∈ πO}.
    """

    chart: int
    center: LaurentElem
    depth: int

    @property
    def measure(self) -> QSixth:
        """μ(π^depth O) = q^{1 - depth}."""
        return QSixth.power(self.center.field.q, 6 * (1 - self.depth))

    def point(self) -> tuple[LaurentElem, LaurentElem]:
        one = LaurentElem.constant(self.center.field, 1, self.center.prec)
        return (self.center, one) if self.chart == 1 else (one, self.center)

    def children(self) -> list[LocalRegion]:
        fq = self.center.field
        digits = [self.center.coefficient(i) for i in range(self.depth)]
        return [
            LocalRegion(self.chart, LaurentElem.from_pi_coeffs(fq, [*digits, j], self.depth + 1), self.depth + 1)
            for j in fq.elements()
        ]


@dataclass
class IntegrationStats:
    resolved: int = 0
    tails: int = 0
    max_depth: int = 0


def _to_pi_poly(x: LaurentElem, shift: int) -> PolyFq:
    """π^shift · x as a polynomial in π (x is read as the finite sum it stores)."""
    if x.is_zero:
        return PolyFq.zero(x.field)
    return PolyFq(x.field, (0,) * (x.val + shift) + x.coeffs)


def _pi_valuation(f: PolyFq) -> float:
    for i, c in enumerate(f.coeffs):
        if c:
            return i
    return inf


@dataclass
class _ChartPolys:
    """Coefficients A_0..A_3 (as π-polynomials) of the chart polynomial and the common shift."""

    coeffs: list[PolyFq]
    shift: int
    stats: IntegrationStats = field(default_factory=IntegrationStats)

    def taylor(self, center: PolyFq) -> list[PolyFq]:
        out = []
        for k in range(4):
            total = PolyFq.zero(center.field)
            for j in range(k, 4):
                if not self.coeffs[j].is_zero:
                    total = total + self.coeffs[j] * center ** (j - k) * comb(j, k)
            out.append(total)
        return out


def _integrate_chart(chart: _ChartPolys, start: LocalRegion, ctx: EpsilonContext, max_depth: int) -> QSixth:
    q = start.center.field.q
    total = QSixth.zero(q)
    stack = [start]
    while stack:
        region = stack.pop()
        n = region.depth
        chart.stats.max_depth = max(chart.stats.max_depth, n)
        if n > max_depth:
            raise IntegrationError(f"region {region.center} still unresolved at depth {n}")
        center = _to_pi_poly(region.center, 0)
        w = [_pi_valuation(c) - chart.shift + n * k for k, c in enumerate(chart.taylor(center))]
        if w[0] < min(w[1:]):
            chart.stats.resolved += 1
            total = total + region.measure * integrand_value(int(w[0]), ctx, q)
        elif w[1] < min(w[2:]) and w[0] >= w[1]:
            chart.stats.tails += 1
            for j in range(3):
                total = total + QSixth.power(q, 6 * (1 - n - j)) * integrand_value(int(w[1]) + j, ctx, q)
        else:
            stack.extend(reversed(region.children()))
    return total


def local_integral(v: CubicForm, ctx: EpsilonContext, max_depth: int = MAX_DEPTH) -> QSixth:
    """∫_{max(|x|,|y|)=1} q^{2ε(v(x,y)λ₀)/3} |v(x,y)|^{-2/3} dx dy, exactly."""
    fq = v.a.field
    nonzero = [x.val for x in v.coeffs if not x.is_zero]
    if not nonzero:
        raise DomainError("cannot integrate the zero form")
    shift = max(0, -min(nonzero))
    a, b, c, d = (_to_pi_poly(x, shift) for x in v.coeffs)
    zero = LaurentElem.zero(fq, 0)
    chart1 = _ChartPolys([d, c, b, a], shift)
    chart2 = _ChartPolys([a, b, c, d], shift)
    part1 = _integrate_chart(chart1, LocalRegion(1, zero, 0), ctx, max_depth)
    part2 = _integrate_chart(chart2, LocalRegion(2, LaurentElem.zero(fq, 1), 1), ctx, max_depth)
    LOGGER.debug(
        f"local_integral: resolved={chart1.stats.resolved + chart2.stats.resolved}, "
        f"tails={chart1.stats.tails + chart2.stats.tails}, "
        f"depth={max(chart1.stats.max_depth, chart2.stats.max_depth)}"
    )
    return (part1 + part2) * (fq.q - 1)


def integrate_c2(v: CubicForm, ctx: EpsilonContext, max_depth: int = MAX_DEPTH) -> QSixth:
    """|Disc v|^{1/6}/(q² − 1) times the local integral."""
    q = v.a.field.q
    disc_val = discriminant(v).valuation()
    return QSixth.power(q, -disc_val) * local_integral(v, ctx, max_depth) / (q * q - 1)


def eval_C2(sigma: SigmaClass | SplittingType, ell_mod3: int, q: int) -> QSixth:  # noqa: N802
    """C₂^σ(ℓ) by integrating the representative of σ."""
    sig = sigma if isinstance(sigma, SigmaClass) else SigmaClass(sigma)
    return integrate_c2(representative_form(sig, q), EpsilonContext.for_sigma(ell_mod3 % 3, sig))


def c2_closed(sigma: SigmaClass | SplittingType, ell_mod3: int, q: int) -> QSixth:
    """The tabulated C₂^σ(ℓ)."""
    def p(sixths: int, coeff: int = 1) -> QSixth:
        return QSixth.power(q, sixths, coeff)

    table = {
        SplittingType.S111: (p(6, 3) + 1, p(4, 4), p(8) + p(2, 3)),
        SplittingType.S21: (p(6) + 1, p(4, 2), p(8) + p(2)),
        SplittingType.S3: (p(0), p(4), p(8)),
        SplittingType.S121: (p(3, 2), p(7) + p(1), p(5, 2)),
        SplittingType.S13: (p(6), p(4), p(2)),
    }
    return table[_coarse(sigma)][ell_mod3 % 3]


def c2_star_from_integrals(k: int, q: int, *, closed: bool = False) -> QSixth:
    """Σ_σ q^{-5γ(σ)/6} / #Aut(σ) · C₂^σ(k − γ(σ)) over the fine classes."""
    total = QSixth.zero(q)
    for sig in fine_classes(q):
        g = gamma(sig)
        c2 = c2_closed(sig, k - g, q) if closed else eval_C2(sig, k - g, q)
        total = total + QSixth.power(q, -5 * g) * c2 / aut_order(sig, q)
    return total


#####################################
# Classification at infinity
#####################################


@dataclass(frozen=True)
class InfinityData:
    """σ-class of a form over R, with its discriminant valuations at infinity."""

    sigma: SigmaClass
    gamma: int
    disc_valuation: int
    steps: int
    slopes: tuple[tuple[Fraction, int], ...]
    precision: int


def _residue_type(fq: FqField, codes: tuple[int, int, int, int]) -> SplittingType:
    form = CubicForm(*(PolyFq.constant(fq, c) for c in codes))
    return classify_mod_P(form, PolyFq.T(fq))


def _residue_multiple_root(fq: FqField, codes: tuple[int, int, int, int]) -> int | None:
    a, b, c, d = codes
    h = hessian(CubicForm(*(PolyFq.constant(fq, x) for x in codes)))
    h_a, h_b, h_c = (x.coefficient(0) for x in h)
    if h_a == h_b == h_c == 0:
        if a == 0:
            return None
        return fq.neg(fq.div(b, fq.mul(fq.from_int(3), a)))
    if h_a == 0:
        return None
    return fq.neg(fq.div(h_b, fq.mul(fq.from_int(2), h_a)))


def _fine_index(fq: FqField, coarse: SplittingType, moved: CubicForm) -> int:
    if coarse is SplittingType.S121:
        u = fq.neg(fq.div(moved.d.coefficient(1), moved.b.coefficient(0)))
        return 0 if fq.is_square(u) else 1
    if coarse is SplittingType.S13:
        u = fq.neg(fq.div(moved.d.coefficient(1), moved.a.coefficient(0)))
        beta = fq.least_noncube()
        if beta is None:
            return 0
        return next(i for i in range(3) if fq.is_cube(fq.div(u, fq.pow(beta, i))))
    return 0


def _classify_once(f: CubicForm, prec: int) -> InfinityData:
    fq = f.a.field
    form = f.map(lambda x: LaurentElem.from_poly(x, prec))
    disc_val = discriminant(form).valuation()
    slopes = tuple(newton_slopes([None if x.is_zero else x.valuation() for x in (form.d, form.c, form.b, form.a)]))
    steps = 0
    while True:
        low = min(x.val for x in form.coeffs if not x.is_zero)
        form = form.map(lambda x, s=low: x.shift(-s))
        codes = tuple(x.coefficient(0) for x in form.coeffs)
        coarse = _residue_type(fq, codes)
        if coarse.is_unramified:
            return InfinityData(SigmaClass(coarse), 0, disc_val, steps, slopes, prec)
        root = _residue_multiple_root(fq, codes)
        one = LaurentElem.constant(fq, 1, prec)
        mover = GL2Elem.swap(one) if root is None else GL2Elem.lower_shear(LaurentElem.constant(fq, root, prec))
        moved = gl2_act(mover, form)
        if not moved.d.valuation_at_least(2):
            g = discriminant(moved).valuation()
            return InfinityData(SigmaClass(coarse, _fine_index(fq, coarse, moved)), g, disc_val, steps, slopes, prec)
        form = CubicForm(moved.a.shift(1), moved.b, moved.c.shift(-1), moved.d.shift(-2))
        steps += 1
        if steps > 2 * prec:
            raise PrecisionError("maximalization at infinity did not terminate at this precision")


def classify_at_infinity(f: CubicForm) -> InfinityData:
    """σ-class of the K_∞-algebra of a nonsingular form over R, with γ(σ).

    Works on exact Laurent expansions; any precision shortfall is retried
    with doubled precision.
    """
    disc = discriminant(f)
    if disc.is_zero:
        raise DomainError(f"{f} has zero discriminant")
    prec = 4 * max(x.deg for x in f.coeffs) + 16
    for attempt in range(PRECISION_RETRIES + 1):
        try:
            data = _classify_once(f, prec)
        except PrecisionError as exc:
            LOGGER.debug(f"classify_at_infinity: precision {prec} too low ({exc}), attempt {attempt}")
            prec *= 2
            continue
        if data.gamma != gamma(data.sigma):
            raise PrecisionError(f"γ mismatch for {f}: {data.gamma} vs {data.sigma}")
        return data
    raise PrecisionError(f"classify_at_infinity gave up on {f} at precision {prec}")


#####################################
# List all exports
#####################################

__all__ = [
    "SigmaClass",
    "EpsilonContext",
    "LocalRegion",
    "InfinityData",
    "fine_classes",
    "gamma",
    "aut_order",
    "epsilon",
    "integrand_value",
    "representative_form",
    "first_irreducible_depressed_cubic",
    "bootstrap_form",
    "local_integral",
    "integrate_c2",
    "eval_C2",
    "c2_closed",
    "c2_star_from_integrals",
    "classify_at_infinity",
]
