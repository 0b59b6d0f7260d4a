"""Binary cubic forms over R, R/P and K_∞.

Module Information:
    - Filename: forms.py
    - Module: forms
    - Location: src/cubic_census/

Key Concepts:
    - A form f = a x³ + b x²y + c xy² + d y³ is stored as its four
      coefficients; the coefficient domain is PolyFq, ResidueElem or
      LaurentElem and every operation works through the shared ring
      operators of those types.
    - GL₂ acts by (gf)(x, y) = det(g)⁻¹ f((x, y)g).
    - Splitting types mod P come from the discriminant, the Hessian and the
      Frobenius x^|P| modulo the dehomogenized cubic, so no root search over
      R/P is needed.
    - Maximality at P is the double-root lifting criterion: move the
      multiple root to [0:1] and test P | c, P² | d.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import StrEnum
import itertools

import numpy as np

from .errors import DomainError
from .ffpoly import FqField, PolyFq, ResidueElem, ResidueRing, poly_factor, poly_sqrt
from .laurent import LaurentElem
from .utils_logger import get_logger

LOGGER = get_logger(__name__)

Coeff = PolyFq | ResidueElem | LaurentElem

#####################################
# Splitting types
#####################################


class SplittingType(StrEnum):
    """Factorization shape of a form modulo a prime (or of σ at infinity)."""

    S111 = "(111)"
    S21 = "(21)"
    S3 = "(3)"
    S121 = "(1^2 1)"
    S13 = "(1^3)"
    ZERO = "(0)"

    @classmethod
    def parse(cls, text: str) -> SplittingType:
        key = text.strip().replace(" ", "").replace("^", "").replace("²", "2").replace("³", "3").strip("()")
        aliases = {
            "111": cls.S111,
            "21": cls.S21,
            "3": cls.S3,
            "121": cls.S121,
            "13": cls.S13,
            "0": cls.ZERO,
        }
        if key not in aliases:
            raise DomainError(f"unknown splitting type {text!r}")
        return aliases[key]

    @property
    def is_unramified(self) -> bool:
        return self in (SplittingType.S111, SplittingType.S21, SplittingType.S3)

    @property
    def residue_degrees(self) -> tuple[int, ...]:
        """Residue degrees of the places above a prime with this splitting."""
        return _RESIDUE_DEGREES[self]

    @property
    def root_count(self) -> int:
        """Distinct roots in P¹ of a form of this type (|P|+1 is not representable, so ZERO gives -1)."""
        return _ROOT_COUNTS[self]


_RESIDUE_DEGREES = {
    SplittingType.S111: (1, 1, 1),
    SplittingType.S21: (1, 2),
    SplittingType.S3: (3,),
    SplittingType.S121: (1, 1),
    SplittingType.S13: (1,),
    SplittingType.ZERO: (),
}
_ROOT_COUNTS = {
    SplittingType.S111: 3,
    SplittingType.S21: 1,
    SplittingType.S3: 0,
    SplittingType.S121: 2,
    SplittingType.S13: 1,
    SplittingType.ZERO: -1,
}

# Integer codes used by the vectorized tables.
SPLITTING_ORDER: tuple[SplittingType, ...] = (
    SplittingType.S111,
    SplittingType.S21,
    SplittingType.S3,
    SplittingType.S121,
    SplittingType.S13,
    SplittingType.ZERO,
)
NONZERO_TYPES: tuple[SplittingType, ...] = SPLITTING_ORDER[:5]

#####################################
# Coefficient helpers
#####################################


def _is_zero(x: Coeff) -> bool:
    return x.is_zero


def _one_like(x: Coeff) -> Coeff:
    if isinstance(x, PolyFq):
        return PolyFq.one(x.field)
    if isinstance(x, ResidueElem):
        return x.ring.one()
    return LaurentElem.constant(x.field, 1, x.prec - min(x.val, 0))


def _zero_like(x: Coeff) -> Coeff:
    return x * 0


def _unit_inverse(x: Coeff) -> Coeff:
    if isinstance(x, PolyFq):
        if x.deg != 0:
            raise DomainError(f"determinant {x} is not a unit of R")
        return PolyFq.constant(x.field, x.field.inv(x.lc))
    if isinstance(x, ResidueElem):
        if not x.is_unit():
            raise DomainError(f"determinant {x} is not a unit of R/P")
        return x.inverse()
    if x.is_zero:
        raise DomainError("determinant vanishes in K_∞")
    return x.invert()


#####################################
# CubicForm and GL2Elem
#####################################


@dataclass(frozen=True)
class CubicForm:
    """a x³ + b x²y + c xy² + d y³."""

    a: Coeff
    b: Coeff
    c: Coeff
    d: Coeff

    @classmethod
    def from_ints(cls, field: FqField, *coeffs: int | list[int] | tuple[int, ...]) -> CubicForm:
        """Build a form over R; each coefficient is an F_q code or a little-endian code list."""
        if len(coeffs) != 4:
            raise DomainError("a cubic form has four coefficients")
        polys = [PolyFq.from_ints(field, [c] if isinstance(c, int) else c) for c in coeffs]
        return cls(*polys)

    @classmethod
    def from_json(cls, field: FqField, data: list[list[int]]) -> CubicForm:
        return cls.from_ints(field, *data)

    @property
    def coeffs(self) -> tuple[Coeff, Coeff, Coeff, Coeff]:
        return (self.a, self.b, self.c, self.d)

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(x) for x in self.coeffs)

    def map(self, fn: Callable[[Coeff], Coeff]) -> CubicForm:
        return CubicForm(*(fn(x) for x in self.coeffs))

    def reduce(self, ring: ResidueRing) -> CubicForm:
        """Image over R/P."""
        return self.map(lambda x: x if isinstance(x, ResidueElem) else ring(x))

    def discriminant(self) -> Coeff:
        return discriminant(self)

    def hessian(self) -> tuple[Coeff, Coeff, Coeff]:
        return hessian(self)

    def evaluate(self, x: Coeff, y: Coeff) -> Coeff:
        return ((self.a * x + self.b * y) * x + self.c * y * y) * x + self.d * y * y * y

    def max_degree(self) -> int:
        """Largest coefficient degree (forms over R only)."""
        return max(x.deg for x in self.coeffs)

    def to_json(self) -> list[list[int]]:
        return [list(x.coeffs) for x in self.coeffs]

    def __repr__(self) -> str:
        return f"CubicForm({self.a}, {self.b}, {self.c}, {self.d})"


@dataclass(frozen=True)
class GL2Elem:
    """[[a11, a12], [a21, a22]] acting on row vectors (x, y)."""

    a11: Coeff
    a12: Coeff
    a21: Coeff
    a22: Coeff

    @property
    def det(self) -> Coeff:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __matmul__(self, other: GL2Elem) -> GL2Elem:
        return GL2Elem(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    @classmethod
    def identity(cls, like: Coeff) -> GL2Elem:
        one, zero = _one_like(like), _zero_like(like)
        return cls(one, zero, zero, one)

    @classmethod
    def swap(cls, like: Coeff) -> GL2Elem:
        one, zero = _one_like(like), _zero_like(like)
        return cls(zero, one, one, zero)

    @classmethod
    def diag(cls, u: Coeff, v: Coeff) -> GL2Elem:
        zero = _zero_like(u)
        return cls(u, zero, zero, v)

    @classmethod
    def lower_shear(cls, r: Coeff) -> GL2Elem:
        """(x, y) ↦ (x + r y, y)."""
        one, zero = _one_like(r), _zero_like(r)
        return cls(one, zero, r, one)

    @classmethod
    def upper_shear(cls, s: Coeff) -> GL2Elem:
        """(x, y) ↦ (x, s x + y)."""
        one, zero = _one_like(s), _zero_like(s)
        return cls(one, s, zero, one)


#####################################
# Discriminant, Hessian, GL2 action
#####################################


def discriminant(f: CubicForm) -> Coeff:
    """b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd."""
    a, b, c, d = f.coeffs
    return b * b * c * c - a * c * c * c * 4 - b * b * b * d * 4 - a * a * d * d * 27 + a * b * c * d * 18


def hessian(f: CubicForm) -> tuple[Coeff, Coeff, Coeff]:
    """Coefficients (A, B, C) of the Hessian covariant A x² + B xy + C y²."""
    a, b, c, d = f.coeffs
    return (b * b - a * c * 3, b * c - a * d * 9, c * c - b * d * 3)


def gl2_act(g: GL2Elem, f: CubicForm) -> CubicForm:
    """(gf)(x, y) = det(g)⁻¹ f(x a11 + y a21, x a12 + y a22)."""
    inv = _unit_inverse(g.det)
    p, s, r, t = g.a11, g.a12, g.a21, g.a22
    a, b, c, d = f.coeffs
    new_a = a * p * p * p + b * p * p * s + c * p * s * s + d * s * s * s
    new_b = (
        a * p * p * r * 3
        + b * (p * p * t + p * r * s * 2)
        + c * (p * s * t * 2 + r * s * s)
        + d * s * s * t * 3
    )
    new_c = (
        a * p * r * r * 3
        + b * (p * r * t * 2 + r * r * s)
        + c * (p * t * t + r * s * t * 2)
        + d * s * t * t * 3
    )
    new_d = a * r * r * r + b * r * r * t + c * r * t * t + d * t * t * t
    return CubicForm(new_a * inv, new_b * inv, new_c * inv, new_d * inv)


#####################################
# Roots and splitting modulo P
#####################################

P1Point = tuple[ResidueElem, ResidueElem]


def _dehomogenized(f: CubicForm) -> list[ResidueElem]:
    """f(x, 1) as a little-endian coefficient list with trailing zeros removed."""
    coeffs = [f.d, f.c, f.b, f.a]
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _root_multiplicity(coeffs: list[ResidueElem], r: ResidueElem) -> int:
    mult, current = 0, list(coeffs)
    while len(current) > 1:
        quotient, acc = [], current[-1]
        for c in reversed(current[:-1]):
            quotient.append(acc)
            acc = acc * r + c
        if not acc.is_zero:
            break
        mult += 1
        current = list(reversed(quotient))
    return mult


def roots_P1(f: CubicForm, P: PolyFq) -> list[tuple[P1Point, int]]:  # noqa: N802
    """Roots of f mod P in P¹(R/P) with multiplicities.

    Points are [r:1] by increasing index of r, then [1:0]. Every point is
    returned with multiplicity 3 for the zero form.
    """
    ring = ResidueRing(P)
    fp = f.reduce(ring)
    one, zero = ring.one(), ring.zero()
    if fp.is_zero:
        return [((r, one), 3) for r in ring.elements()] + [((one, zero), 3)]
    coeffs = _dehomogenized(fp)
    out: list[tuple[P1Point, int]] = []
    for r in ring.elements():
        m = _root_multiplicity(coeffs, r)
        if m:
            out.append(((r, one), m))
    if len(coeffs) < 4:
        out.append(((one, zero), 4 - len(coeffs)))
    return out


def omega_P(f: CubicForm, P: PolyFq) -> int:  # noqa: N802
    """Number of distinct roots of f mod P in P¹(R/P); |P| + 1 for the zero form."""
    return len(roots_P1(f, P))


def _cubic_mulmod(u: list[ResidueElem], v: list[ResidueElem], g: list[ResidueElem]) -> list[ResidueElem]:
    """u v modulo the monic cubic x³ + g2 x² + g1 x + g0."""
    zero = g[0].ring.zero()
    prod = [zero] * 5
    for i, ui in enumerate(u):
        if ui.is_zero:
            continue
        for j, vj in enumerate(v):
            prod[i + j] = prod[i + j] + ui * vj
    for k in (4, 3):
        top = prod[k]
        if top.is_zero:
            continue
        for i in range(3):
            prod[k - 3 + i] = prod[k - 3 + i] - top * g[i]
    return prod[:3]


def _frobenius_fixes_x(g: list[ResidueElem], size: int) -> bool:
    """True when x^size ≡ x modulo the monic cubic g."""
    ring = g[0].ring
    zero, one = ring.zero(), ring.one()
    x = [zero, one, zero]
    result, base, e = [one, zero, zero], x, size
    while e:
        if e & 1:
            result = _cubic_mulmod(result, base, g)
        base = _cubic_mulmod(base, base, g)
        e >>= 1
    return result == x


def classify_mod_P(f: CubicForm, P: PolyFq) -> SplittingType:  # noqa: N802
    """Splitting type of f modulo the prime P."""
    ring = ResidueRing(P)
    fp = f.reduce(ring)
    if fp.is_zero:
        return SplittingType.ZERO
    disc = discriminant(fp)
    if disc.is_zero:
        if all(h.is_zero for h in hessian(fp)):
            return SplittingType.S13
        return SplittingType.S121
    square = disc ** ((ring.size - 1) // 2) == ring.one()
    if not square:
        return SplittingType.S21
    if fp.a.is_zero:
        return SplittingType.S111
    inv_a = fp.a.inverse()
    monic = [fp.d * inv_a, fp.c * inv_a, fp.b * inv_a]
    return SplittingType.S111 if _frobenius_fixes_x(monic, ring.size) else SplittingType.S3


def splitting_type_table(ring: ResidueRing) -> tuple[np.ndarray, np.ndarray]:
    """Splitting-type codes and root counts of every form over R/P.

    Both arrays have shape (|P|,)*4 indexed by coefficient indices (a, b, c, d);
    codes index into ``SPLITTING_ORDER``.
    """
    add, mul = (t.astype(np.int32) for t in ring.tables())
    neg = np.argmax(add == 0, axis=1).astype(np.int32)
    size = ring.size
    a, b, c, d = np.indices((size,) * 4, sparse=True)

    def k(n: int) -> int:
        return ring.constant_index(n)

    roots = np.zeros((size,) * 4, dtype=np.int32)
    for r in range(size):
        value = add[mul[add[mul[add[mul[a, r], b], r], c], r], d]
        roots += value == 0
    roots += np.broadcast_to(a == 0, roots.shape)

    b2 = mul[b, b]
    c2 = mul[c, c]
    t1 = mul[b2, c2]
    t2 = mul[k(4), mul[a, mul[c2, c]]]
    t3 = mul[k(4), mul[mul[b2, b], d]]
    t4 = mul[k(27), mul[mul[a, a], mul[d, d]]]
    t5 = mul[k(18), mul[mul[a, b], mul[c, d]]]
    disc = add[add[add[add[t1, neg[t2]], neg[t3]], neg[t4]], t5]

    codes = np.full((size,) * 4, SPLITTING_ORDER.index(SplittingType.S21), dtype=np.int8)
    codes[roots == 3] = SPLITTING_ORDER.index(SplittingType.S111)
    codes[roots == 0] = SPLITTING_ORDER.index(SplittingType.S3)
    codes[roots == 2] = SPLITTING_ORDER.index(SplittingType.S121)
    codes[(roots == 1) & (disc == 0)] = SPLITTING_ORDER.index(SplittingType.S13)
    codes[roots == size + 1] = SPLITTING_ORDER.index(SplittingType.ZERO)
    return codes, roots


#####################################
# Levi–Delone–Faddeev rings
#####################################

Triple = tuple[PolyFq, PolyFq, PolyFq]


@dataclass(frozen=True)
class CubicRing:
    """R-algebra with basis ⟨1, ω, θ⟩; elements are coordinate triples."""

    form: CubicForm
    omega_theta: Triple
    omega_sq: Triple
    theta_sq: Triple

    def _zero(self) -> PolyFq:
        return PolyFq.zero(self.form.a.field)

    def basis_product(self, i: int, j: int) -> Triple:
        zero, one = self._zero(), PolyFq.one(self.form.a.field)
        basis = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
        if i == 0:
            return basis[j]
        if j == 0:
            return basis[i]
        if i == j:
            return self.omega_sq if i == 1 else self.theta_sq
        return self.omega_theta

    def mul(self, x: Triple, y: Triple) -> Triple:
        out = [self._zero()] * 3
        for i, j in itertools.product(range(3), repeat=2):
            coeff = x[i] * y[j]
            if coeff.is_zero:
                continue
            prod = self.basis_product(i, j)
            for k in range(3):
                out[k] = out[k] + coeff * prod[k]
        return (out[0], out[1], out[2])

    def basis_traces(self) -> Triple:
        """Tr(e_i) read off the multiplication table."""
        traces = []
        for i in range(3):
            total = self._zero()
            for j in range(3):
                total = total + self.basis_product(i, j)[j]
            traces.append(total)
        return (traces[0], traces[1], traces[2])

    def trace(self, x: Triple) -> PolyFq:
        tr = self.basis_traces()
        return x[0] * tr[0] + x[1] * tr[1] + x[2] * tr[2]

    def trace_form(self) -> list[list[PolyFq]]:
        tr = self.basis_traces()
        return [
            [sum((self.basis_product(i, j)[k] * tr[k] for k in range(3)), self._zero()) for j in range(3)]
            for i in range(3)
        ]

    def discriminant(self) -> PolyFq:
        m = self.trace_form()
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def is_associative(self) -> bool:
        zero, one = self._zero(), PolyFq.one(self.form.a.field)
        basis = [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
        return all(
            self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
            for x, y, z in itertools.product(basis, repeat=3)
        )


def ldf_ring(f: CubicForm) -> CubicRing:
    """Cubic ring of a form over R: ωθ = −ad, ω² = −ac − bω + aθ, θ² = −bd − dω + cθ."""
    a, b, c, d = f.coeffs
    zero = PolyFq.zero(a.field)
    return CubicRing(
        form=f,
        omega_theta=(-(a * d), zero, zero),
        omega_sq=(-(a * c), -b, a),
        theta_sq=(-(b * d), -d, c),
    )


#####################################
# Maximality
#####################################


def _multiple_root(fp: CubicForm) -> ResidueElem | None:
    """The repeated root of a singular nonzero form over R/P: r for [r:1], None for [1:0]."""
    h_a, h_b, h_c = hessian(fp)
    if h_a.is_zero and h_b.is_zero and h_c.is_zero:
        if fp.a.is_zero:
            return None
        return -fp.b * (fp.a * 3).inverse()
    if h_a.is_zero:
        return None
    return -h_b * (h_a * 2).inverse()


def _root_mover(root: ResidueElem | None, field: FqField) -> GL2Elem:
    """An element of GL₂(R) sending the given root to [0:1]."""
    if root is None:
        return GL2Elem.swap(PolyFq.one(field))
    return GL2Elem.lower_shear(root.rep)


def _require_nonsingular(f: CubicForm) -> None:
    if discriminant(f).is_zero:
        raise DomainError(f"{f} has zero discriminant")


def is_maximal_at(f: CubicForm, P: PolyFq) -> bool:
    """True when the ring of f is maximal at the prime P."""
    _require_nonsingular(f)
    ring = ResidueRing(P)
    fp = f.reduce(ring)
    if fp.is_zero:
        return False
    if not discriminant(fp).is_zero:
        return True
    moved = gl2_act(_root_mover(_multiple_root(fp), P.field), f)
    return not (P.divides(moved.c) and (P * P).divides(moved.d))


def _maximalize_step(f: CubicForm, P: PolyFq) -> tuple[CubicForm, PolyFq]:
    if all(P.divides(x) for x in f.coeffs):
        return f.map(lambda x: x.exact_div(P)), P * P
    ring = ResidueRing(P)
    moved = gl2_act(_root_mover(_multiple_root(f.reduce(ring)), P.field), f)
    return CubicForm(moved.a * P, moved.b, moved.c.exact_div(P), moved.d.exact_div(P * P)), P


def maximalize(f: CubicForm, seed: int = 0) -> tuple[CubicForm, PolyFq]:
    """Return (g, index) with g maximal everywhere and Disc(f) = index² Disc(g)."""
    _require_nonsingular(f)
    current = f
    index = PolyFq.one(f.a.field)
    for P, e in poly_factor(discriminant(f), seed).factors:
        if e < 2:
            continue
        while not is_maximal_at(current, P):
            current, step = _maximalize_step(current, P)
            index = index * step
            LOGGER.debug(f"maximalize: step at P={P}, index now {index}")
    return current, index


#####################################
# Irreducibility and the Galois test
#####################################


def _monic_divisors(n: PolyFq, seed: int = 0) -> Iterator[PolyFq]:
    field = n.field
    factors = poly_factor(n, seed).factors
    for exponents in itertools.product(*(range(e + 1) for _, e in factors)):
        out = PolyFq.one(field)
        for (P, _), k in zip(factors, exponents, strict=True):
            out = out * P**k
        yield out


def is_irreducible_form(f: CubicForm) -> bool:
    """True when f has no root in P¹(K), K = F_q(T)."""
    a, b, c, d = f.coeffs
    if a.is_zero or d.is_zero:
        return False
    # a root x of f(x, 1) gives the integral root z = a x of z³ + b z² + ac z + a²d
    coeffs = [a * a * d, a * c, b, PolyFq.one(a.field)]
    field = a.field
    for divisor in _monic_divisors(a * a * d):
        for u in range(1, field.q):
            z = divisor.scale(u)
            acc = coeffs[3]
            for coef in reversed(coeffs[:3]):
                acc = acc * z + coef
            if acc.is_zero:
                return False
    return True


def is_galois(f: CubicForm) -> bool:
    """True when Disc(f) is a square in R, for irreducible f."""
    _require_nonsingular(f)
    if not is_irreducible_form(f):
        raise DomainError(f"{f} is reducible over K")
    return poly_sqrt(discriminant(f)) is not None


#####################################
# Residue-field censuses
#####################################


def _constant_form(field: FqField, codes: tuple[int, int, int, int]) -> CubicForm:
    return CubicForm(*(PolyFq.constant(field, c) for c in codes))


def orbit_partition(field: FqField) -> list[list[tuple[int, int, int, int]]]:
    """GL₂(F_q)-orbits on all q⁴ forms over F_q, each orbit sorted, orbits ordered by least member."""
    q = field.q
    generator = next(g for g in range(2, q) if all(field.pow(g, (q - 1) // r) != 1 for r in _prime_factors(q - 1)))
    one, zero = PolyFq.one(field), PolyFq.zero(field)
    moves = [
        GL2Elem.diag(PolyFq.constant(field, generator), one),
        GL2Elem.lower_shear(one),
        GL2Elem(zero, one, one, zero),
    ]
    seen: set[tuple[int, int, int, int]] = set()
    orbits = []
    for start in itertools.product(range(q), repeat=4):
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            current = _constant_form(field, queue.popleft())
            for g in moves:
                image = gl2_act(g, current)
                key = tuple(x.coefficient(0) for x in image.coeffs)
                if key not in orbit:
                    orbit.add(key)
                    queue.append(key)
        seen |= orbit
        orbits.append(sorted(orbit))
    LOGGER.debug(f"orbit_partition: q={q}, {len(orbits)} orbits")
    return orbits


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def count_maximal_mod_P2(field: FqField, P: PolyFq) -> int:  # noqa: N802
    """Exhaustive count of forms f0 + P f1 over R/P² (deg P = 1) maximal at P.

    Residue forms f0 and lift digits f1 both range over F_q⁴; for a singular
    f0 the lifts are scored all at once with numpy.
    """
    if P.deg != 1:
        raise DomainError("count_maximal_mod_P2 needs a prime of degree 1")
    q = field.q
    ring = ResidueRing(P)
    add, mul = field.add_table, field.mul_table
    a1, b1, c1, d1 = np.indices((q,) * 4).reshape(4, -1)
    nonmaximal = 0
    for codes in itertools.product(range(q), repeat=4):
        if not any(codes):
            nonmaximal += q**4
            continue
        f0 = _constant_form(field, codes)
        if not discriminant(f0).is_zero:
            continue
        root = _multiple_root(f0.reduce(ring))
        if root is None:
            lifted = a1
        else:
            r = root.rep.coefficient(0)
            lifted = add[mul[add[mul[add[mul[a1, r], b1], r], c1], r], d1]
        nonmaximal += int(np.count_nonzero(lifted == 0))
    return q**8 - nonmaximal


#####################################
# List all exports
#####################################

__all__ = [
    "SplittingType",
    "SPLITTING_ORDER",
    "NONZERO_TYPES",
    "CubicForm",
    "GL2Elem",
    "CubicRing",
    "discriminant",
    "hessian",
    "gl2_act",
    "roots_P1",
    "omega_P",
    "classify_mod_P",
    "splitting_type_table",
    "ldf_ring",
    "is_maximal_at",
    "maximalize",
    "is_irreducible_form",
    "is_galois",
    "orbit_partition",
    "count_maximal_mod_P2",
]
