"""Exact arithmetic in F_q, R = F_q[T] and residue rings R/F.

Module Information:
    - Filename: ffpoly.py
    - Module: ffpoly
    - Location: src/cubic_census/

Key Concepts:
    - F_q for q = p^k (k ≤ 2) is built once per q from the lexicographically
      least monic irreducible quadratic over F_p; elements are integer codes
      a0 + a1*p and all operations are table lookups.
    - PolyFq is an immutable coefficient tuple, little-endian in T.
    - Factoring is square-free, distinct-degree, then equal-degree splitting
      with an explicit seed.
    - Residue rings R/F carry canonical representatives of degree < deg F
      and numpy operation tables for the vectorized Fourier code.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import itertools
import random

import numpy as np

from .errors import DomainError, InvalidFieldError

#####################################
# The field F_q
#####################################

MAX_Q = 49


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise InvalidFieldError."""
    if q < 2:
        raise InvalidFieldError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise InvalidFieldError(f"q={q} is not a prime power")
    return p, k


def check_q(q: int) -> tuple[int, int]:
    """Validate the standing assumption 2,3 ∤ q together with q ≤ 49, k ≤ 2."""
    p, k = prime_power(q)
    if p in (2, 3):
        raise InvalidFieldError(f"q={q}: characteristic {p} violates the standing assumption 2,3 ∤ q")
    if q > MAX_Q or k > 2:
        raise InvalidFieldError(f"q={q}: only q = p^k with k ≤ 2 and q ≤ {MAX_Q} are supported")
    return p, k


class FqField:
    """The finite field with q elements, coded as integers 0..q-1."""

    def __init__(self, q: int) -> None:
        self.p, self.k = check_q(q)
        self.q = q
        p = self.p
        if self.k == 1:
            self.modulus: tuple[int, ...] = (0, 1)
        else:
            self.modulus = _least_irreducible_quadratic(p)
        m0, m1 = (self.modulus[0], self.modulus[1]) if self.k == 2 else (0, 0)

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a, b in itertools.product(range(q), repeat=2):
            a0, a1 = a % p, a // p
            b0, b1 = b % p, b // p
            add[a, b] = (a0 + b0) % p + p * ((a1 + b1) % p)
            if self.k == 1:
                mul[a, b] = (a * b) % p
            else:
                c0 = (a0 * b0 - a1 * b1 * m0) % p
                c1 = (a0 * b1 + a1 * b0 - a1 * b1 * m1) % p
                mul[a, b] = c0 + p * c1
        self.add_table = add
        self.mul_table = mul
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = [int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)]
        self._inv = [0] + [int(np.nonzero(mul[a] == 1)[0][0]) for a in range(1, q)]
        self.neg_table = np.array(self._neg, dtype=np.int64)
        self._trace = [self._compute_trace(a) for a in range(q)]
        self.trace_table = np.array(self._trace, dtype=np.int64)

    # ---------- basic operations ----------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Embed an integer through the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def trace(self, a: int) -> int:
        """Absolute trace Tr_{F_q/F_p}(a) as an integer in 0..p-1."""
        return self._trace[a]

    def _compute_trace(self, a: int) -> int:
        total, x = 0, a
        for _ in range(self.k):
            total = self._add[total][x]
            x = self.pow(x, self.p)
        return total

    # ---------- power residues ----------

    def is_square(self, a: int) -> bool:
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Return the least square root of a by code, or None."""
        for x in range(self.q):
            if self._mul[x][x] == a:
                return x
        return None

    def is_cube(self, a: int) -> bool:
        return any(self.pow(x, 3) == a for x in range(self.q))

    def least_nonsquare(self) -> int:
        return next(a for a in range(1, self.q) if not self.is_square(a))

    def least_noncube(self) -> int | None:
        """Least non-cube, or None when q ≡ 2 mod 3 (every element is a cube)."""
        return next((a for a in range(1, self.q) if not self.is_cube(a)), None)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FqField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FqField", self.q))

    def __repr__(self) -> str:
        return f"FqField(q={self.q})"

    def __reduce__(self):
        return (get_field, (self.q,))


def _least_irreducible_quadratic(p: int) -> tuple[int, int, int]:
    """Return (m0, m1, 1) for the first x^2 + m1 x + m0 without roots, ordered by (m1, m0)."""
    for m1, m0 in itertools.product(range(p), repeat=2):
        if all((x * x + m1 * x + m0) % p for x in range(p)):
            return (m0, m1, 1)
    raise InvalidFieldError(f"no irreducible quadratic over F_{p}")  # pragma: no cover


@lru_cache(maxsize=None)
def get_field(q: int) -> FqField:
    """Return the shared FqField for q."""
    return FqField(q)


#####################################
# Polynomials over F_q
#####################################


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PolyFq:
    """An element of R = F_q[T]; ``coeffs[i]`` is the coefficient of T^i.

    ``deg`` is -1 for the zero polynomial (standing in for -∞), so that
    ``norm`` = q^deg is 0 there.
    """

    field: FqField
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # ---------- constructors ----------

    @classmethod
    def zero(cls, field: FqField) -> PolyFq:
        return cls(field, ())

    @classmethod
    def one(cls, field: FqField) -> PolyFq:
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: FqField, c: int) -> PolyFq:
        return cls(field, (c,))

    @classmethod
    def T(cls, field: FqField) -> PolyFq:  # noqa: N802
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: FqField, c: int, n: int) -> PolyFq:
        return cls(field, (0,) * n + (c,))

    @classmethod
    def from_ints(cls, field: FqField, values: Iterable[int]) -> PolyFq:
        return cls(field, tuple(int(v) % field.q for v in values))

    # ---------- inspection ----------

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def is_unit(self) -> bool:
        return self.deg == 0

    def norm(self) -> int:
        """|f| = q^deg f (0 for f = 0)."""
        return 0 if self.is_zero else self.field.q**self.deg

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.deg, tuple(reversed(self.coeffs)))

    # ---------- ring operations ----------

    def _coerce(self, other: PolyFq | int) -> PolyFq:
        if isinstance(other, PolyFq):
            return other
        return PolyFq(self.field, (self.field.from_int(other),))

    def __add__(self, other: PolyFq | int) -> PolyFq:
        other = self._coerce(other)
        add = self.field._add
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bi in enumerate(b):
            out[i] = add[out[i]][bi]
        return PolyFq(self.field, tuple(out))

    __radd__ = __add__

    def __neg__(self) -> PolyFq:
        neg = self.field._neg
        return PolyFq(self.field, tuple(neg[c] for c in self.coeffs))

    def __sub__(self, other: PolyFq | int) -> PolyFq:
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyFq | int) -> PolyFq:
        return self._coerce(other) - self

    def __mul__(self, other: PolyFq | int) -> PolyFq:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyFq(self.field, ())
        add, mul = self.field._add, self.field._mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = mul[ai]
            for j, bj in enumerate(b):
                out[i + j] = add[out[i + j]][row[bj]]
        return PolyFq(self.field, tuple(out))

    __rmul__ = __mul__

    def scale(self, c: int) -> PolyFq:
        row = self.field._mul[c]
        return PolyFq(self.field, tuple(row[x] for x in self.coeffs))

    def shift(self, n: int) -> PolyFq:
        """Multiply by T^n (n ≥ 0)."""
        return PolyFq(self.field, (0,) * n + self.coeffs) if self.coeffs else self

    def __pow__(self, e: int) -> PolyFq:
        result, base = PolyFq.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: PolyFq) -> tuple[PolyFq, PolyFq]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        d = other.deg
        inv_lc = f.inv(other.lc)
        quot = [0] * max(len(rem) - d, 0)
        bc = other.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            factor = f._mul[c][inv_lc]
            quot[i - d] = factor
            row = f._mul[factor]
            for j, bj in enumerate(bc):
                rem[i - d + j] = f._add[rem[i - d + j]][f._neg[row[bj]]]
        return PolyFq(f, tuple(quot)), PolyFq(f, tuple(rem[:d]) if d > 0 else ())

    def __floordiv__(self, other: PolyFq) -> PolyFq:
        return divmod(self, other)[0]

    def __mod__(self, other: PolyFq) -> PolyFq:
        return divmod(self, other)[1]

    def divides(self, other: PolyFq) -> bool:
        """True when self | other."""
        return (other % self).is_zero

    def exact_div(self, other: PolyFq) -> PolyFq:
        quot, rem = divmod(self, other)
        if not rem.is_zero:
            raise DomainError(f"{other} does not divide {self}")
        return quot

    def monic(self) -> PolyFq:
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self) -> PolyFq:
        f = self.field
        return PolyFq(f, tuple(f._mul[f.from_int(i)][c] for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x: int) -> int:
        """Evaluate at an element of F_q."""
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f._add[f._mul[acc][x]][c]
        return acc

    def powmod(self, e: int, modulus: PolyFq) -> PolyFq:
        result = PolyFq.one(self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def inverse_mod(self, modulus: PolyFq) -> PolyFq:
        g, s, _ = xgcd(self % modulus, modulus)
        if g.deg != 0:
            raise DomainError(f"{self} is not invertible modulo {modulus}")
        return s.scale(self.field.inv(g.lc)) % modulus

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms)


def gcd(a: PolyFq, b: PolyFq) -> PolyFq:
    """Monic gcd (zero only when both inputs are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def xgcd(a: PolyFq, b: PolyFq) -> tuple[PolyFq, PolyFq, PolyFq]:
    """Return (g, s, t) with s*a + t*b = g (g not normalized)."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = PolyFq.one(field), PolyFq.zero(field)
    t0, t1 = PolyFq.zero(field), PolyFq.one(field)
    while not r1.is_zero:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    return r0, s0, t0


def poly_sqrt(f: PolyFq) -> PolyFq | None:
    """Return h with h^2 = f, or None when f is not a square in R.

    The root is built from the top coefficient down (degree halving), then
    checked by squaring.
    """
    if f.is_zero:
        return f
    if f.deg % 2:
        return None
    field = f.field
    lead = field.sqrt(f.lc)
    if lead is None:
        return None
    n = f.deg // 2
    h = [0] * (n + 1)
    h[n] = lead
    inv_two_lead = field.inv(field.mul(field.from_int(2), lead))
    for k in range(n - 1, -1, -1):
        # coefficient of T^(n+k) in h^2 is 2 h_n h_k + Σ_{k<i<n} h_i h_{n+k-i}
        acc = f.coefficient(n + k)
        for i in range(k + 1, n):
            acc = field.sub(acc, field.mul(h[i], h[n + k - i]))
        h[k] = field.mul(acc, inv_two_lead)
    root = PolyFq(field, tuple(h))
    return root if root * root == f else None


#####################################
# Enumeration of polynomials
#####################################


def polys_up_to_degree(field: FqField, max_deg: int) -> Iterator[PolyFq]:
    """All polynomials of degree ≤ max_deg (including 0), by increasing sort key."""
    yield PolyFq.zero(field)
    for d in range(max_deg + 1):
        for lead in range(1, field.q):
            for rest in itertools.product(range(field.q), repeat=d):
                yield PolyFq(field, tuple(reversed(rest)) + (lead,))


def monic_polys(field: FqField, d: int) -> Iterator[PolyFq]:
    """Monic polynomials of degree d, by increasing sort key."""
    for rest in itertools.product(range(field.q), repeat=d):
        yield PolyFq(field, tuple(reversed(rest)) + (1,))


#####################################
# Irreducibility and factoring
#####################################


def _prime_divisors(n: int) -> list[int]:
    out, m, d = [], n, 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def is_irreducible(f: PolyFq) -> bool:
    """Rabin's test."""
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    g = f.monic()
    n, q = g.deg, g.field.q
    x = PolyFq.T(g.field)
    if (x.powmod(q**n, g) - x) % g != PolyFq.zero(g.field):
        return False
    for r in _prime_divisors(n):
        h = x.powmod(q ** (n // r), g) - x
        if gcd(h, g).deg != 0:
            return False
    return True


def moebius_int(n: int) -> int:
    """Integer Möbius function."""
    result, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    return -result if m > 1 else result


def prime_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d: (1/d) Σ_{e|d} μ(e) q^{d/e}."""
    total = sum(moebius_int(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d


@lru_cache(maxsize=64)
def _primes_of_degree(q: int, d: int) -> tuple[PolyFq, ...]:
    field = get_field(q)
    return tuple(f for f in monic_polys(field, d) if is_irreducible(f))


def primes_of_degree(q: int, d: int) -> list[PolyFq]:
    """Monic irreducible polynomials of degree d, sorted by sort key."""
    if d < 1:
        raise DomainError("prime degree must be at least 1")
    return list(_primes_of_degree(q, d))


def primes_up_to_degree(q: int, d: int) -> list[PolyFq]:
    return [P for e in range(1, d + 1) for P in primes_of_degree(q, e)]


@dataclass(frozen=True)
class Factorization:
    """f = unit * Π P^e with distinct monic irreducible P, sorted."""

    unit: int
    factors: tuple[tuple[PolyFq, int], ...]

    def expand(self, field: FqField) -> PolyFq:
        out = PolyFq.constant(field, self.unit)
        for P, e in self.factors:
            out = out * P**e
        return out

    def primes(self) -> list[PolyFq]:
        return [P for P, _ in self.factors]


def _pth_root(f: PolyFq) -> PolyFq:
    field = f.field
    p = field.p
    e = field.q // p
    return PolyFq(field, tuple(field.pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), p)))


def squarefree_decomposition(f: PolyFq) -> list[tuple[PolyFq, int]]:
    """Square-free factors of a monic f with multiplicities."""
    field = f.field
    one = PolyFq.one(field)
    out: list[tuple[PolyFq, int]] = []
    df = f.derivative()
    if df.is_zero:
        if f.deg <= 0:
            return out
        return [(g, e * field.p) for g, e in squarefree_decomposition(_pth_root(f))]
    c = gcd(f, df)
    w = f // c
    i = 1
    while w != one:
        y = gcd(w, c)
        fac = w // y
        if fac.deg > 0:
            out.append((fac.monic(), i))
        i += 1
        w, c = y, c // y
    if c.deg > 0:
        out.extend((g, e * field.p) for g, e in squarefree_decomposition(_pth_root(c.monic())))
    return out


def distinct_degree(f: PolyFq) -> list[tuple[PolyFq, int]]:
    """Split a monic square-free f into products of irreducibles of equal degree."""
    field = f.field
    x = PolyFq.T(field)
    rest, h, i = f, x, 1
    out: list[tuple[PolyFq, int]] = []
    while rest.deg >= 2 * i:
        h = h.powmod(field.q, rest)
        g = gcd(h - x, rest)
        if g.deg > 0:
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.deg > 0:
        out.append((rest.monic(), rest.deg))
    return out


def equal_degree(f: PolyFq, d: int, rng: random.Random) -> list[PolyFq]:
    """Cantor–Zassenhaus split of a product of degree-d irreducibles (q odd)."""
    if f.deg == d:
        return [f.monic()]
    field = f.field
    exponent = (field.q**d - 1) // 2
    while True:
        a = PolyFq(field, tuple(rng.randrange(field.q) for _ in range(f.deg)))
        if a.deg < 1:
            continue
        b = a.powmod(exponent, f) - 1
        h = gcd(b, f)
        if 0 < h.deg < f.deg:
            return equal_degree(h, d, rng) + equal_degree(f // h, d, rng)


def poly_factor(f: PolyFq, seed: int = 0) -> Factorization:
    """Factor f into unit * Π P^e; reproducible for a fixed seed."""
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f.lc
    collected: dict[PolyFq, int] = {}
    for part, mult in squarefree_decomposition(f.monic()):
        for block, d in distinct_degree(part):
            for P in equal_degree(block, d, rng):
                collected[P] = collected.get(P, 0) + mult
    factors = tuple(sorted(collected.items(), key=lambda item: item[0].sort_key()))
    return Factorization(unit, factors)


#####################################
# Arithmetic functions on R
#####################################


def _require_monic(f: PolyFq) -> None:
    if f.is_zero or not f.is_monic:
        raise DomainError(f"expected a monic nonzero polynomial, got {f}")


def moebius(f: PolyFq) -> int:
    """μ(f) for monic f."""
    _require_monic(f)
    if f.deg == 0:
        return 1
    fac = poly_factor(f)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def sigma_divisors(f: PolyFq) -> int:
    """σ(f) = Σ_{d | f monic} |d|."""
    _require_monic(f)
    total = 1
    for P, e in poly_factor(f).factors:
        norm = P.norm()
        total *= sum(norm**i for i in range(e + 1))
    return total


def zeta_R(q: int, s: int) -> Fraction:  # noqa: N802
    """ζ_R(s) = 1/(1 - q^{1-s}) for s ≥ 2."""
    if s <= 1:
        raise DomainError(f"ζ_R has its pole region at s ≤ 1, got s={s}")
    return 1 / (1 - Fraction(1, q ** (s - 1)))


#####################################
# Residue rings R/F
#####################################


class ResidueRing:
    """R/F with elements indexed by Σ c_i q^i over the canonical representative."""

    def __init__(self, modulus: PolyFq) -> None:
        if modulus.is_zero:
            raise DomainError("residue ring modulus must be nonzero")
        self.modulus = modulus.monic()
        self.field = modulus.field
        self.degree = self.modulus.deg
        self.size = self.field.q**self.degree
        self._tables: tuple[np.ndarray, np.ndarray] | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ResidueRing) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("ResidueRing", self.modulus))

    def __repr__(self) -> str:
        return f"ResidueRing({self.modulus})"

    def __call__(self, value: PolyFq | int) -> ResidueElem:
        if isinstance(value, int):
            value = PolyFq.constant(self.field, self.field.from_int(value))
        return ResidueElem(self, value % self.modulus)

    def zero(self) -> ResidueElem:
        return self(PolyFq.zero(self.field))

    def one(self) -> ResidueElem:
        return self(PolyFq.one(self.field))

    def element(self, index: int) -> ResidueElem:
        q = self.field.q
        digits = []
        for _ in range(self.degree):
            digits.append(index % q)
            index //= q
        return ResidueElem(self, PolyFq(self.field, tuple(digits)))

    def index(self, elem: ResidueElem | PolyFq) -> int:
        rep = elem.rep if isinstance(elem, ResidueElem) else elem % self.modulus
        q = self.field.q
        return sum(c * q**i for i, c in enumerate(rep.coeffs))

    def elements(self) -> Iterator[ResidueElem]:
        for i in range(self.size):
            yield self.element(i)

    def constant_index(self, n: int) -> int:
        """Index of the image of the integer n."""
        return self.field.from_int(n)

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add, mul) tables of shape (size, size) over element indices."""
        if self._tables is None:
            elems = [self.element(i) for i in range(self.size)]
            add = np.zeros((self.size, self.size), dtype=np.int64)
            mul = np.zeros((self.size, self.size), dtype=np.int64)
            for i, a in enumerate(elems):
                for j in range(i, self.size):
                    b = elems[j]
                    add[i, j] = add[j, i] = self.index(a + b)
                    mul[i, j] = mul[j, i] = self.index(a * b)
            self._tables = (add, mul)
        return self._tables

    def top_coefficient_table(self) -> np.ndarray:
        """Coefficient of T^(deg F - 1) of each representative, as an F_q code."""
        q = self.field.q
        return np.arange(self.size, dtype=np.int64) // q ** (self.degree - 1)


@dataclass(frozen=True)
class ResidueElem:
    """An element of R/F held as its canonical representative."""

    ring: ResidueRing
    rep: PolyFq

    def _coerce(self, other: ResidueElem | PolyFq | int) -> ResidueElem:
        if isinstance(other, ResidueElem):
            return other
        return self.ring(other)

    def __add__(self, other: ResidueElem | PolyFq | int) -> ResidueElem:
        return ResidueElem(self.ring, (self.rep + self._coerce(other).rep) % self.ring.modulus)

    __radd__ = __add__

    def __neg__(self) -> ResidueElem:
        return ResidueElem(self.ring, -self.rep)

    def __sub__(self, other: ResidueElem | PolyFq | int) -> ResidueElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other: ResidueElem | PolyFq | int) -> ResidueElem:
        return self._coerce(other) - self

    def __mul__(self, other: ResidueElem | PolyFq | int) -> ResidueElem:
        return ResidueElem(self.ring, (self.rep * self._coerce(other).rep) % self.ring.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ResidueElem:
        if e < 0:
            return self.inverse() ** (-e)
        return ResidueElem(self.ring, self.rep.powmod(e, self.ring.modulus))

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def is_unit(self) -> bool:
        return gcd(self.rep, self.ring.modulus).deg == 0 and not self.rep.is_zero

    def inverse(self) -> ResidueElem:
        return ResidueElem(self.ring, self.rep.inverse_mod(self.ring.modulus))

    def __repr__(self) -> str:
        return f"[{self.rep} mod {self.ring.modulus}]"


#####################################
# List all exports
#####################################

__all__ = [
    "FqField",
    "PolyFq",
    "ResidueRing",
    "ResidueElem",
    "Factorization",
    "get_field",
    "check_q",
    "prime_power",
    "gcd",
    "xgcd",
    "poly_sqrt",
    "is_irreducible",
    "poly_factor",
    "squarefree_decomposition",
    "distinct_degree",
    "equal_degree",
    "primes_of_degree",
    "primes_up_to_degree",
    "prime_count",
    "moebius",
    "moebius_int",
    "sigma_divisors",
    "zeta_R",
    "polys_up_to_degree",
    "monic_polys",
]
