"""Exact scalars in ℚ[q^{1/6}] and the formal φ-symbol algebra.

Module Information:
    - Filename: qsixth.py
    - Module: qsixth
    - Location: src/cubic_census/

QSixth fixes q = p^k and stores Σ c_s p^{s/6} with s in 0..5 and rational
c_s, which is a canonical form because x^6 - p is irreducible over ℚ.
SecondaryElem is a finite sum Σ c_n φ(n) over even shifts n with QSixth
coefficients; ⊗ adds shifts and multiplies coefficients.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping
from fractions import Fraction
import math

from .errors import DomainError
from .ffpoly import prime_power


class QSixth:
    """An element Σ c_s p^{s/6} of ℚ(p^{1/6}) attached to a fixed q."""

    __slots__ = ("q", "p", "k", "terms")

    def __init__(self, q: int, terms: Mapping[int, Fraction | int] | None = None) -> None:
        self.q = q
        self.p, self.k = prime_power(q)
        reduced: dict[int, Fraction] = {}
        for sixths, coeff in (terms or {}).items():
            m, s = divmod(sixths, 6)
            value = Fraction(coeff) * Fraction(self.p) ** m
            reduced[s] = reduced.get(s, Fraction(0)) + value
        self.terms = {s: c for s, c in sorted(reduced.items()) if c != 0}

    # ---------- constructors ----------

    @classmethod
    def power(cls, q: int, sixths: int, coeff: Fraction | int = 1) -> QSixth:
        """coeff · q^{sixths/6}."""
        k = prime_power(q)[1]
        return cls(q, {k * sixths: coeff})

    @classmethod
    def of(cls, q: int, value: Fraction | int) -> QSixth:
        return cls(q, {0: value})

    @classmethod
    def zero(cls, q: int) -> QSixth:
        return cls(q)

    # ---------- arithmetic ----------

    def _coerce(self, other: QSixth | Fraction | int) -> QSixth:
        if isinstance(other, QSixth):
            if other.q != self.q:
                raise DomainError(f"mixing q={self.q} and q={other.q}")
            return other
        return QSixth.of(self.q, other)

    def __add__(self, other: QSixth | Fraction | int) -> QSixth:
        other = self._coerce(other)
        terms = dict(self.terms)
        for s, c in other.terms.items():
            terms[s] = terms.get(s, Fraction(0)) + c
        return QSixth(self.q, terms)

    __radd__ = __add__

    def __neg__(self) -> QSixth:
        return QSixth(self.q, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: QSixth | Fraction | int) -> QSixth:
        return self + (-self._coerce(other))

    def __rsub__(self, other: QSixth | Fraction | int) -> QSixth:
        return self._coerce(other) - self

    def __mul__(self, other: QSixth | Fraction | int) -> QSixth:
        other = self._coerce(other)
        terms: dict[int, Fraction] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                terms[s1 + s2] = terms.get(s1 + s2, Fraction(0)) + c1 * c2
        return QSixth(self.q, terms)

    __rmul__ = __mul__

    def __truediv__(self, other: Fraction | int | QSixth) -> QSixth:
        if isinstance(other, QSixth):
            if len(other.terms) != 1:
                raise DomainError("division only by rationals or single monomials")
            ((s, c),) = other.terms.items()
            return self * QSixth(self.q, {-s: 1 / c})
        return QSixth(self.q, {s: c / Fraction(other) for s, c in self.terms.items()})

    def __pow__(self, e: int) -> QSixth:
        if e < 0:
            return QSixth.of(self.q, 1) / (self ** (-e))
        result = QSixth.of(self.q, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QSixth.of(self.q, other)
        if not isinstance(other, QSixth):
            return NotImplemented
        return self.q == other.q and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.q, tuple(self.terms.items())))

    def __float__(self) -> float:
        return sum(float(c) * self.p ** (s / 6) for s, c in self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return set(self.terms) <= {0}

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is irrational")
        return self.terms.get(0, Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        base = "q" if self.k == 1 else f"{self.p}"
        parts = []
        for s, c in self.terms.items():
            parts.append(str(c) if s == 0 else f"{c}*{base}^({s}/6)")
        return " + ".join(parts)


class SecondaryElem:
    """Σ_n c_n φ(n) with even shifts n and QSixth coefficients."""

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: Mapping[int, QSixth] | None = None) -> None:
        self.q = q
        cleaned: dict[int, QSixth] = {}
        for n, c in (terms or {}).items():
            if n % 2:
                raise DomainError(f"odd φ-shift {n}; every shift is even")
            coeff = c if isinstance(c, QSixth) else QSixth.of(q, c)
            total = cleaned.get(n, QSixth.zero(q)) + coeff
            cleaned[n] = total
        self.terms = {n: c for n, c in sorted(cleaned.items(), reverse=True) if not c.is_zero()}

    @classmethod
    def phi(cls, q: int, n: int, coeff: QSixth | Fraction | int = 1) -> SecondaryElem:
        value = coeff if isinstance(coeff, QSixth) else QSixth.of(q, coeff)
        return cls(q, {n: value})

    @classmethod
    def one(cls, q: int) -> SecondaryElem:
        return cls.phi(q, 0)

    def __add__(self, other: SecondaryElem) -> SecondaryElem:
        terms = dict(self.terms)
        for n, c in other.terms.items():
            terms[n] = terms[n] + c if n in terms else c
        return SecondaryElem(self.q, terms)

    def __neg__(self) -> SecondaryElem:
        return SecondaryElem(self.q, {n: -c for n, c in self.terms.items()})

    def __sub__(self, other: SecondaryElem) -> SecondaryElem:
        return self + (-other)

    def __mul__(self, scalar: QSixth | Fraction | int) -> SecondaryElem:
        return SecondaryElem(self.q, {n: c * scalar for n, c in self.terms.items()})

    __rmul__ = __mul__

    def tensor(self, other: SecondaryElem) -> SecondaryElem:
        """φ(n) ⊗ φ(m) = φ(n+m), extended bilinearly."""
        terms: dict[int, QSixth] = {}
        for n, c in self.terms.items():
            for m, d in other.terms.items():
                terms[n + m] = terms[n + m] + c * d if n + m in terms else c * d
        return SecondaryElem(self.q, terms)

    __matmul__ = tensor

    def coefficient(self, n: int) -> QSixth:
        return self.terms.get(n, QSixth.zero(self.q))

    def shifts(self) -> Iterator[int]:
        return iter(self.terms)

    def truncate(self, min_shift: int) -> SecondaryElem:
        """Drop every φ(n) with n < min_shift."""
        return SecondaryElem(self.q, {n: c for n, c in self.terms.items() if n >= min_shift})

    def evaluate(self, value_at: Callable[[int], QSixth]) -> QSixth:
        """Σ c_n · value_at(n)."""
        total = QSixth.zero(self.q)
        for n, c in self.terms.items():
            total = total + c * value_at(n)
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SecondaryElem):
            return NotImplemented
        return self.q == other.q and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.q, tuple(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})φ({n})" for n, c in self.terms.items())


def max_abs_coefficient(elem: SecondaryElem) -> float:
    return max((abs(float(c)) for c in elem.terms.values()), default=0.0)


def isclose(a: QSixth, b: QSixth, rel: float = 1e-12) -> bool:
    return math.isclose(float(a), float(b), rel_tol=rel, abs_tol=rel)


__all__ = ["QSixth", "SecondaryElem", "max_abs_coefficient", "isclose"]
