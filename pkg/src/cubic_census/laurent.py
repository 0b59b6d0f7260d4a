"""Truncated Laurent series in π = 1/T, the completion K_∞ = F_q((1/T)).

Module Information:
    - Filename: laurent.py
    - Module: laurent
    - Location: src/cubic_census/

An element stores its valuation, the coefficients from that index up, and
the absolute precision ``prec``: every coefficient with index < prec is
known, everything from prec on is unknown. Arithmetic carries precision
forward and asking for an unknown coefficient raises PrecisionError.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
import math

from .errors import DomainError, HenselError, PrecisionError
from .ffpoly import FqField, PolyFq

#####################################
# LaurentElem
#####################################


@dataclass(frozen=True)
class LaurentElem:
    """Σ_{i ≥ val} coeffs[i - val] π^i, known below ``prec``.

    The zero element at a given precision has ``val == prec`` and no
    coefficients.
    """

    field: FqField
    val: int
    coeffs: tuple[int, ...]
    prec: int

    def __post_init__(self) -> None:
        coeffs = list(self.coeffs[: max(self.prec - self.val, 0)])
        val = self.val
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = self.prec
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "val", val)

    # ---------- constructors ----------

    @classmethod
    def zero(cls, field: FqField, prec: int) -> LaurentElem:
        return cls(field, prec, (), prec)

    @classmethod
    def constant(cls, field: FqField, c: int, prec: int) -> LaurentElem:
        return cls(field, 0, (c,), prec)

    @classmethod
    def pi_power(cls, field: FqField, k: int, prec: int) -> LaurentElem:
        """π^k known to absolute precision prec."""
        return cls(field, k, (1,), prec)

    @classmethod
    def from_pi_coeffs(cls, field: FqField, coeffs: Sequence[int], prec: int, start: int = 0) -> LaurentElem:
        """Σ coeffs[i] π^(start+i)."""
        return cls(field, start, tuple(coeffs), prec)

    @classmethod
    def from_poly(cls, f: PolyFq, prec: int) -> LaurentElem:
        """Expand f(T) = Σ f_i T^i = Σ f_i π^(-i) exactly below prec."""
        if f.is_zero:
            return cls.zero(f.field, prec)
        return cls(f.field, -f.deg, tuple(reversed(f.coeffs)), prec)

    # ---------- inspection ----------

    @property
    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    @property
    def relative_precision(self) -> int:
        return self.prec - self.val

    def coefficient(self, i: int) -> int:
        if i >= self.prec:
            raise PrecisionError(f"coefficient of π^{i} requested, known below π^{self.prec}")
        j = i - self.val
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def valuation(self) -> int:
        """Exact valuation; raises when the element is zero at its precision."""
        if self.is_zero:
            raise PrecisionError(f"valuation undetermined: element vanishes below π^{self.prec}")
        return self.val

    def valuation_at_least(self, k: int) -> bool:
        """True when the element lies in π^k O_∞ (decidable only if k ≤ prec)."""
        if not self.is_zero:
            return self.val >= k
        if k > self.prec:
            raise PrecisionError(f"cannot decide membership in π^{k}O with precision {self.prec}")
        return True

    def residue(self) -> int:
        """Image in the residue field F_q of an integral element."""
        if not self.is_zero and self.val < 0:
            raise DomainError("residue of a non-integral Laurent element")
        return self.coefficient(0)

    def with_prec(self, prec: int) -> LaurentElem:
        return LaurentElem(self.field, self.val, self.coeffs, min(prec, self.prec))

    # ---------- arithmetic ----------

    def _coerce(self, other: LaurentElem | int) -> LaurentElem:
        if isinstance(other, LaurentElem):
            return other
        return LaurentElem.constant(self.field, self.field.from_int(other), self.prec - min(self.val, 0))

    def __add__(self, other: LaurentElem | int) -> LaurentElem:
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        add = self.field._add
        out = [add[self.coefficient(i)][other.coefficient(i)] for i in range(lo, prec)]
        return LaurentElem(self.field, lo, tuple(out), prec)

    __radd__ = __add__

    def __neg__(self) -> LaurentElem:
        neg = self.field._neg
        return LaurentElem(self.field, self.val, tuple(neg[c] for c in self.coeffs), self.prec)

    def __sub__(self, other: LaurentElem | int) -> LaurentElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other: LaurentElem | int) -> LaurentElem:
        return self._coerce(other) - self

    def __mul__(self, other: LaurentElem | int) -> LaurentElem:
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        val = self.val + other.val
        prec = val + min(self.relative_precision, other.relative_precision)
        n = prec - val
        add, mul = self.field._add, self.field._mul
        out = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            row = mul[a]
            for j, b in enumerate(other.coeffs[: n - i]):
                out[i + j] = add[out[i + j]][row[b]]
        return LaurentElem(self.field, val, tuple(out), prec)

    __rmul__ = __mul__

    def scale(self, c: int) -> LaurentElem:
        """Multiply by an element of F_q."""
        row = self.field._mul[c]
        if c == 0:
            return LaurentElem.zero(self.field, self.prec)
        return LaurentElem(self.field, self.val, tuple(row[x] for x in self.coeffs), self.prec)

    def shift(self, k: int) -> LaurentElem:
        """Multiply by π^k exactly."""
        return LaurentElem(self.field, self.val + k, self.coeffs, self.prec + k)

    def invert(self) -> LaurentElem:
        """x⁻¹ with the same relative precision."""
        if self.is_zero:
            raise PrecisionError("cannot invert an element that vanishes at its precision")
        f = self.field
        n = self.relative_precision
        u = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b0 = f.inv(u[0])
        out = [b0]
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                acc = f.add(acc, f.mul(u[i], out[k - i]))
            out.append(f.neg(f.mul(b0, acc)))
        return LaurentElem(f, -self.val, tuple(out), -self.val + n)

    def __truediv__(self, other: LaurentElem) -> LaurentElem:
        return self * other.invert()

    def __pow__(self, e: int) -> LaurentElem:
        if e < 0:
            return self.invert() ** (-e)
        result = LaurentElem.constant(self.field, 1, self.prec - min(self.val, 0) * e + max(self.val, 0) * e)
        for _ in range(e):
            result = result * self
        return result

    def __repr__(self) -> str:
        if self.is_zero:
            return f"O(π^{self.prec})"
        terms = [f"{c}π^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) + f" + O(π^{self.prec})"


#####################################
# Polynomials with Laurent coefficients
#####################################


def evaluate(coeffs: Sequence[LaurentElem], x: LaurentElem) -> LaurentElem:
    """Horner evaluation of Σ coeffs[i] x^i."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def derivative(coeffs: Sequence[LaurentElem]) -> list[LaurentElem]:
    return [c * i for i, c in enumerate(coeffs)][1:]


def hensel_lift_root(coeffs: Sequence[LaurentElem], root: int, prec: int) -> LaurentElem:
    """Lift a simple root mod π of Σ coeffs[i] x^i to a root in O_∞ modulo π^prec.

    Newton iteration doubles the number of correct digits per step.
    """
    field = coeffs[0].field
    for c in coeffs:
        if not c.valuation_at_least(0):
            raise DomainError("Hensel lifting needs integral coefficients")
    residues = PolyFq(field, tuple(c.residue() for c in coeffs))
    if residues(root) != 0:
        raise DomainError(f"{root} is not a root modulo π")
    if residues.derivative()(root) == 0:
        raise HenselError(f"{root} is a multiple root modulo π; Newton lifting does not apply")

    dcoeffs = derivative(coeffs)
    x = LaurentElem.constant(field, root, prec)
    for _ in range(max(1, math.ceil(math.log2(max(prec, 2)))) + 1):
        x = x - evaluate(coeffs, x) / evaluate(dcoeffs, x)
    x = x.with_prec(prec)
    residual = evaluate(coeffs, x)
    if residual.prec < prec:
        raise PrecisionError(f"coefficients only support {residual.prec} digits, {prec} requested")
    if not residual.valuation_at_least(prec):
        raise PrecisionError("Newton iteration did not reach the requested precision")
    return x


def newton_slopes(valuations: Sequence[int | None]) -> list[tuple[Fraction, int]]:
    """Slopes and horizontal lengths of the lower Newton polygon.

    ``valuations[i]`` is the valuation of the coefficient of x^i, None for a
    zero coefficient. A segment of slope s and length n means n roots of
    valuation -s.
    """
    points = [(i, v) for i, v in enumerate(valuations) if v is not None]
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return [(Fraction(y2 - y1, x2 - x1), x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:], strict=False)]


__all__ = ["LaurentElem", "evaluate", "derivative", "hensel_lift_root", "newton_slopes"]
