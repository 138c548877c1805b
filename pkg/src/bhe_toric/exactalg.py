"""Exact rational scalars and polynomials, plus quadratic root data.

Rational numbers are plain :class:`fractions.Fraction` objects (always
reduced, positive denominator).  Polynomials keep their coefficients
highest degree first, so a quadratic ``a0*x**2 + a1*x + a2`` is stored as
``(a0, a1, a2)``.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ComplexRoots, DegenerateLeadingCoefficient

Rational = Fraction
Number = Union[int, Fraction, float]

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "Poly",
    "Quadratic",
    "Interval",
    "RootPair",
    "quad_roots",
    "discriminant",
    "resultant_quadratics",
    "eval_poly",
    "is_rational_square",
]


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, ``"p/q"`` strings or floats to a Fraction.

    Floats are converted exactly (binary expansion), so prefer strings when
    the intended value is a short decimal.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        if not math.isfinite(float(value)):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(float(value))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def format_rational(q: Fraction) -> str:
    """Render ``q`` as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(as_rational(q))


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_rational_square(q: Fraction) -> bool:
    q = as_rational(q)
    return (_isqrt_exact(q.numerator) is not None
            and _isqrt_exact(q.denominator) is not None)


@dataclass(frozen=True)
class Poly:
    """Immutable univariate polynomial with exact coefficients."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[Number]):
        cs = [as_rational(c) for c in coeffs]
        while len(cs) > 1 and cs[0] == 0:
            cs.pop(0)
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "Poly":
        return cls([0])

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "Poly":
        return cls([coeff] + [0] * degree)

    @classmethod
    def from_roots(cls, roots: Sequence[Number], lead: Number = 1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([1, -as_rational(r)])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of ``x**power`` (zero beyond the degree)."""
        if power < 0 or power > self.degree:
            return Fraction(0)
        return self.coeffs[self.degree - power]

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def __call__(self, x):
        return eval_poly(self, x)

    def deriv(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            n = p.degree
            if n == 0:
                return Poly.zero()
            p = Poly([c * (n - i) for i, c in enumerate(p.coeffs[:-1])])
        return p

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = (Fraction(0),) * (n - len(self.coeffs)) + self.coeffs
        b = (Fraction(0),) * (n - len(other.coeffs)) + other.coeffs
        return Poly([u + v for u, v in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            k = as_rational(other)
            return Poly([k * c for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            if u == 0:
                continue
            for j, v in enumerate(other.coeffs):
                out[i + j] += u * v
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def compose_affine(self, scale: Number, shift: Number) -> "Poly":
        """Return ``p(scale*x + shift)``."""
        lin = Poly([scale, shift])
        out = Poly.zero()
        for c in self.coeffs:
            out = out * lin + c
        return out

    def __repr__(self) -> str:
        return "Poly([" + ", ".join(format_rational(c) for c in self.coeffs) + "])"


def eval_poly(p: Poly, x):
    """Horner evaluation; exact for rational ``x``, float/array otherwise."""
    if isinstance(x, (Fraction, numbers.Integral)) and not isinstance(x, bool):
        acc = Fraction(0)
        for c in p.coeffs:
            acc = acc * x + c
        return acc
    cs = [float(c) for c in p.coeffs]
    acc = np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
    for c in cs:
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class Quadratic:
    """``a0*x**2 + a1*x + a2`` with exact coefficients; ``a0`` may be zero."""

    a0: Fraction
    a1: Fraction
    a2: Fraction

    def __init__(self, a0: Number, a1: Number, a2: Number):
        object.__setattr__(self, "a0", as_rational(a0))
        object.__setattr__(self, "a1", as_rational(a1))
        object.__setattr__(self, "a2", as_rational(a2))

    @classmethod
    def from_roots(cls, r1: Number, r2: Number, lead: Number = -1) -> "Quadratic":
        r1, r2, lead = as_rational(r1), as_rational(r2), as_rational(lead)
        return cls(lead, -lead * (r1 + r2), lead * r1 * r2)

    @classmethod
    def from_poly(cls, p: Poly) -> "Quadratic":
        if p.degree > 2:
            raise ValueError(f"degree {p.degree} polynomial is not a quadratic")
        return cls(p.coefficient(2), p.coefficient(1), p.coefficient(0))

    @property
    def coeffs(self) -> tuple:
        return (self.a0, self.a1, self.a2)

    def as_poly(self) -> Poly:
        return Poly(self.coeffs)

    def scaled(self, t: Number) -> "Quadratic":
        t = as_rational(t)
        return Quadratic(t * self.a0, t * self.a1, t * self.a2)

    def __call__(self, x):
        return eval_poly(self.as_poly(), x)

    def deriv_at(self, x):
        return 2 * self.a0 * x + self.a1


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float(self.midpoint)


def _lower(v) -> Fraction:
    return v.lo if isinstance(v, Interval) else v


def _upper(v) -> Fraction:
    return v.hi if isinstance(v, Interval) else v


@dataclass(frozen=True)
class RootPair:
    """Two real roots ``r1 <= r2``: exact rationals or certified intervals."""

    kind: str  # "exact" or "interval"
    r1: Union[Fraction, Interval]
    r2: Union[Fraction, Interval]

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def as_floats(self) -> tuple[float, float]:
        return float(self.r1), float(self.r2)

    @property
    def lower(self) -> tuple[Fraction, Fraction]:
        return _lower(self.r1), _lower(self.r2)

    @property
    def upper(self) -> tuple[Fraction, Fraction]:
        return _upper(self.r1), _upper(self.r2)

    def distinct(self) -> bool:
        return _upper(self.r1) < _lower(self.r2)


def discriminant(q: Quadratic) -> Fraction:
    return q.a1 * q.a1 - 4 * q.a0 * q.a2


def resultant_quadratics(A: Quadratic, B: Quadratic) -> Fraction:
    """Classical resultant of two quadratics (Sylvester determinant)."""
    u = A.a0 * B.a2 - A.a2 * B.a0
    v = A.a0 * B.a1 - A.a1 * B.a0
    w = A.a1 * B.a2 - A.a2 * B.a1
    return u * u - v * w


def quad_roots(q: Quadratic, tol: float = 1e-12) -> RootPair:
    """Real roots of ``q`` sorted ascending.

    The result is exact when the discriminant is the square of a rational.
    Otherwise each root is enclosed in a rational interval of width at most
    ``tol``, obtained from an integer square root, so the enclosure is
    rigorous rather than a floating-point estimate.
    """
    if q.a0 == 0:
        raise DegenerateLeadingCoefficient("leading coefficient a0 is zero")
    disc = discriminant(q)
    if disc < 0:
        raise ComplexRoots(f"discriminant {disc} < 0")
    two_a = 2 * q.a0
    if is_rational_square(disc):
        s = Fraction(math.isqrt(disc.numerator), math.isqrt(disc.denominator))
        roots = sorted([(-q.a1 - s) / two_a, (-q.a1 + s) / two_a])
        return RootPair("exact", roots[0], roots[1])

    tol_q = as_rational(tol)
    if tol_q <= 0:
        raise ValueError("tol must be positive")
    # sqrt(disc) = sqrt(p*q)/q, bracketed with integer square roots
    num = disc.numerator * disc.denominator
    scale = disc.denominator * abs(two_a)
    k = 0
    while Fraction(1, 2 ** k) / scale > tol_q:
        k += 1
    s_lo = Fraction(math.isqrt(num * 4 ** k), 2 ** k * disc.denominator)
    s_hi = s_lo + Fraction(1, 2 ** k * disc.denominator)

    def enclose(sign: int) -> Interval:
        ends = [(-q.a1 + sign * s) / two_a for s in (s_lo, s_hi)]
        return Interval(min(ends), max(ends))

    roots = sorted([enclose(-1), enclose(+1)], key=lambda iv: iv.lo)
    return RootPair("interval", roots[0], roots[1])
