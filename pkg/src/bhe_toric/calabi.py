"""Calabi-type Kähler metrics on ruled surfaces over a curve.

The metric is ``(kz+c) g_Sigma + dz**2/Theta + Theta eta**2`` on
``z in (-1, 1)`` with ``V = Theta * (kz+c)``.  Everything reduces to an
ODE in ``z`` whose weighted integrals are the Futaki-type obstructions.
Write ``L = kz + c``, ``P = 1/v + 1/w`` and ``M = 1/v - 1/w``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NonpositiveProfile, NotAdmissible, OutOfDomain, QuadratureNotConverged
from .exactalg import Number, Poly, as_rational

__all__ = [
    "CalabiProfile",
    "calabi_residual_terms",
    "calabi_residual",
    "residual_numerator",
    "futaki_integral_1",
    "futaki_integral_2",
    "futaki_integral_z",
    "futaki_1_closed_form",
    "futaki_2_closed_form",
    "futaki_2_rhs",
    "futaki_z_closed_form",
    "lambda_sq_from_futaki_1",
    "FutakiObstruction",
    "futaki_obstruction_k_nonzero",
    "K0Obstruction",
    "futaki_obstruction_k0",
    "samelson_product",
    "make_profile_from_boundary",
    "theta_profile",
]


def _pm(v, w) -> tuple[Fraction, Fraction]:
    v, w = as_rational(v), as_rational(w)
    return 1 / v + 1 / w, 1 / v - 1 / w


def _deflate(p: Poly, root: Fraction) -> Poly:
    """Quotient of ``p`` by ``(z - root)``; the remainder must vanish."""
    acc = Fraction(0)
    out = []
    for c in p.coeffs:
        acc = acc * root + c
        out.append(acc)
    if out[-1] != 0:
        raise ValueError(f"{root} is not a root")
    return Poly(out[:-1] or [0])


def _positive_on_open_interval(p: Poly) -> bool:
    """True if ``p > 0`` on ``[-1, 1]`` (checked at 0 and via real roots)."""
    if p(Fraction(0)) <= 0:
        return False
    if p.degree == 0:
        return True
    roots = np.roots(p.float_coeffs())
    real = roots[np.abs(roots.imag) <= 1e-9 * max(1.0, float(np.max(np.abs(roots))))].real
    return not np.any((real >= -1 - 1e-12) & (real <= 1 + 1e-12))


@dataclass(frozen=True)
class CalabiProfile:
    """Data ``(k, c, v, w, s_sigma, V, lambda_sq)`` of the ruled-surface ansatz.

    Construction validates ``c > |k|``, the end-point conditions
    ``Theta(+-1) = 0``, ``Theta'(-1) = 2/w``, ``Theta'(1) = -2/v`` (exactly),
    and ``Theta > 0`` inside.
    """

    k: Fraction
    c: Fraction
    v: int
    w: int
    s_sigma: Fraction
    V: Poly
    lambda_sq: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("k", "c", "s_sigma", "lambda_sq"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not isinstance(self.V, Poly):
            object.__setattr__(self, "V", Poly(self.V))
        for name in ("v", "w"):
            val = getattr(self, name)
            if isinstance(val, bool) or int(val) != val or val < 1:
                raise NotAdmissible(f"{name} must be a positive integer")
            object.__setattr__(self, name, int(val))
        if self.c <= abs(self.k):
            raise NotAdmissible("need c > |k| so that kz + c > 0 on [-1, 1]")
        if self.lambda_sq < 0:
            raise NotAdmissible("lambda_sq must be non-negative")
        self._check_boundary()

    @property
    def L(self) -> Poly:
        return Poly([self.k, self.c])

    def _check_boundary(self) -> None:
        one = Fraction(1)
        V, dV, L = self.V, self.V.deriv(), self.L
        if V(one) != 0 or V(-one) != 0:
            raise NonpositiveProfile("Theta must vanish at z = +-1")
        # V(+-1) = 0, so Theta'(+-1) = V'(+-1)/L(+-1)
        if dV(-one) / L(-one) != Fraction(2, self.w) or dV(one) / L(one) != Fraction(-2, self.v):
            raise NonpositiveProfile("Theta'(-1) = 2/w and Theta'(1) = -2/v violated")
        inner = _deflate(_deflate(V, one), -one)  # V = (z-1)(z+1) * inner
        if not _positive_on_open_interval(-inner):
            raise NonpositiveProfile("Theta is not positive on (-1, 1)")

    def with_lambda_sq(self, lambda_sq: Number) -> "CalabiProfile":
        return CalabiProfile(self.k, self.c, self.v, self.w, self.s_sigma, self.V, lambda_sq)

    def to_dict(self) -> dict:
        return {
            "k": str(self.k), "c": str(self.c), "v": self.v, "w": self.w,
            "s_sigma": str(self.s_sigma), "V": [str(x) for x in self.V.coeffs],
            "lambda_sq": str(self.lambda_sq),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CalabiProfile":
        return cls(d["k"], d["c"], d["v"], d["w"], d["s_sigma"], Poly(d["V"]),
                   d.get("lambda_sq", 0))


def theta_profile(P: CalabiProfile, z):
    z = np.asarray(z, dtype=float)
    return P.V(z) / P.L(z)


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) >= 1):
        raise OutOfDomain("z must lie in (-1, 1)")
    return z


def _numerator_pieces(P: CalabiProfile) -> list[Poly]:
    """Polynomial numerators over ``L**4`` of the residual's pieces.

    With ``R = (s - V'')/L`` the pieces are ``-(R'V)'/L``, the mixed term
    ``(kV'/L - s)(V'/L)'/L`` and ``-lambda**2/L**4``.
    """
    V, L, k, s = P.V, P.L, P.k, P.s_sigma
    d1, d2, d3 = V.deriv(), V.deriv(2), V.deriv(3)
    N1 = (-(d3 * L) - (s - d2) * k) * V  # R'V = N1 / L^2
    t1 = -(N1.deriv() * L - N1 * (2 * k))
    t2 = (d1 * k - L * s) * (d2 * L - d1 * k)
    t3 = Poly([-P.lambda_sq])
    return [t1, t2, t3]


def residual_numerator(P: CalabiProfile) -> Poly:
    """Exact polynomial ``N`` with ``4 S(omega) = N / (kz+c)**4``."""
    a, b, c = _numerator_pieces(P)
    return a + b + c


def calabi_residual_terms(P: CalabiProfile, z) -> list:
    z = _check_z(z)
    L4 = P.L(z) ** 4
    return [p(z) / L4 for p in _numerator_pieces(P)]


def calabi_residual(P: CalabiProfile, z):
    """``4 S(omega)`` at ``z in (-1, 1)``."""
    return sum(calabi_residual_terms(P, z))


# --------------------------------------------------------------------------
# weighted integrals

def _gauss(P: CalabiProfile, weight: Poly, order: int) -> tuple[float, float]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    f = calabi_residual(P, nodes) * weight(nodes)
    return float(np.dot(weights, f)), float(np.dot(weights, np.abs(f)))


def _converged(P: CalabiProfile, weight: Poly, quad_order: int, rtol: float) -> float:
    lo, _ = _gauss(P, weight, quad_order)
    hi, l1 = _gauss(P, weight, 2 * quad_order)
    if abs(lo - hi) > rtol * max(1.0, l1):
        raise QuadratureNotConverged(f"{lo!r} vs {hi!r} at orders {quad_order}/{2 * quad_order}")
    return hi


def futaki_integral_1(P: CalabiProfile, quad_order: int = 96, rtol: float = 1e-9) -> float:
    """``I1 = integral of 4S(omega) (kz+c) dz`` over ``[-1, 1]``."""
    return _converged(P, P.L, quad_order, rtol)


def futaki_integral_2(P: CalabiProfile, quad_order: int = 96, rtol: float = 1e-9) -> float:
    """``I2 = integral of 4S(omega) (kz+c)**2 dz``."""
    return _converged(P, P.L * P.L, quad_order, rtol)


def futaki_integral_z(P: CalabiProfile, quad_order: int = 96, rtol: float = 1e-9) -> float:
    """``integral of 4S(omega) z dz``; the natural pairing when ``k = 0``."""
    return _converged(P, Poly([1, 0]), quad_order, rtol)


def futaki_1_closed_form(k, c, v, w, s_sigma, lambda_sq) -> Fraction:
    """Exact ``I1``: ``2P(kM + s) - 2c lambda**2/(c**2 - k**2)**2``."""
    k, c, s, lam2 = (as_rational(x) for x in (k, c, s_sigma, lambda_sq))
    Pp, M = _pm(v, w)
    return 2 * Pp * (k * M + s) - 2 * c * lam2 / (c * c - k * k) ** 2


def lambda_sq_from_futaki_1(k, c, v, w, s_sigma) -> Fraction:
    """The ``lambda**2`` making ``I1`` vanish."""
    k, c, s = (as_rational(x) for x in (k, c, s_sigma))
    Pp, M = _pm(v, w)
    return (c * c - k * k) ** 2 / c * Pp * (k * M + s)


def futaki_2_rhs(k, c, v, w, s_sigma) -> Fraction:
    """``lambda**2/(c**2-k**2)`` required for ``I2 = 0``."""
    k, c, s = (as_rational(x) for x in (k, c, s_sigma))
    Pp, M = _pm(v, w)
    q_plus = (Pp * Pp + M * M) / 2    # 1/v^2 + 1/w^2
    q_minus = Pp * M                  # 1/v^2 - 1/w^2
    return 2 * k * k * q_plus + 2 * k * c * q_minus + s * (c * Pp + k * M)


def futaki_2_closed_form(k, c, v, w, s_sigma, lambda_sq) -> Fraction:
    """Exact ``I2 = 2*rhs - 2 lambda**2/(c**2 - k**2)``."""
    k, c, lam2 = as_rational(k), as_rational(c), as_rational(lambda_sq)
    return 2 * futaki_2_rhs(k, c, v, w, s_sigma) - 2 * lam2 / (c * c - k * k)


def futaki_z_closed_form(c, v, w, s_sigma) -> Fraction:
    """Exact z-weighted integral for ``k = 0``: ``(2/c) M (cP + s)``."""
    c, s = as_rational(c), as_rational(s_sigma)
    Pp, M = _pm(v, w)
    return 2 / c * M * (c * Pp + s)


@dataclass(frozen=True)
class FutakiObstruction:
    s_sigma_forced: Fraction
    lambda_sq_forced: Fraction
    unique: bool

    @property
    def obstructed(self) -> bool:
        return self.lambda_sq_forced < 0

    def to_dict(self) -> dict:
        return {"s_sigma_forced": str(self.s_sigma_forced),
                "lambda_sq_forced": str(self.lambda_sq_forced),
                "unique": self.unique, "obstruction": self.obstructed}


def futaki_obstruction_k_nonzero(k, c, v, w) -> FutakiObstruction:
    """Jointly solve ``I1 = 0`` and ``I2 = 0`` for ``(s_sigma, lambda**2)``.

    The solution is ``s = -(kM + cP)``, ``lambda**2 = -(c**2-k**2)**2 P**2``.
    When ``kP + cM = 0`` the two conditions coincide and this pair is one
    point on a line of solutions; ``unique`` is then False.
    """
    k, c = as_rational(k), as_rational(c)
    if k == 0:
        raise ValueError("k must be non-zero; use futaki_obstruction_k0")
    if c <= abs(k):
        raise NotAdmissible("need c > |k|")
    Pp, M = _pm(v, w)
    s = -(k * M + c * Pp)
    lam2 = -((c * c - k * k) ** 2) * Pp * Pp
    return FutakiObstruction(s, lam2, k * Pp + c * M != 0)


@dataclass(frozen=True)
class K0Obstruction:
    lambda_sq: Fraction
    consistent: bool
    s_sigma_forced: Fraction | None = None
    lambda_sq_forced: Fraction | None = None

    def to_dict(self) -> dict:
        f = lambda q: None if q is None else str(q)
        return {"lambda_sq": str(self.lambda_sq), "consistent": self.consistent,
                "s_sigma_forced": f(self.s_sigma_forced),
                "lambda_sq_forced": f(self.lambda_sq_forced)}


def futaki_obstruction_k0(c, v, w, s_sigma) -> K0Obstruction:
    """Product case ``k = 0``.

    ``lambda**2 = c**3 s P`` makes ``I1`` vanish.  For ``v != w`` the
    z-weighted integral also has to vanish, which forces ``s = -cP`` and
    ``lambda**2 = -c**4 P**2 < 0``.
    """
    c, s = as_rational(c), as_rational(s_sigma)
    if c <= 0:
        raise NotAdmissible("need c > 0")
    Pp, M = _pm(v, w)
    lam2 = c ** 3 * s * Pp
    if M == 0:
        return K0Obstruction(lam2, lam2 >= 0)
    s_f = -c * Pp
    lam_f = c ** 3 * s_f * Pp
    consistent = s == s_f and lam_f >= 0  # lam_f < 0 always, kept explicit
    return K0Obstruction(lam2, consistent, s_f, lam_f)


def samelson_product(c: Number, s_sigma: Number = 0) -> CalabiProfile:
    """``k = 0``, ``v = w = 1``, ``V = c - c z**2`` with ``lambda**2 = 2 c**3 s``."""
    c, s = as_rational(c), as_rational(s_sigma)
    if c <= 0:
        raise NotAdmissible("need c > 0")
    if s < 0:
        raise NotAdmissible("need s_sigma >= 0")
    return CalabiProfile(0, c, 1, 1, s, Poly([-c, 0, c]), 2 * c ** 3 * s)


def make_profile_from_boundary(k, c, v, w, interior_knobs: Sequence[Number] = (),
                               s_sigma: Number = 0, lambda_sq: Number = 0) -> CalabiProfile:
    """Profile with ``Theta = (1-z**2)(alpha + beta z) + (1-z**2)**2 sum_j kappa_j z**j``.

    ``alpha = P/2`` and ``beta = M/2`` realise the end-point slopes; the
    knobs ``kappa_j`` only change the interior.
    """
    k, c = as_rational(k), as_rational(c)
    Pp, M = _pm(v, w)
    one_minus = Poly([-1, 0, 1])
    theta = one_minus * Poly([M / 2, Pp / 2])
    if interior_knobs:
        knob = Poly(list(reversed([as_rational(x) for x in interior_knobs])))
        theta = theta + one_minus * one_minus * knob
    return CalabiProfile(k, c, v, w, s_sigma, theta * Poly([k, c]), lambda_sq)
