"""Topological constants and the non-Archimedean slope from intersection numbers."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

__all__ = [
    "IntersectionData",
    "TestConfigData",
    "c_alpha_beta",
    "topology_gate",
    "TopologyReport",
    "e_na_slope",
    "intersection_from_pairings",
    "product_test_configuration",
]


@dataclass(frozen=True)
class IntersectionData:
    """Raw pairings against ``alpha``: ``c1^2.alpha^(n-2)``, ``beta^2.alpha^(n-2)``,
    ``alpha^n`` and ``beta.alpha^(n-1)``."""

    n: int
    c1_sq_alpha: float
    beta_sq_alpha: float
    alpha_top: float
    beta_alpha: float = 0.0

    def __post_init__(self):
        if not self.alpha_top > 0:
            raise ValueError("alpha_top must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TestConfigData:
    """Raw (un-normalized) intersection numbers on the total space of a test configuration."""

    n: int
    K_rel_sq_A: float
    B_sq_A: float
    A_top: float
    c_ab: float

    def to_dict(self) -> dict:
        return asdict(self)


def c_alpha_beta(d: IntersectionData) -> float:
    """``2n(n-1)(c1^2 + beta^2).alpha^(n-2) / alpha^n``."""
    n = d.n
    return 2 * n * (n - 1) * (d.c1_sq_alpha + d.beta_sq_alpha) / d.alpha_top


@dataclass(frozen=True)
class TopologyReport:
    primitivity: bool
    closure: bool
    beta_alpha_ratio: float
    closure_ratio: float

    @property
    def passed(self) -> bool:
        return self.primitivity and self.closure

    def to_dict(self) -> dict:
        return {"primitivity": self.primitivity, "closure": self.closure,
                "beta_alpha_ratio": self.beta_alpha_ratio,
                "closure_ratio": self.closure_ratio, "pass": self.passed}


def topology_gate(d: IntersectionData, tol: float = 1e-8) -> TopologyReport:
    """Check ``beta.alpha = 0`` and ``beta^2 + c1^2 = 0`` on a surface.

    Both are tested relative to ``alpha^2`` (and, for the second, to the
    larger of ``|c1^2|`` and ``|beta^2|``).
    """
    if d.n != 2:
        raise ValueError("topology_gate is defined for surfaces (n = 2)")
    ba = abs(d.beta_alpha) / d.alpha_top
    scale = max(abs(d.c1_sq_alpha), abs(d.beta_sq_alpha), d.alpha_top)
    cl = abs(d.c1_sq_alpha + d.beta_sq_alpha) / scale
    return TopologyReport(ba <= tol, cl <= tol, ba, cl)


def e_na_slope(t: TestConfigData) -> float:
    """``-(2 pi)^(n+1) [ (K^2 + B^2).A^[n-1] - (c/2) A^[n+1] ]`` with ``X^[k] = X^k/k!``."""
    n = t.n
    bracket = ((t.K_rel_sq_A + t.B_sq_A) / math.factorial(n - 1)
               - t.c_ab / 2 * t.A_top / math.factorial(n + 1))
    return -((2 * math.pi) ** (n + 1)) * bracket


def intersection_from_pairings(pairings: dict) -> IntersectionData:
    """Surface intersection numbers from :func:`orthotoric.polytope_pairings`.

    Forms represent ``2 pi`` times their classes, so every pairing is
    divided by ``(2 pi)**2``; the ``(2 pi)**2`` torus factor already inside
    the pairings then cancels.
    """
    s = (2 * math.pi) ** 2
    return IntersectionData(2, pairings["rho_rho"] / s, pairings["theta_theta"] / s,
                            pairings["omega_omega"] / s, pairings["theta_omega"] / s)


def product_test_configuration(P, quad_order: int = 96) -> TestConfigData:
    """Test configuration of a Calabi profile induced by the fibre rotation.

    Intersection numbers are integrals in ``z`` of the densities
    ``rho^2 = (kV'/L - s)(V'/L)'/2``, ``theta^2 = -lambda^2/(2L^3)`` and
    ``omega^2 = 2L`` (units where the base and fibre angles contribute a
    total factor of one), with the momentum ``z`` as Hamiltonian.  The slope
    of this configuration is ``-(2 pi)^3 I2/(2k)`` when ``I1 = 0``.
    """
    nodes, weights = np.polynomial.legendre.leggauss(quad_order)
    z = nodes
    L = P.L(z)
    V1, V2 = P.V.deriv()(z), P.V.deriv(2)(z)
    k, s, lam2 = float(P.k), float(P.s_sigma), float(P.lambda_sq)
    dV1L = (V2 * L - k * V1) / L**2           # (V'/L)'
    rho2 = 0.5 * (k * V1 / L - s) * dV1L
    theta2 = -lam2 / (2 * L**3)
    psi = -0.5 * V1 / L                       # Ricci potential along the fibre
    rho_omega = (s - V2) / 2
    integ = lambda f: float(np.dot(weights, f))
    K = integ(rho2 * z + 2 * psi * rho_omega)
    B = integ(theta2 * z)
    A_top = 6 * integ(z * L)
    c_ab = 4 * integ(rho2 + theta2) / integ(2 * L)
    return TestConfigData(2, K, B, A_top, c_ab)
