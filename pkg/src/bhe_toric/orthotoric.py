"""Orthotoric Kähler surfaces and the sixth-order reduction equation.

An orthotoric structure is fixed by two profile polynomials ``A(x)`` and
``B(y)`` on intervals ``y1 < y2 < x1 < x2`` together with the amplitude
``lambda**2`` of the primitive closed form

    theta = lambda/(x-y)**2 * (dx ^ (dt1 + y dt2) - dy ^ (dt1 + x dt2)).

All curvature quantities below are evaluated pointwise on the open
rectangle ``(x1, x2) x (y1, y2)``; they accept scalars or numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NonpositiveScalarCurvature, NotAdmissible, RootOrdering, SingularPoint
from .exactalg import (
    Interval,
    Number,
    Poly,
    Quadratic,
    RootPair,
    as_rational,
    quad_roots,
)

__all__ = [
    "OrthotoricStructure",
    "scalar_curvature",
    "theta_form",
    "ricci_form",
    "residual_terms",
    "full_residual",
    "quadratic_residual_constant",
    "solve_lambda",
    "admissibility_f",
    "coefficient_directions",
    "residual_jacobian",
    "LiftData",
    "bhe_lift_data",
    "momentum_map",
    "GridSample",
    "chebyshev_interior",
    "interior_grid",
    "sample_grid",
    "FIELDS",
    "VerificationReport",
    "verify_solution",
    "LabelledQuadrilateral",
    "FacetCheck",
    "boundary_check",
    "cgms_family",
    "enumerate_cgms",
    "legendre_pair",
    "theta_free_ratios",
    "ThetaFreeSolution",
    "theta_free_solutions",
    "QuadrilateralSolution",
    "enumerate_quadrilateral_solutions",
    "PAIRING_NAMES",
    "polytope_pairings",
    "admissibility_f_quadratic",
]


def _certainly_less(a, b) -> bool:
    hi = a.hi if isinstance(a, Interval) else a
    lo = b.lo if isinstance(b, Interval) else b
    return hi < lo


@dataclass(frozen=True)
class OrthotoricStructure:
    """Candidate solution ``(A, B, lambda**2)`` on its root rectangle.

    ``x_roots`` and ``y_roots`` bound the rectangle; for quadratic profiles
    they are the roots of ``A`` and ``B``.  Perturbed (non-quadratic)
    profiles keep the rectangle of the structure they were derived from.
    """

    A: Poly
    B: Poly
    lambda_sq: Fraction
    x_roots: RootPair
    y_roots: RootPair

    @classmethod
    def from_quadratics(cls, A: Quadratic, B: Quadratic, lambda_sq: Number = 0,
                        tol: float = 1e-15, validate: bool = True) -> "OrthotoricStructure":
        S = cls(A.as_poly(), B.as_poly(), as_rational(lambda_sq),
                quad_roots(A, tol), quad_roots(B, tol))
        if validate:
            S.validate()
        return S

    def with_profiles(self, A: Poly | None = None, B: Poly | None = None,
                      lambda_sq: Number | None = None) -> "OrthotoricStructure":
        changes = {}
        if A is not None:
            changes["A"] = A
        if B is not None:
            changes["B"] = B
        if lambda_sq is not None:
            changes["lambda_sq"] = as_rational(lambda_sq)
        return replace(self, **changes)

    @property
    def is_quadratic(self) -> bool:
        return self.A.degree <= 2 and self.B.degree <= 2

    def quadratics(self) -> tuple[Quadratic, Quadratic]:
        return Quadratic.from_poly(self.A), Quadratic.from_poly(self.B)

    @property
    def x_interval(self) -> tuple[float, float]:
        return self.x_roots.as_floats()

    @property
    def y_interval(self) -> tuple[float, float]:
        return self.y_roots.as_floats()

    @property
    def lam(self) -> float:
        return float(np.sqrt(float(self.lambda_sq)))

    def validate(self) -> None:
        """Check ordering, interior positivity and positive scalar curvature."""
        if self.lambda_sq < 0:
            raise NotAdmissible(f"lambda_sq = {self.lambda_sq} < 0")
        y1, y2 = self.y_roots.r1, self.y_roots.r2
        x1, x2 = self.x_roots.r1, self.x_roots.r2
        if not (_certainly_less(y1, y2) and _certainly_less(y2, x1)
                and _certainly_less(x1, x2)):
            raise RootOrdering("roots must satisfy y1 < y2 < x1 < x2")
        xm = sum(self.x_interval) / 2
        ym = sum(self.y_interval) / 2
        if not (self.A(xm) > 0 and self.B(ym) > 0):
            raise NonpositiveScalarCurvature("profiles must be positive inside their intervals")
        if self.is_quadratic:
            A, B = self.quadratics()
            if A.a0 + B.a0 >= 0:
                raise NonpositiveScalarCurvature("a0 + b0 must be negative")


def _is_exact(v) -> bool:
    return isinstance(v, (Fraction, int)) and not isinstance(v, bool)


def _check_domain(x, y):
    """Floats/arrays become float arrays; a pair of rationals stays exact."""
    if _is_exact(x) and _is_exact(y):
        x, y = Fraction(x), Fraction(y)
    else:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
    if np.any(x - y <= 0):
        raise SingularPoint("orthotoric coordinates require x > y")
    return x, y


def _derivs(p: Poly, t, order: int = 3):
    out = [p(t)]
    q = p
    for _ in range(order):
        q = q.deriv()
        out.append(q(t))
    return out


def scalar_curvature(S: OrthotoricStructure, x, y):
    """Riemannian scalar curvature ``-(A''(x) + B''(y)) / (x - y)``."""
    x, y = _check_domain(x, y)
    return -(S.A.deriv(2)(x) + S.B.deriv(2)(y)) / (x - y)


def theta_form(S: OrthotoricStructure, x, y):
    """Coefficients of ``theta`` on ``dx^(dt1+y dt2)`` and ``dy^(dt1+x dt2)``."""
    x, y = _check_domain(x, y)
    c = S.lam / (x - y) ** 2
    return c, -c


def ricci_form(S: OrthotoricStructure, x, y):
    """Decompose the Ricci form as ``p*omega + q*theta_1``.

    ``theta_1`` is the primitive form above with unit amplitude.  Returns
    ``(p, q)``; in particular ``R = 4p``.
    """
    x, y = _check_domain(x, y)
    d = x - y
    A, A1, A2, _ = _derivs(S.A, x)
    B, B1, B2, _ = _derivs(S.B, y)
    p = -(A2 + B2) / (4 * d)
    # d/dx (A'/d^2) - d/dy (B'/d^2)
    bracket = (A2 / d**2 - 2 * A1 / d**3) - (B2 / d**2 + 2 * B1 / d**3)
    q = -(d**3) / 4 * bracket
    return p, q


def _bilinear(P: tuple, Q: tuple, d):
    """Symmetric pieces of ``(x-y)**4 * S`` as a bilinear form in profiles.

    ``P`` and ``Q`` hold derivative tuples ``(A, A', A'', A''', A'''')`` at
    ``x`` followed by the same for ``B`` at ``y``.  Returns the list of the
    individual terms so callers can also build a magnitude scale.
    """
    (A, A1, A2, A3, A4), (B, B1, B2, B3, B4) = P
    (a, a1, a2, a3, a4), (b, b1, b2, b3, b4) = Q
    # (A A''')' = A' A''' + A A''''
    # halves written as "/ 2" so rational inputs stay exact
    t1 = d**2 / 2 * ((A1 * a3 + a1 * A3 + A * a4 + a * A4)
                     + (B1 * b3 + b1 * B3 + B * b4 + b * B4)
                     + (A2 * b2 + a2 * B2)) / 2
    t2 = -d * ((A * a3 + a * A3) - (B * b3 + b * B3)
               + (A1 * b2 + a1 * B2) - (B1 * a2 + b1 * A2)) / 2
    t3 = ((A + B) * (a2 + b2) + (a + b) * (A2 + B2)) / 2
    t4 = -(A1 + B1) * (a1 + b1) / 2
    return [t1, t2, t3, t4]


def _profile_derivs(A: Poly, B: Poly, x, y):
    return (tuple(_derivs(A, x, 4)), tuple(_derivs(B, y, 4)))


def residual_terms(S: OrthotoricStructure, x, y) -> list:
    """The four groups of ``(x-y)**4 * S(omega)`` plus the ``-2 lambda**2`` term."""
    x, y = _check_domain(x, y)
    P = _profile_derivs(S.A, S.B, x, y)
    terms = _bilinear(P, P, x - y)
    if isinstance(x, Fraction):
        terms.append(-2 * S.lambda_sq)
    else:
        terms.append(-2.0 * float(S.lambda_sq) * np.ones_like(x))
    return terms


def full_residual(S: OrthotoricStructure, x, y):
    """``(x-y)**4 * S(omega)`` for arbitrary polynomial profiles.

    Rational ``x, y`` give an exact Fraction; anything else is evaluated in
    floating point.
    """
    return sum(residual_terms(S, x, y))


def quadratic_residual_constant(A: Quadratic, B: Quadratic, lambda_sq: Number) -> Fraction:
    """Exact value of ``(x-y)**4 S(omega)`` for quadratic profiles."""
    lambda_sq = as_rational(lambda_sq)
    return (2 * (A.a0 + B.a0) * (A.a2 + B.a2)
            - Fraction(1, 2) * (A.a1 + B.a1) ** 2 - 2 * lambda_sq)


def solve_lambda(A: Quadratic, B: Quadratic) -> Fraction:
    """``lambda**2`` making the quadratic residual vanish.

    Raises :class:`NotAdmissible` when no real ``lambda`` exists, i.e. when
    ``4(a0+b0)(a2+b2) < (a1+b1)**2``.
    """
    lam2 = (A.a0 + B.a0) * (A.a2 + B.a2) - Fraction(1, 4) * (A.a1 + B.a1) ** 2
    if lam2 < 0:
        raise NotAdmissible(f"profiles need lambda^2 = {lam2} < 0")
    return lam2


def admissibility_f(A: Quadratic, B: Quadratic, t: Number) -> Fraction:
    """``f(t) = 4(t a0 + b0)(t a2 + b2) - (t a1 + b1)**2``."""
    t = as_rational(t)
    return 4 * (t * A.a0 + B.a0) * (t * A.a2 + B.a2) - (t * A.a1 + B.a1) ** 2


def admissibility_f_quadratic(A: Quadratic, B: Quadratic) -> Quadratic:
    """``f`` as a quadratic in ``t``."""
    return Quadratic(
        -(A.a1 ** 2 - 4 * A.a0 * A.a2),
        2 * (2 * A.a0 * B.a2 + 2 * B.a0 * A.a2 - A.a1 * B.a1),
        -(B.a1 ** 2 - 4 * B.a0 * B.a2),
    )


def coefficient_directions(S: OrthotoricStructure, extra_degree: int = 0) -> list[tuple]:
    """Unit perturbations of every profile coefficient and of ``lambda**2``.

    Each direction is ``(name, dA, dB, dlambda_sq)``.  ``extra_degree``
    adds monomials above the current degrees (e.g. cubic directions for a
    quadratic structure).
    """
    dirs = []
    for label, prof in (("a", S.A), ("b", S.B)):
        top = max(prof.degree, 2) + extra_degree
        for power in range(top, -1, -1):
            mono = Poly.monomial(power)
            dA, dB = (mono, Poly.zero()) if label == "a" else (Poly.zero(), mono)
            dirs.append((f"{label}[x^{power}]", dA, dB, Fraction(0)))
    dirs.append(("lambda_sq", Poly.zero(), Poly.zero(), Fraction(1)))
    return dirs


def residual_jacobian(S: OrthotoricStructure, directions: Sequence[tuple] | None, x, y) -> np.ndarray:
    """Directional derivatives of :func:`full_residual` on the given points.

    The residual is quadratic in the profiles and affine in ``lambda**2``,
    so the derivative along ``(dA, dB, dlam)`` is ``2*Q(P, dP) - 2*dlam``
    with ``Q`` the symmetric bilinear form behind the residual.  Returns an
    array of shape ``(len(directions),) + x.shape``.
    """
    x, y = _check_domain(x, y)
    if directions is None:
        directions = coefficient_directions(S)
    P = _profile_derivs(S.A, S.B, x, y)
    out = []
    for direction in directions:
        *_, dA, dB, dlam = direction
        Q = _profile_derivs(dA, dB, x, y)
        out.append(2 * sum(_bilinear(P, Q, x - y)) - 2.0 * float(dlam) * np.ones_like(x))
    return np.array(out)


@dataclass(frozen=True)
class LiftData:
    """Pointwise coefficients of the six-dimensional Hermitian metric.

    ``g_N = transversal_scaling * g_K + fiber_metric_coefficient * (eta_V^2 + eta_W^2)``.
    """

    fiber_metric_coefficient: float
    transversal_scaling: float
    positive: bool


def bhe_lift_data(S: OrthotoricStructure, x, y) -> LiftData:
    R = scalar_curvature(S, x, y)
    if np.any(R <= 0):
        raise NonpositiveScalarCurvature("lift needs R > 0")
    half = R / 2
    return LiftData(fiber_metric_coefficient=1.0,
                    transversal_scaling=float(half) if np.ndim(half) == 0 else half,
                    positive=True)


def momentum_map(x, y):
    """Momentum coordinates ``(x + y, x*y)`` of the orthotoric torus action."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x + y, x * y


# --------------------------------------------------------------------------
# grids and verification

@dataclass(frozen=True)
class GridSample:
    """A field sampled on interior nodes of the root rectangle."""

    nx: int
    ny: int
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray  # shape (nx, ny), values[i, j] at (xs[i], ys[j])
    field_name: str

    def rows(self):
        """Row-major ``(x, y, value)`` triples."""
        for i, x in enumerate(self.xs):
            for j, y in enumerate(self.ys):
                yield float(x), float(y), float(self.values[i, j])


def chebyshev_interior(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` Chebyshev–Gauss nodes, strictly inside ``(lo, hi)``, ascending."""
    if n < 1:
        raise ValueError("need at least one node")
    k = np.arange(n)
    t = -np.cos((2 * k + 1) * np.pi / (2 * n))
    return (lo + hi) / 2 + (hi - lo) / 2 * t


def interior_grid(S: OrthotoricStructure, nx: int, ny: int):
    """Meshgrid ``(X, Y)`` of Chebyshev nodes, indexed ``[i, j]``."""
    xs = chebyshev_interior(*S.x_interval, nx)
    ys = chebyshev_interior(*S.y_interval, ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return xs, ys, X, Y


def _theta_density(S, x, y):
    x, y = _check_domain(x, y)
    return -float(S.lambda_sq) / (x - y) ** 4


def _rho_density(S, x, y):
    x, y = _check_domain(x, y)
    d = x - y
    _, A1, A2, _ = _derivs(S.A, x)
    _, B1, B2, _ = _derivs(S.B, y)
    disp = d**2 / 2 * A2 * B2 + d / 2 * (A1 + B1) * (A2 - B2) - 0.5 * (A1 + B1) ** 2
    return disp / (2 * d**4)


FIELDS = {
    "scalar-curvature": scalar_curvature,
    "residual": full_residual,
    "theta-density": _theta_density,
    "rho-density": _rho_density,
}


def sample_grid(S: OrthotoricStructure, field: str, nx: int, ny: int) -> GridSample:
    """Sample one of :data:`FIELDS` on an ``nx`` by ``ny`` interior grid.

    ``theta-density`` and ``rho-density`` are the pointwise ratios
    ``theta^2/omega^2`` and ``rho^2/omega^2``.
    """
    try:
        fn = FIELDS[field]
    except KeyError:
        raise ValueError(f"unknown field {field!r}; choose from {sorted(FIELDS)}") from None
    xs, ys, X, Y = interior_grid(S, nx, ny)
    return GridSample(nx, ny, xs, ys, np.asarray(fn(S, X, Y), dtype=float), field)


@dataclass(frozen=True)
class VerificationReport:
    max_abs_residual: float
    residual_scale: float
    min_scalar_curvature: float
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "max_abs_residual": self.max_abs_residual,
            "residual_scale": self.residual_scale,
            "min_scalar_curvature": self.min_scalar_curvature,
            "tol": self.tol,
            "pass": self.passed,
        }


def verify_solution(S: OrthotoricStructure, nx: int = 128, ny: int = 128,
                    tol: float = 1e-10) -> VerificationReport:
    """Grid check of ``S(omega) = 0`` and ``R > 0``.

    The residual tolerance is relative to the largest individual term of the
    residual (floored at 1), so it does not depend on how the profiles are
    scaled.
    """
    _, _, X, Y = interior_grid(S, nx, ny)
    terms = residual_terms(S, X, Y)
    res = sum(terms)
    scale = max(1.0, max(float(np.max(np.abs(t))) for t in terms))
    max_res = float(np.max(np.abs(res)))
    min_R = float(np.min(scalar_curvature(S, X, Y)))
    ok = bool(max_res <= tol * scale and min_R > 0)
    return VerificationReport(max_res, scale, min_R, tol, ok)


# --------------------------------------------------------------------------
# labelled quadrilaterals and solution families

@dataclass(frozen=True)
class LabelledQuadrilateral:
    """Vertices ``y1 < y2 < x1 < x2`` with positive facet labels.

    In momentum coordinates ``mu1 = x + y``, ``mu2 = x*y`` the facets are
    the lines ``l_u(mu) = -(u**2 - mu1*u + mu2) = 0`` for ``u`` one of the
    four vertices; ``labels = (r1, r2, p1, p2)`` scale the normals of the
    ``x1, x2, y1, y2`` facets.
    """

    y1: Fraction
    y2: Fraction
    x1: Fraction
    x2: Fraction
    labels: tuple = (Fraction(1),) * 4

    def __init__(self, y1, y2, x1, x2, labels=(1, 1, 1, 1)):
        vals = [as_rational(v) for v in (y1, y2, x1, x2)]
        labs = tuple(as_rational(v) for v in labels)
        if not (vals[0] < vals[1] < vals[2] < vals[3]):
            raise RootOrdering("need y1 < y2 < x1 < x2")
        if len(labs) != 4 or any(l <= 0 for l in labs):
            raise NotAdmissible("labels must be four positive rationals")
        for name, v in zip(("y1", "y2", "x1", "x2"), vals):
            object.__setattr__(self, name, v)
        object.__setattr__(self, "labels", labs)

    @property
    def vertices(self) -> tuple:
        return (self.y1, self.y2, self.x1, self.x2)

    def with_scaling(self, t1: Number, t2: Number) -> "LabelledQuadrilateral":
        """Labels matched by the profiles ``(t1*A0, t2*B0)``."""
        t1, t2 = as_rational(t1), as_rational(t2)
        r1, r2, p1, p2 = self.labels
        return LabelledQuadrilateral(*self.vertices, labels=(r1 / t1, r2 / t1, p1 / t2, p2 / t2))

    def facet(self, u: Number):
        """The affine function ``l_u`` on momentum space, as a callable."""
        u = as_rational(u)
        return lambda mu1, mu2: -(u * u - mu1 * u + mu2)

    def contains(self, x, y) -> bool:
        mu1, mu2 = x + y, x * y
        return all(s * self.facet(u)(mu1, mu2) > 0
                   for s, u in zip((1, -1, -1, 1), (self.x1, self.x2, self.y1, self.y2)))

    def normalized_profiles(self) -> tuple[Quadratic, Quadratic]:
        """The profiles ``A0, B0`` with unit-slope facets ``A0'(x1) = 2 = B0'(y1)``."""
        A0 = Quadratic.from_roots(self.x1, self.x2, lead=-2 / (self.x2 - self.x1))
        B0 = Quadratic.from_roots(self.y1, self.y2, lead=-2 / (self.y2 - self.y1))
        return A0, B0


@dataclass(frozen=True)
class FacetCheck:
    name: str
    expected: Fraction | float
    actual: Fraction | float
    passed: bool


def _close(a, b, tol) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tol * max(1.0, abs(float(b)))


def boundary_check(S: OrthotoricStructure, L: LabelledQuadrilateral,
                   tol: float = 1e-12) -> list[FacetCheck]:
    """Per-facet check of the compactification conditions.

    ``A`` vanishes at ``x1, x2`` with ``A'(x1) = 2/r1`` and
    ``A'(x2) = -2/r2``; likewise ``B`` on ``y1, y2`` with labels
    ``p1, p2``.  Exact when every datum is rational.
    """
    from .errors import RootMismatch

    for (lo, hi), roots in (((L.x1, L.x2), S.x_roots), ((L.y1, L.y2), S.y_roots)):
        if roots.is_exact:
            if (roots.r1, roots.r2) != (lo, hi):
                raise RootMismatch(f"profile roots {roots.r1, roots.r2} differ from vertices {lo, hi}")
        elif not (lo in roots.r1 and hi in roots.r2):
            raise RootMismatch("profile root enclosures miss the vertices")
    r1, r2, p1, p2 = L.labels
    dA, dB = S.A.deriv(), S.B.deriv()
    rows = [
        ("A(x1)", Fraction(0), S.A(L.x1)),
        ("A(x2)", Fraction(0), S.A(L.x2)),
        ("B(y1)", Fraction(0), S.B(L.y1)),
        ("B(y2)", Fraction(0), S.B(L.y2)),
        ("A'(x1)", 2 / r1, dA(L.x1)),
        ("A'(x2)", -2 / r2, dA(L.x2)),
        ("B'(y1)", 2 / p1, dB(L.y1)),
        ("B'(y2)", -2 / p2, dB(L.y2)),
    ]
    return [FacetCheck(n, e, a, _close(a, e, tol)) for n, e, a in rows]


def cgms_family(a: int, b: int, c: int) -> OrthotoricStructure:
    """The theta-free solution attached to positive integers ``(a, b, c)``.

    ``A = -(x-1)(x-c/d)`` and ``B = -(ab/cd)(y+c/a)(y-c/b)`` with
    ``d = b - a - c``.
    """
    from .errors import DegenerateD, DoubleRoot

    for v in (a, b, c):
        if isinstance(v, bool) or int(v) != v or v <= 0:
            raise ValueError("a, b, c must be positive integers")
    a, b, c = int(a), int(b), int(c)
    if math.gcd(math.gcd(a, b), c) != 1:
        raise ValueError(f"({a}, {b}, {c}) share a common factor")
    d = b - a - c
    if d <= 0:
        raise DegenerateD(f"d = {d} <= 0")
    xr = Fraction(c, d)
    if xr == 1:
        raise DoubleRoot("c/d = 1 gives a double root of A")
    if xr < 1 or Fraction(c, b) >= 1:
        raise RootOrdering("need -c/a < c/b < 1 < c/d")
    A = Quadratic.from_roots(1, xr, lead=-1)
    B = Quadratic.from_roots(Fraction(-c, a), Fraction(c, b), lead=-Fraction(a * b, c * d))
    if A.a1 + B.a1 != 0 or A.a2 + B.a2 != 0:  # pragma: no cover - algebraic identity
        raise AssertionError("CGMS coefficient relations failed")
    return OrthotoricStructure.from_quadratics(A, B, solve_lambda(A, B))


def enumerate_cgms(max_param: int) -> list[tuple[int, int, int]]:
    """All valid ``(a, b, c)`` with entries at most ``max_param``, sorted."""
    out = []
    for a in range(1, max_param + 1):
        for b in range(1, max_param + 1):
            for c in range(1, max_param + 1):
                try:
                    cgms_family(a, b, c)
                except (ValueError, RootOrdering):
                    continue
                out.append((a, b, c))
    return out


def legendre_pair(L: LabelledQuadrilateral, t1: Number, t2: Number,
                  tol: float = 1e-15) -> OrthotoricStructure:
    """Profiles ``(t1*A0, t2*B0)`` on ``L`` with ``lambda**2`` solved.

    ``A0`` and ``B0`` are the normalized profiles of
    :meth:`LabelledQuadrilateral.normalized_profiles`.
    """
    t1, t2 = as_rational(t1), as_rational(t2)
    if t1 <= 0 or t2 <= 0:
        raise NotAdmissible("t1, t2 must be positive")
    A0, B0 = L.normalized_profiles()
    A, B = A0.scaled(t1), B0.scaled(t2)
    return OrthotoricStructure.from_quadratics(A, B, solve_lambda(A, B), tol=tol)


def theta_free_ratios(L: LabelledQuadrilateral, tol: float = 1e-30) -> RootPair:
    """Roots of ``f`` for the normalized profiles: the ratios ``t1/t2`` with theta = 0."""
    A0, B0 = L.normalized_profiles()
    return quad_roots(admissibility_f_quadratic(A0, B0), tol)


@dataclass(frozen=True)
class ThetaFreeSolution:
    """A rational representative of a theta-free member of the family.

    ``ratio`` lies in the certified enclosure of a root of ``f`` on the
    admissible side, so ``lambda_sq`` is non-negative and tiny, and
    ``lambda_sq_bracket`` (the values of ``lambda**2`` at the enclosure
    endpoints) has a sign change certifying an exact zero inside.
    """

    structure: OrthotoricStructure
    ratio: Fraction
    enclosure: Interval | Fraction
    lambda_sq_bracket: tuple

    @property
    def exact(self) -> bool:
        return not isinstance(self.enclosure, Interval)


def theta_free_solutions(L: LabelledQuadrilateral, tol: float = 1e-30) -> list[ThetaFreeSolution]:
    A0, B0 = L.normalized_profiles()
    roots = theta_free_ratios(L, tol)
    out = []
    for root in (roots.r1, roots.r2):
        if isinstance(root, Interval):
            # pick the endpoint where f >= 0 so the solved lambda^2 is admissible
            t = root.hi if admissibility_f(A0, B0, root.hi) >= 0 else root.lo
            bracket = (admissibility_f(A0, B0, root.lo) / 4, admissibility_f(A0, B0, root.hi) / 4)
        else:
            t = root
            bracket = (Fraction(0), Fraction(0))
        if t <= 0:
            continue
        S = legendre_pair(L, t, 1)
        out.append(ThetaFreeSolution(S, t, root, bracket))
    return out


@dataclass(frozen=True)
class QuadrilateralSolution:
    quadrilateral: LabelledQuadrilateral
    t1: int
    t2: int
    lambda_sq: Fraction
    structure: OrthotoricStructure


def enumerate_quadrilateral_solutions(vertex_bound: int, t_bound: int,
                                      max_results: int | None = None) -> list[QuadrilateralSolution]:
    """Integer quadrilaterals with coprime scalings ``(t1, t2)`` and ``f(t1/t2) > 0``.

    Ordered lexicographically on ``(y1, y2, x1, x2, t1, t2)``.  Vertices
    range over ``[-vertex_bound, vertex_bound]`` and ``t1, t2`` over
    ``1..t_bound``.
    """
    out: list[QuadrilateralSolution] = []
    rng = range(-vertex_bound, vertex_bound + 1)
    for y1 in rng:
        for y2 in rng:
            if y2 <= y1:
                continue
            for x1 in rng:
                if x1 <= y2:
                    continue
                for x2 in rng:
                    if x2 <= x1:
                        continue
                    L = LabelledQuadrilateral(y1, y2, x1, x2)
                    A0, B0 = L.normalized_profiles()
                    for t1 in range(1, t_bound + 1):
                        for t2 in range(1, t_bound + 1):
                            if math.gcd(t1, t2) != 1:
                                continue
                            if admissibility_f(A0, B0, Fraction(t1, t2)) <= 0:
                                continue
                            S = legendre_pair(L, t1, t2)
                            A, B = S.quadratics()
                            if quadratic_residual_constant(A, B, S.lambda_sq) != 0:
                                continue  # pragma: no cover - solve_lambda guarantees this
                            out.append(QuadrilateralSolution(L.with_scaling(t1, t2), t1, t2,
                                                             S.lambda_sq, S))
                            if max_results is not None and len(out) >= max_results:
                                return out
    return out


# --------------------------------------------------------------------------
# cohomological pairings

PAIRING_NAMES = ("theta_theta", "rho_rho", "rho_omega", "theta_omega", "omega_omega")


def _pairing_densities(S: OrthotoricStructure, X, Y) -> dict:
    """Integrands against ``dx dy`` (the angular factor is applied later)."""
    d = X - Y
    R = scalar_curvature(S, X, Y)
    cx, cy = theta_form(S, X, Y)
    return {
        "theta_theta": _theta_density(S, X, Y) * d,
        "rho_rho": _rho_density(S, X, Y) * d,
        "rho_omega": R / 4 * d,
        # trace of theta against omega; the two coefficients cancel pointwise
        "theta_omega": (cx + cy) / 2 * d,
        "omega_omega": d,
    }


def _gauss_rectangle(S: OrthotoricStructure, order: int) -> dict:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    (x1, x2), (y1, y2) = S.x_interval, S.y_interval
    xs = (x1 + x2) / 2 + (x2 - x1) / 2 * nodes
    ys = (y1 + y2) / 2 + (y2 - y1) / 2 * nodes
    W = np.outer(weights, weights) * (x2 - x1) * (y2 - y1) / 4
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    dens = _pairing_densities(S, X, Y)
    out = {k: float(np.sum(W * v)) * (2 * np.pi) ** 2 for k, v in dens.items()}
    out["rho_rho_l1"] = float(np.sum(W * np.abs(dens["rho_rho"]))) * (2 * np.pi) ** 2
    return out


def polytope_pairings(S: OrthotoricStructure, quad_order: int = 96,
                      rtol: float = 1e-9) -> dict:
    """Integrals of ``theta^2, rho^2, rho.omega, theta.omega, omega^2``.

    Each density is integrated over the root rectangle by tensor
    Gauss–Legendre quadrature and multiplied by the torus volume
    ``(2*pi)**2``.  The computation is repeated at twice the order and
    :class:`QuadratureNotConverged` is raised if any value moves by more
    than ``rtol`` relative to the magnitude of ``omega_omega``.  The extra
    key ``rho_rho_l1`` holds the integral of ``|rho^2|``.
    """
    from .errors import QuadratureNotConverged

    lo = _gauss_rectangle(S, quad_order)
    hi = _gauss_rectangle(S, 2 * quad_order)
    ref = max(abs(hi["omega_omega"]), abs(hi["rho_rho_l1"]), 1e-300)
    for k in PAIRING_NAMES:
        if abs(lo[k] - hi[k]) > rtol * max(abs(hi[k]), ref):
            raise QuadratureNotConverged(f"{k}: {lo[k]!r} vs {hi[k]!r} at orders "
                                         f"{quad_order}/{2 * quad_order}")
    return hi
