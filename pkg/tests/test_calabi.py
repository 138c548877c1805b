from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bhe_toric import calabi as cb
from bhe_toric.errors import NonpositiveProfile, NotAdmissible, OutOfDomain, QuadratureNotConverged
from bhe_toric.exactalg import Poly

sympy = pytest.importorskip("sympy")
z = sympy.Symbol("z")


def sym_residual(k, c, V, s, lam2, mixed_sign=-1):
    """4S from the ruled-surface Ricci/Laplacian expressions, expanded by sympy.

    ``mixed_sign`` multiplies the second bracket term; -1 is the sign that
    makes the integrated identities hold (see the sign test below).
    """
    L = k * z + c
    R = s / L - sympy.diff(V, z, 2) / L
    inner = sympy.diff(R, z) * V / L
    return (-sympy.diff(inner, z) + mixed_sign * k / L * inner
            + (k * sympy.diff(V, z) / L - s) * sympy.diff(sympy.diff(V, z) / L, z) / L
            - lam2 / L**4)


def to_sym(P: cb.CalabiProfile):
    return sum(sympy.Rational(c.numerator, c.denominator) * z ** (P.V.degree - i)
               for i, c in enumerate(P.V.coeffs))


def R(q):
    q = F(q)
    return sympy.Rational(q.numerator, q.denominator)


def test_residual_matches_symbolic():
    P = cb.make_profile_from_boundary(2, 5, 3, 2, (F(1, 4), F(-1, 9)), s_sigma=F(7, 3), lambda_sq=11)
    expr = sym_residual(R(P.k), R(P.c), to_sym(P), R(P.s_sigma), R(P.lambda_sq))
    f = sympy.lambdify(z, sympy.simplify(expr), "numpy")
    zs = np.linspace(-0.95, 0.95, 41)
    assert np.allclose(cb.calabi_residual(P, zs), f(zs), rtol=1e-10, atol=1e-10)
    num = cb.residual_numerator(P)
    assert sympy.simplify(expr * (R(P.k) * z + R(P.c)) ** 4
                          - sum(R(cf) * z ** (num.degree - i) for i, cf in enumerate(num.coeffs))) == 0


def test_sign_of_mixed_term_pinned_by_integration():
    """With the opposite sign on the mixed term, the (kz+c)-weighted integral
    would depend on interior data; with ours it does not."""
    vals = {+1: [], -1: []}
    for knobs in ((), (F(1, 3),), (F(-1, 5), F(1, 4))):
        P = cb.make_profile_from_boundary(1, 3, 2, 1, knobs, s_sigma=2, lambda_sq=5)
        for sign in vals:
            e = sym_residual(1, 3, to_sym(P), 2, 5, mixed_sign=sign)
            vals[sign].append(sympy.integrate(sympy.cancel(e * (z + 3)), (z, -1, 1)))
    assert len(set(vals[-1])) == 1
    assert len(set(vals[+1])) > 1


def test_closed_form_constants_pinned_symbolically():
    for (k, c, v, w, s, lam2, knobs) in [(1, 2, 1, 2, 3, 7, ()), (-2, 5, 3, 1, F(-1, 2), 2, (F(1, 6),)),
                                          (3, 4, 2, 2, 0, 0, (F(1, 5), F(1, 7)))]:
        P = cb.make_profile_from_boundary(k, c, v, w, knobs, s, lam2)
        e = sympy.cancel(sym_residual(R(k), R(c), to_sym(P), R(s), R(lam2)))
        L = R(k) * z + R(c)
        i1 = sympy.integrate(sympy.apart(sympy.cancel(e * L), z), (z, -1, 1))
        i2 = sympy.integrate(sympy.apart(sympy.cancel(e * L**2), z), (z, -1, 1))
        assert sympy.nsimplify(i1) == R(cb.futaki_1_closed_form(k, c, v, w, s, lam2))
        assert sympy.nsimplify(i2) == R(cb.futaki_2_closed_form(k, c, v, w, s, lam2))
    P = cb.make_profile_from_boundary(0, 3, 2, 5, (F(1, 3),), 4, 1)
    e = sympy.cancel(sym_residual(0, 3, to_sym(P), 4, 1))
    assert sympy.integrate(e * z, (z, -1, 1)) == R(cb.futaki_z_closed_form(3, 2, 5, 4))


class TestProfile:
    def test_boundary_validation(self):
        P = cb.make_profile_from_boundary(1, 2, 3, 4)
        th = P.V * F(1)  # Theta(z)(kz+c)
        assert th(F(1)) == 0 and th(F(-1)) == 0
        with pytest.raises(NonpositiveProfile):
            cb.CalabiProfile(0, 1, 1, 1, 0, Poly([-1, 0, 1]) * 2)  # slopes 4, not 2
        with pytest.raises(NotAdmissible):
            cb.make_profile_from_boundary(2, 2, 1, 1)
        with pytest.raises(NonpositiveProfile):
            cb.make_profile_from_boundary(1, 2, 1, 1, (-50,))

    def test_zero_knob_is_base_member(self):
        P = cb.make_profile_from_boundary(0, 1, 1, 1)
        assert P.V == Poly([-1, 0, 1])

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.fractions(F(-1, 16), F(1, 16), max_denominator=40), max_size=3))
    def test_small_knobs_keep_boundary(self, knobs):
        # alpha + beta z >= 1/5 here, and three knobs of size <= 1/16 cannot undo that
        P = cb.make_profile_from_boundary(1, 3, 2, 5, knobs)
        th = lambda t: F(P.V(t)) / P.L(t)
        assert th(F(1)) == 0 and th(F(-1)) == 0
        assert P.V.deriv()(F(-1)) / P.L(F(-1)) == F(2, 5)
        assert P.V.deriv()(F(1)) / P.L(F(1)) == F(-2, 2)
        assert np.all(cb.theta_profile(P, np.linspace(-0.999, 0.999, 301)) > 0)

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomain):
            cb.calabi_residual(cb.samelson_product(1, 1), 1.0)

    def test_json_roundtrip(self):
        P = cb.make_profile_from_boundary(1, 3, 2, 5, (F(1, 7),), F(1, 2), 3)
        assert cb.CalabiProfile.from_dict(P.to_dict()) == P


class TestResidualExamples:
    def test_samelson(self):
        P = cb.samelson_product(1, 4)
        assert P.lambda_sq == 8 and P.V == Poly([-1, 0, 1])
        zs = np.cos((2 * np.arange(1000) + 1) * np.pi / 2000)
        assert np.max(np.abs(cb.calabi_residual(P, zs))) <= 1e-12
        assert cb.samelson_product(2, 0).lambda_sq == 0
        with pytest.raises(NotAdmissible):
            cb.samelson_product(1, -1)

    def test_trivial_vanishing(self):
        # V'' = 0 cannot meet the end-point conditions; a constant V'' with k = s = lambda = 0
        # kills every term just the same
        Q = cb.CalabiProfile(0, 1, 1, 1, 0, Poly([-1, 0, 1]))
        assert np.all(cb.calabi_residual(Q, np.linspace(-0.9, 0.9, 7)) == 0)


class TestFutakiIntegrals:
    def test_i1_vanishes_with_futaki_1_lambda(self):
        lam = cb.lambda_sq_from_futaki_1(1, 2, 1, 2, 3)
        rng = np.random.default_rng(3)
        vals = []
        for _ in range(10):
            knobs = [F(int(a), 40) for a in rng.integers(-6, 7, 3)]
            P = cb.make_profile_from_boundary(1, 2, 1, 2, knobs, 3, lam)
            vals.append((cb.futaki_integral_1(P), cb.futaki_integral_2(P)))
        assert max(abs(a) for a, _ in vals) <= 1e-8
        i2 = float(cb.futaki_2_closed_form(1, 2, 1, 2, 3, lam))
        assert all(abs(b - i2) <= 1e-8 * abs(i2) for _, b in vals)

    def test_trivial(self):
        P = cb.make_profile_from_boundary(0, 2, 1, 1, (F(1, 5),))
        assert abs(cb.futaki_integral_1(P)) <= 1e-12

    def test_worked_i2(self):
        P = cb.make_profile_from_boundary(1, 2, 1, 1)
        assert cb.futaki_2_rhs(1, 2, 1, 1, 0) == 4
        assert cb.futaki_2_closed_form(1, 2, 1, 1, 0, 0) == 8
        assert cb.futaki_integral_2(P) == pytest.approx(8, rel=1e-10)

    def test_samelson_i2_zero(self):
        assert abs(cb.futaki_integral_2(cb.samelson_product(3, 2))) <= 1e-10

    def test_convergence_error(self):
        P = cb.make_profile_from_boundary(9, 10, 1, 1, (), 1, 1)
        with pytest.raises(QuadratureNotConverged):
            cb.futaki_integral_1(P, quad_order=2, rtol=1e-14)


class TestObstructions:
    def test_k_nonzero_example(self):
        r = cb.futaki_obstruction_k_nonzero(1, 2, 1, 1)
        assert r.lambda_sq_forced == -36 and r.s_sigma_forced == -4 and r.obstructed and r.unique
        assert cb.futaki_obstruction_k_nonzero(2, 7, 3, 3).s_sigma_forced == F(-14, 3)

    def test_joint_solve_satisfies_both(self):
        r = cb.futaki_obstruction_k_nonzero(-1, 3, 2, 5)
        args = (-1, 3, 2, 5, r.s_sigma_forced, r.lambda_sq_forced)
        assert cb.futaki_1_closed_form(*args) == 0 and cb.futaki_2_closed_form(*args) == 0

    def test_degenerate_parameters(self):
        # (k + c) w = (c - k) v makes the two conditions dependent
        r = cb.futaki_obstruction_k_nonzero(1, 2, 3, 1)
        assert not r.unique
        s = F(10)
        lam = cb.lambda_sq_from_futaki_1(1, 2, 3, 1, s)
        assert lam > 0 and cb.futaki_2_closed_form(1, 2, 3, 1, s, lam) == 0

    def test_k0(self):
        r = cb.futaki_obstruction_k0(1, 1, 1, 2)
        assert r.lambda_sq == 4 and r.consistent
        assert not cb.futaki_obstruction_k0(1, 2, 3, 5).consistent
        r = cb.futaki_obstruction_k0(3, 2, 2, 0)
        assert r.lambda_sq == 0 and r.consistent
        r = cb.futaki_obstruction_k0(2, 2, 3, 1)
        assert r.lambda_sq_forced == -(2 ** 4) * (F(1, 2) + F(1, 3)) ** 2

    def test_k0_zero_pairing_forces_s(self):
        c, v, w = F(2), 2, 3
        s = cb.futaki_obstruction_k0(c, v, w, 0).s_sigma_forced
        assert cb.futaki_z_closed_form(c, v, w, s) == 0
        assert cb.futaki_z_closed_form(c, v, w, s + 1) != 0
