from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bhe_toric.errors import ComplexRoots, DegenerateLeadingCoefficient
from bhe_toric.exactalg import (
    Interval, Poly, Quadratic, as_rational, discriminant, eval_poly, format_rational,
    is_rational_square, quad_roots, resultant_quadratics,
)

from oracles import bisect_root

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero = rats.filter(lambda q: q != 0)


def test_rational_canonical_form():
    q = as_rational("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)
    assert as_rational(0) == F(0, 1) and as_rational("0/5").denominator == 1
    assert as_rational(0.5) == F(1, 2)
    assert format_rational(F(-3, 2)) == "-3/2" and format_rational(F(4)) == "4"
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational(float("nan"))


@given(rats, rats, rats)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


def test_rational_no_overflow():
    big = as_rational(10) ** 200 / 3
    assert (big * 3).numerator == 10 ** 200


class TestPoly:
    def test_normalisation(self):
        assert Poly([0, 0, 1, 2]).coeffs == (1, 2)
        assert Poly([]).is_zero() and Poly([0, 0]).degree == 0

    def test_derivative_and_arith(self):
        p = Poly([1, -3, 2])
        assert p.deriv().coeffs == (2, -3)
        assert p.deriv(3).is_zero()
        assert (p * p - p ** 2).is_zero()
        assert (p - p).is_zero()
        assert Poly.from_roots([1, 2], lead=-1) == Poly([-1, 3, -2])
        assert Poly([1, 0, 0]).compose_affine(2, 1) == Poly([4, 4, 1])
        assert p.coefficient(2) == 1 and p.coefficient(7) == 0

    @given(st.lists(rats, min_size=1, max_size=6), rats)
    def test_eval_matches_sum(self, cs, x):
        n = len(cs) - 1
        assert eval_poly(Poly(cs), x) == sum(c * x ** (n - i) for i, c in enumerate(cs))

    def test_eval_examples(self):
        p = Poly([-1, 3, -2])
        assert eval_poly(p, F(1)) == 0
        assert eval_poly(p, F(3, 2)) == F(1, 4)
        assert eval_poly(Poly.zero(), F(17, 3)) == 0
        assert eval_poly(p, 1.5) == pytest.approx(0.25)


class TestRoots:
    def test_exact(self):
        r = quad_roots(Quadratic(-1, 3, -2))
        assert r.is_exact and (r.r1, r.r2) == (1, 2)
        r = quad_roots(Quadratic(1, 0, 0))
        assert r.is_exact and (r.r1, r.r2) == (0, 0)

    def test_interval_against_bisection(self):
        r = quad_roots(Quadratic(1, 0, -2), 1e-12)
        assert r.kind == "interval"
        for iv, bracket in ((r.r1, (F(-2), F(0))), (r.r2, (F(0), F(2)))):
            assert iv.width <= F(1e-12)
            lo, hi = bisect_root((1, 0, -2), *bracket, F(1, 10 ** 14))
            assert iv.lo <= hi and lo <= iv.hi
            assert (iv.lo ** 2 - 2) * (iv.hi ** 2 - 2) <= 0

    @settings(max_examples=200)
    @given(nonzero, rats, rats)
    def test_roots_property(self, a0, a1, a2):
        q = Quadratic(a0, a1, a2)
        if discriminant(q) < 0:
            with pytest.raises(ComplexRoots):
                quad_roots(q)
            return
        r = quad_roots(q, 1e-9)
        if r.is_exact:
            assert q(r.r1) == 0 and q(r.r2) == 0 and r.r1 <= r.r2
        else:
            for iv in (r.r1, r.r2):
                assert iv.width <= F(1e-9)
                # sign change certifies a root inside the enclosure
                assert q(iv.lo) * q(iv.hi) <= 0
            assert r.r1.hi <= r.r2.lo
        assert is_rational_square(discriminant(q)) == r.is_exact

    def test_errors(self):
        with pytest.raises(DegenerateLeadingCoefficient):
            quad_roots(Quadratic(0, 1, 1))
        with pytest.raises(ComplexRoots):
            quad_roots(Quadratic(1, 0, 1))


class TestDiscriminantResultant:
    def test_examples(self):
        assert discriminant(Quadratic(-1, 3, -2)) == 1
        assert discriminant(Quadratic(1, 0, 0)) == 0
        assert discriminant(Quadratic(-2, 6, -4)) == 4
        A = Quadratic(-1, 3, -2)
        assert resultant_quadratics(A, A) == 0
        assert resultant_quadratics(Quadratic(-2, 6, -4), Quadratic(-2, -6, -4)) == 1152
        B = Quadratic(-2, -3, 2)
        assert resultant_quadratics(A, B) == A.a0 ** 2 * B(F(1)) * B(F(2))

    @settings(max_examples=200)
    @given(nonzero, rats, rats, nonzero, rats, rats)
    def test_product_of_evaluations(self, a0, a1, a2, b0, b1, b2):
        A, B = Quadratic(a0, a1, a2), Quadratic(b0, b1, b2)
        res = resultant_quadratics(A, B)
        if discriminant(A) >= 0 and (ra := quad_roots(A)).is_exact:
            assert res == a0 ** 2 * B(ra.r1) * B(ra.r2)
        if discriminant(B) >= 0 and (rb := quad_roots(B)).is_exact:
            assert res == b0 ** 2 * A(rb.r1) * A(rb.r2)

    @given(nonzero, rats, rats, nonzero, rats, rats, rats)
    def test_translation_invariance(self, a0, a1, a2, b0, b1, b2, s):
        A, B = Quadratic(a0, a1, a2), Quadratic(b0, b1, b2)
        At = Quadratic.from_poly(A.as_poly().compose_affine(1, s))
        Bt = Quadratic.from_poly(B.as_poly().compose_affine(1, s))
        assert resultant_quadratics(At, Bt) == resultant_quadratics(A, B)
        assert discriminant(At) == discriminant(A)

    def test_matches_sylvester_determinant(self):
        sympy = pytest.importorskip("sympy")
        a0, a1, a2, b0, b1, b2 = sympy.symbols("a0 a1 a2 b0 b1 b2")
        x = sympy.Symbol("x")
        ref = sympy.resultant(a0 * x**2 + a1 * x + a2, b0 * x**2 + b1 * x + b2, x)
        A, B = Quadratic(3, -1, 2), Quadratic(-5, 4, 7)
        val = ref.subs(dict(zip((a0, a1, a2, b0, b1, b2), (*A.coeffs, *B.coeffs))))
        assert F(int(val)) == resultant_quadratics(A, B)
