import math
from fractions import Fraction as F

import pytest

from bhe_toric import calabi as cb, invariants as inv, orthotoric as ot


def test_c_alpha_beta_examples():
    assert inv.c_alpha_beta(inv.IntersectionData(2, 3, -3, 5)) == 0
    assert inv.c_alpha_beta(inv.IntersectionData(2, 3, 1, 2)) == 8
    assert inv.c_alpha_beta(inv.IntersectionData(1, 7, 2, 3)) == 0
    with pytest.raises(ValueError):
        inv.IntersectionData(2, 1, 1, 0)


def test_c_alpha_beta_scaling():
    n, s = 3, 1.7
    d = inv.IntersectionData(n, 2.0, 0.5, 4.0)
    ds = inv.IntersectionData(n, 2.0 * s ** (n - 2), 0.5 * s ** (n - 2), 4.0 * s ** n)
    assert inv.c_alpha_beta(ds) == pytest.approx(inv.c_alpha_beta(d) / s**2, rel=1e-14)


def test_topology_gate():
    assert inv.topology_gate(inv.IntersectionData(2, 1, -1, 4)).passed
    r = inv.topology_gate(inv.IntersectionData(2, 1, -1, 4, beta_alpha=1))
    assert not r.primitivity and r.closure
    r = inv.topology_gate(inv.IntersectionData(2, 1, 0, 4))
    assert r.primitivity and not r.closure
    with pytest.raises(ValueError):
        inv.topology_gate(inv.IntersectionData(3, 1, -1, 4))


def test_gate_on_orthotoric_solutions():
    for S in (ot.cgms_family(1, 4, 2), ot.legendre_pair(ot.LabelledQuadrilateral(-2, -1, 1, 2), 1, 1)):
        d = inv.intersection_from_pairings(ot.polytope_pairings(S))
        assert inv.topology_gate(d).passed
        assert abs(inv.c_alpha_beta(d)) <= 1e-8


def test_slope_basic():
    assert inv.e_na_slope(inv.TestConfigData(2, 0, 0, 0, 0)) == 0
    assert inv.e_na_slope(inv.TestConfigData(2, 1.5, 0.25, 3.0, 0)) < 0
    t = inv.TestConfigData(2, 1.0, 2.0, 6.0, 4.0)
    # -(2pi)^3 [(1 + 2)/1! - 2 * 6/3!]
    assert inv.e_na_slope(t) == pytest.approx(-(2 * math.pi) ** 3 * (3 - 2), rel=1e-14)


def test_slope_affine():
    base = dict(n=2, K_rel_sq_A=0.3, B_sq_A=-0.2, A_top=1.1, c_ab=0.7)
    for field in ("K_rel_sq_A", "B_sq_A", "A_top", "c_ab"):
        vals = []
        for h in (0.0, 0.5, 1.0, 1.5):
            d = dict(base)
            d[field] += h
            vals.append(inv.e_na_slope(inv.TestConfigData(**d)))
        diffs = [b - a for a, b in zip(vals, vals[1:])]
        assert max(diffs) - min(diffs) <= 1e-12 * max(1.0, max(abs(v) for v in vals))


def test_product_configuration_matches_i2():
    cases = [(1, 2, 1, 2, 3, ()), (-2, 3, 2, 1, 5, (F(1, 7), F(1, 9))), (1, 3, 1, 1, F(1, 2), (F(1, 5),))]
    for k, c, v, w, s, knobs in cases:
        lam = cb.lambda_sq_from_futaki_1(k, c, v, w, s)
        P = cb.make_profile_from_boundary(k, c, v, w, knobs, s, lam)
        slope = inv.e_na_slope(inv.product_test_configuration(P))
        i2 = cb.futaki_integral_2(P)
        assert slope == pytest.approx(-(2 * math.pi) ** 3 * i2 / (2 * k), rel=1e-9)
