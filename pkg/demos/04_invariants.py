"""
Cohomological checks and the non-Archimedean slope
==================================================

Integrating the forms over the polytope gives pairings of classes.  A
solution satisfies closure ``theta.theta + rho.rho = 0`` and primitivity
``theta.omega = 0``.  The slope of the product test configuration tracks
the second Futaki integral.
"""
# %%
import math

from bhe_toric import calabi as cb, invariants as inv, orthotoric as ot

S = ot.legendre_pair(ot.LabelledQuadrilateral(-2, -1, 1, 2), 1, 1)
p = ot.polytope_pairings(S)
for name, value in p.items():
    print(f"{name:>14s} {value: .6e}")

d = inv.intersection_from_pairings(p)
print(inv.topology_gate(d))
print("c_alpha_beta =", inv.c_alpha_beta(d))

# %%
# Slope of the product test configuration against -(2 pi)^3 I2 / (2k).
k, c, v, w, s = 1, 2, 1, 2, 3
P = cb.make_profile_from_boundary(k, c, v, w, (), s, cb.lambda_sq_from_futaki_1(k, c, v, w, s))
slope = inv.e_na_slope(inv.product_test_configuration(P))
print("slope:", slope, " predicted:", -(2 * math.pi) ** 3 * cb.futaki_integral_2(P) / (2 * k))
