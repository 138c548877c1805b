"""
Calabi ansatz on ruled surfaces
===============================

A profile ``Theta(z)`` on ``[-1, 1]`` with prescribed boundary slopes
reduces the equation to an ODE.  Two weighted integrals of the residual
depend only on boundary data, and they obstruct solutions when ``k != 0``.
"""
# %%
import numpy as np

from bhe_toric import calabi as cb

# Product case: k = 0, quadratic profile.  The residual vanishes identically.
P = cb.samelson_product(2, 3)
z = np.linspace(-0.99, 0.99, 9)
print("Samelson lambda^2 =", P.lambda_sq, " max |residual| =", np.max(np.abs(cb.calabi_residual(P, z))))

# %%
# Pick lambda^2 so the first integral vanishes, then perturb the interior of
# the profile.  The integral stays at zero; the second stays at its closed form.
k, c, v, w, s = 1, 2, 1, 2, 3
lam = cb.lambda_sq_from_futaki_1(k, c, v, w, s)
for knobs in [(), (0.05,), (-0.03, 0.02)]:
    Q = cb.make_profile_from_boundary(k, c, v, w, knobs, s, lam)
    print(knobs, f"I1 = {cb.futaki_integral_1(Q):+.2e}  I2 = {cb.futaki_integral_2(Q):.10f}")
print("closed form I2:", float(cb.futaki_2_closed_form(k, c, v, w, s, lam)))

# %%
# Asking for both integrals to vanish forces a negative lambda^2.
print(cb.futaki_obstruction_k_nonzero(1, 2, 1, 1))
print(cb.futaki_obstruction_k0(2, 2, 3, 1))
