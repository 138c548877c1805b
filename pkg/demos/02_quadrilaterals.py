"""
Labelled quadrilaterals and the admissibility polynomial
========================================================

A quadrilateral ``y1 < y2 < x1 < x2`` with labels gives normalized
quadratics ``A0, B0``.  Scaling them by ``t1, t2`` produces a solution when
the admissibility polynomial ``f(t)`` at ``t = t1/t2`` is nonnegative.
"""
# %%
from bhe_toric import orthotoric as ot
from bhe_toric.exactalg import format_rational

L = ot.LabelledQuadrilateral(-2, -1, 1, 2)
S = ot.legendre_pair(L, 1, 1)
print("lambda^2 for t1 = t2 = 1:", S.lambda_sq)
for facet in ot.boundary_check(S, L):
    print(" ", facet)

# %%
# The quadratic f(t) and its roots.  Here they are irrational, so they
# come back as certified rational intervals.
A0, B0 = L.normalized_profiles()
f = ot.admissibility_f_quadratic(A0, B0)
print("f(t) coefficients:", f.coeffs)
print("roots:", ot.quad_roots(f))

# %%
# At a root lambda vanishes.  The package picks the admissible end of each
# enclosure, so lambda^2 is tiny but nonnegative and its bracket changes sign.
for sol in ot.theta_free_solutions(L):
    print(f"ratio ~ {float(sol.ratio):.12f}  lambda^2 = {float(sol.structure.lambda_sq):.2e}"
          f"  bracket = {[float(b) for b in sol.lambda_sq_bracket]}")

# %%
# Enumerate small integer quadrilaterals and scalings.
sols = ot.enumerate_quadrilateral_solutions(3, 3, max_results=10)
for s in sols:
    print([format_rational(u) for u in s.quadrilateral.vertices], s.t1, s.t2, "lambda^2 =", s.lambda_sq)
