"""
Theta-free solutions from integer triples
=========================================

Each admissible triple ``(a, b, c)`` gives a pair of quadratics whose
orthotoric structure solves the equation with ``lambda = 0``.  This script
builds one, checks it on a grid, and then sweeps a range of triples.
"""
# %%
# Build the structure for (1, 4, 2) and look at the profiles.
from bhe_toric import orthotoric as ot
from bhe_toric.exactalg import format_rational

S = ot.cgms_family(1, 4, 2)
A, B = S.quadratics()
print("A coefficients:", [format_rational(c) for c in A.coeffs])
print("B coefficients:", [format_rational(c) for c in B.coeffs])
print("x in", S.x_interval, " y in", S.y_interval, " lambda^2 =", S.lambda_sq)

# %%
# For quadratic profiles the residual is a constant, so it can be computed
# exactly in rational arithmetic.  A float check on a Chebyshev grid should
# agree with it up to rounding.
print("exact residual constant:", ot.quadratic_residual_constant(A, B, S.lambda_sq))
report = ot.verify_solution(S, 128, 128)
print("grid check:", report.to_dict())

# %%
# The scalar curvature and the lift data at one interior point.
x, y = 1.5, -0.75
print("scalar curvature:", ot.scalar_curvature(S, x, y))
print("lift data:", ot.bhe_lift_data(S, x, y))

# %%
# Sweep every admissible triple with entries up to 12.
triples = ot.enumerate_cgms(12)
bad = [t for t in triples if not ot.verify_solution(ot.cgms_family(*t), 64, 64).passed]
print(f"{len(triples)} triples, {len(bad)} failures")
