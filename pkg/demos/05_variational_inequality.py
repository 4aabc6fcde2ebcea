"""
Variational inequalities by projected iteration
===============================================

Find u in K with <S u, v - u> >= 0 for all v in K. The solution is the fixed
point of T(u) = P_K(u - lam S u). For S strongly monotone (modulus eta) and
Lipschitz (constant L), lam = eta / L^2 makes T a contraction with factor
sqrt(1 - eta^2 / L^2).
"""
import numpy as np

from bestprox import (AffineOperator, Box, CallableOperator, Halfspace, Intersection, VIProblem,
                      choose_lambda, solve_vi, vi_residual)

# S(u) = u - 1 on K = [0, inf): the solution is u = 1, where S vanishes
scalar = VIProblem(Box([0], [np.inf]), AffineOperator([[1]], [-1]), lam=0.5)
res = solve_vi(scalar, [0.0])
print("u* =", res.u, "after", res.iterations, "steps")
print("natural residual, worst probe:", vi_residual(scalar, res.u, probe_count=1000))

# same operator on K = [2, 3]: the solution sits on the boundary
edge = VIProblem(Box([2], [3]), AffineOperator([[1]], [-1]), lam=1.0)
print("boundary solution:", solve_vi(edge, [2.5]).u)

# automatic step for S(u) = diag(1, 2) u + b
S = AffineOperator(np.diag([1.0, 2.0]), [-3.0, 0.5])
print("lambda, predicted k:", choose_lambda(S))
res = solve_vi(VIProblem(Box([-1, -1], [1, 1]), S), [0.0, 0.0])
ratios = np.array(res.trace.steps[1:]) / np.array(res.trace.steps[:-1])
print("u* =", res.u, " max step ratio", ratios.max())

# over an intersection; K mixes a box and a halfspace
K = Intersection([Box([-1, -1], [1, 1]), Halfspace([1, 1], 0.5)])
res = solve_vi(VIProblem(K, AffineOperator([[2, 1], [-1, 3]], [-2, -2])), [0.0, 0.0])
print("u* =", res.u, " certified:", res.certified)

# a black-box operator: L and eta are only estimated, so nothing is certified
bb = VIProblem(Box([-2, -2], [2, 2]), CallableOperator(lambda u: 2 * u - 1 + 0.1 * np.sin(u), 2))
res = solve_vi(bb, [0.0, 0.0])
print("black box u* =", res.u)
print("\n".join(res.warnings))
