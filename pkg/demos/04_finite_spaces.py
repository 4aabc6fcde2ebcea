"""
Finite metric spaces and the exhaustive oracle
==============================================

In a finite space everything can be enumerated: A0 and B0, the exact
contraction constant over all choices of partners, and the set of best
proximity points. This is how the iteration is checked against ground truth.
"""
import numpy as np

from bestprox import (FiniteSpace, ProximalMap, brute_force_bpp, enumerate_A0_finite,
                      enumerate_B0_finite, estimate_k, exact_contraction_constant, iterate,
                      pair_separation, validate_metric)

# points on three rows; A is the left column, B the right one
pts = np.array([[0, 0], [0, 1], [0, 3], [1, 0], [1, 1], [1, 3]], float)
M = np.linalg.norm(pts[:, None] - pts[None], axis=2)
print(validate_metric(M))

space = FiniteSpace(M)
pair = pair_separation(space, [0, 1, 2], [3, 4, 5])
print("d(A,B) =", pair.separation, " A0 =", enumerate_A0_finite(pair),
      " B0 =", enumerate_B0_finite(pair))

# T as a table: T(0) = 3, T(1) = 3, T(2) = 4
T = ProximalMap.table(pair, [3, 3, 4, None, None, None], k=0.5)
print("exact k:", exact_contraction_constant(T), " estimate:", estimate_k(T).k_hat)
print("best proximity points by enumeration:", brute_force_bpp(T))
for x0 in enumerate_A0_finite(pair):
    trace, res = iterate(T, x0)
    print(f"start {x0}: sequence {list(trace.points)} -> {res.point}")

# a broken metric is rejected with the offending triple
print(validate_metric([[0, 5, 1], [5, 0, 1], [1, 1, 0]]))
