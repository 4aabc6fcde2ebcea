"""
Best proximity points between two parallel lines
================================================

A is the line y = 0 and B the line y = 1, so d(A, B) = 1. The map
T(x, 0) = (x/2, 1) sends A into B; it has no fixed point (A and B are
disjoint), but it has a best proximity point: a point x with d(x, Tx) = 1.
"""
import numpy as np

from bestprox import (EuclideanSpace, Hyperplane, ProximalMap, check_bound_ledger, estimate_k,
                      iterate, pair_separation, verify_uniqueness)

plane = EuclideanSpace(2)
pair = pair_separation(plane, Hyperplane([0, 1], 0), Hyperplane([0, 1], 1))
print("d(A,B) =", pair.separation, "via", pair.method)

# declaring k = 0.5 turns the stopping rule into a certificate
T = ProximalMap.affine(pair, [[0.5, 0], [0, 0]], [0, 1], k=0.5)

# Each step moves Tx_n back to A along the shortest segment, which here
# just drops the y-coordinate: x_{n+1} = (x_n / 2, 0).
trace, res = iterate(T, [1, 0])
for n in range(5):
    print(n, trace.points[n], "a-priori bound", trace.apriori[n])
print("...")
print("limit", res.point, "after", res.iterations, "steps")
print("certificate", res.certificate())

# Every pair m < n obeys d(x_m, x_n) <= k^m / (1 - k) d(x_0, x_1).
ledger = check_bound_ledger(trace, 0.5)
print("bound checks:", ledger.checked, "violations:", len(ledger.violations))

# The limit does not depend on where we start.
report = verify_uniqueness(T, [[1, 0], [-5, 0], [100, 0]])
print("unique:", report.unique, "spread", report.spread)

# Without a declared k we can still estimate one from samples of A0.
est = estimate_k(T, samples=100, seed=0)
print("k-hat =", est.k_hat, "admissible:", est.admissible)
print("|x_N| =", np.linalg.norm(res.point))
