"""
Metric projections
==================

Every set in the catalog has an exact projection, except the intersection,
which uses Dykstra's algorithm. FinitePointSet is the odd one out: it is not
convex, and projection picks the nearest listed point.
"""
import numpy as np

from bestprox import (AffineSet, Ball, Box, FinitePointSet, Halfspace, Hyperplane, Intersection,
                      Simplex)

x = np.array([2.0, -1.0])
for S in [Box([0, 0], [1, 1]), Ball([0, 0], 1), Hyperplane([1, 1], 1), Halfspace([1, 1], 0),
          AffineSet([[1, 2]], [2]), Simplex(2), FinitePointSet([[0, 0], [3, 0], [1, -2]])]:
    r = S.project(x)
    print(f"{S.kind:10s} P(x) = {np.round(r.point, 6)}  distance {r.distance:.6f}")

# sort-and-threshold on the simplex
print(Simplex(3).project([1.2, 0.3, -0.5]).point)

# Dykstra keeps one correction per set, so it converges to the projection
# onto the intersection, not just to some common point.
K = Intersection([Box([-1, -1], [1, 1]), Halfspace([1, 1], 0.5)])
r = K.project([2.0, 2.0])
print("intersection:", r.point, "in", r.iterations, "sweeps")

# the variational characterisation <x - Px, y - Px> <= 0 on samples of K
y = np.array(K.sample(1000, seed=0))
print("max <x-Px, y-Px> =", np.max((y - r.point) @ (np.array([2.0, 2.0]) - r.point)))
