"""
Separation and proximal subsets
===============================

For a pair (A, B) the proximal subset A0 collects the points of A that
realise d(A, B) against some point of B. For two disjoint balls A0 is the
single point facing B.
"""
import numpy as np

from bestprox import (Ball, Box, EuclideanSpace, Halfspace, in_A0, in_B0, pair_separation,
                      proximal_resolve)
from bestprox.pairs import alternating_separation

plane = EuclideanSpace(2)
balls = pair_separation(plane, Ball([0, 0], 1), Ball([5, 0], 1))
print("balls: d =", balls.separation, "witness", balls.witness)
print("(1,0) in A0:", in_A0(balls, [1, 0]), " (-1,0) in A0:", in_A0(balls, [-1, 0]))
print("(4,0) in B0:", in_B0(balls, [4, 0]))

# closed form against alternating projections
A, B = Box([0, 0], [1, 1]), Box([2, 4], [3, 5])
gap, (a, b), its = alternating_separation(A, B)
print("boxes: formula", pair_separation(plane, A, B).separation, "alternating", gap,
      f"({its} iterations)")

# no formula for ball vs halfspace, so alternating projections are used
mixed = pair_separation(plane, Ball([0, 0], 1), Halfspace([1, 0], -3))
print("ball/halfspace:", mixed.separation, mixed.method)

# the resolver maps a point of B0 back to its partner in A0
print("partner of (4,0):", proximal_resolve(balls, [4, 0]))
print(np.round(mixed.witness, 6))
