"""
When the hypotheses fail
========================

The iteration checks its own assumptions. A map sending A0 outside B0 has
no proximal partner to move to; a map that expands distances is caught by
its step ratios; both come back with the trace gathered so far.
"""
from bestprox import (Ball, EuclideanSpace, Hyperplane, NotAContractionError, ProximalMap,
                      ResolutionFailure, check_bound_ledger, iterate, pair_separation)

plane = EuclideanSpace(2)

# T(x) = (5, 1) lies in B but not in B0 = {(4, 0)}
balls = pair_separation(plane, Ball([0, 0], 1), Ball([5, 0], 1))
try:
    iterate(ProximalMap.affine(balls, [[0, 0], [0, 0]], [5, 1]), [1, 0])
except ResolutionFailure as exc:
    print("resolution failure at iteration", exc.iterate, ":", exc)

# T(x, 0) = (2x, 1) doubles every step
lines = pair_separation(plane, Hyperplane([0, 1], 0), Hyperplane([0, 1], 1))
try:
    iterate(ProximalMap.affine(lines, [[2, 0], [0, 0]], [0, 1]), [1, 0])
except NotAContractionError as exc:
    print("not a contraction:", exc)
    # claiming k = 0.5 for this trace breaks the Cauchy bound right away
    rep = check_bound_ledger(exc.trace, 0.5)
    print("first violations:", rep.violations[:2])
