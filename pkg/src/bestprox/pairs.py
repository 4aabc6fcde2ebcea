"""Geometry of a pair (A, B): separation d(A,B), proximal subsets A0/B0,
and the resolver that turns a point of B0 into its partner in A0.

In Euclidean spaces A and B are :class:`~bestprox.sets.ConvexSet` objects
and everything is computed with 2-norm projections, so only ``p = 2`` is
accepted unless both sides are finite point lists. In finite spaces A and B
are index subsets and everything is enumerated.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    NonConvergenceError,
    ResolutionFailure,
    UnsupportedConfigurationError,
)
from .metric import EuclideanSpace, FiniteSpace, MetricSpace
from .sets import Ball, Box, ConvexSet, FinitePointSet, Hyperplane

DEFAULT_EPS = 1e-8
ALT_GAP_TOL = 1e-12
ALT_MAX_ITER = 10_000


@dataclass(frozen=True, eq=False)
class ProximalPair:
    """Immutable pair with cached separation and a witness (a*, b*)."""

    space: MetricSpace
    A: object
    B: object
    separation: float
    witness: tuple
    method: str
    eps: float = DEFAULT_EPS

    @property
    def is_finite(self) -> bool:
        return isinstance(self.space, FiniteSpace)


def _index_set(space: FiniteSpace, S) -> tuple[int, ...]:
    if isinstance(S, ConvexSet):
        raise DimensionMismatchError("finite spaces take index subsets, not geometric sets")
    idx = sorted({space.point(i) for i in S})
    if not idx:
        raise InvalidInputError("subset must be nonempty")
    return tuple(idx)


def _check_euclidean(space: EuclideanSpace, *sets):
    for S in sets:
        if not isinstance(S, ConvexSet):
            raise DimensionMismatchError("Euclidean spaces take ConvexSet objects")
        if S.dim != space.dim:
            raise DimensionMismatchError(f"set dimension {S.dim} != space dimension {space.dim}")
    if space.p != 2 and not all(isinstance(S, FinitePointSet) for S in sets):
        raise UnsupportedConfigurationError(
            f"proximal geometry with convex sets needs p = 2 (got p = {space.p})"
        )


def point_set_distance(space: MetricSpace, x, S):
    """Return ``(d(x, S), nearest point of S)``."""
    if isinstance(space, FiniteSpace):
        x = space.point(x)
        idx = _index_set(space, S)
        row = space.matrix[x, list(idx)]
        j = int(np.argmin(row))
        return float(row[j]), idx[j]
    x = space.point(x)
    if isinstance(S, FinitePointSet) and isinstance(S, ConvexSet):
        if S.dim != space.dim:
            raise DimensionMismatchError("set and space dimensions differ")
        d = np.linalg.norm(S.points - x, ord=space.p, axis=1)
        j = int(np.argmin(d))
        return float(d[j]), S.points[j].copy()
    _check_euclidean(space, S)
    res = S.project(x)
    return res.distance, res.point


def self_pair(space: MetricSpace, K, eps: float = DEFAULT_EPS) -> ProximalPair:
    """The pair (K, K): separation zero, every point proximal."""
    if isinstance(space, FiniteSpace):
        idx = _index_set(space, K)
        return ProximalPair(space, idx, idx, 0.0, (idx[0], idx[0]), "identical", eps)
    _check_euclidean(space, K)
    w = K.project(np.zeros(space.dim)).point
    return ProximalPair(space, K, K, 0.0, (w, w.copy()), "identical", eps)


def _parallel(a1, a2) -> bool:
    return abs(abs(a1 @ a2) - np.linalg.norm(a1) * np.linalg.norm(a2)) <= 1e-12 * (
        np.linalg.norm(a1) * np.linalg.norm(a2)
    )


def _closed_form(A, B):
    """Separation and witness for the kinds with a formula, else None."""
    ta, tb = type(A), type(B)
    if ta is Hyperplane and tb is Hyperplane:
        if _parallel(A.normal, B.normal):
            alpha = (B.normal @ A.normal) / A._nn
            sep = abs(A.offset - B.offset / alpha) / np.sqrt(A._nn)
            a = A.foot()
            return float(sep), (a, B.project(a).point)
        # nonparallel hyperplanes meet
        M = np.vstack([A.normal, B.normal])
        w = np.linalg.lstsq(M, np.array([A.offset, B.offset]), rcond=None)[0]
        return 0.0, (w, w.copy())
    if ta is Ball and tb is Ball:
        c = B.center - A.center
        nc = float(np.linalg.norm(c))
        sep = max(0.0, nc - A.radius - B.radius)
        u = c / nc if nc > 0 else np.zeros_like(c)
        if sep > 0:
            return sep, (A.center + A.radius * u, B.center - B.radius * u)
        w = A.center + max(0.0, nc - B.radius) * u
        return 0.0, (w, w.copy())
    if ta is Box and tb is Box:
        a = np.empty(A.dim)
        b = np.empty(A.dim)
        for i in range(A.dim):
            if A.upper[i] < B.lower[i]:
                a[i], b[i] = A.upper[i], B.lower[i]
            elif B.upper[i] < A.lower[i]:
                a[i], b[i] = A.lower[i], B.upper[i]
            else:
                lo = max(A.lower[i], B.lower[i])
                hi = min(A.upper[i], B.upper[i])
                v = lo if np.isfinite(lo) else (hi if np.isfinite(hi) else 0.0)
                a[i] = b[i] = v
        gaps = np.maximum(0.0, np.maximum(B.lower - A.upper, A.lower - B.upper))
        return float(np.sqrt(np.sum(gaps**2))), (a, b)
    return None


def alternating_separation(A: ConvexSet, B: ConvexSet, start=None,
                           gap_tol=ALT_GAP_TOL, max_iter=ALT_MAX_ITER):
    """Alternating projections a <- P_A(P_B(a)); returns (gap, (a, b), iterations).

    Stops once successive gaps differ by at most ``gap_tol``. The gap sequence
    is nonincreasing, so the last gap is also the best one.
    """
    a = A.project(np.zeros(A.dim) if start is None else start).point
    b = B.project(a).point
    gap = float(np.linalg.norm(a - b))
    best = (gap, (a, b))
    for k in range(1, max_iter + 1):
        a = A.project(b).point
        b = B.project(a).point
        new_gap = float(np.linalg.norm(a - b))
        if new_gap < best[0]:
            best = (new_gap, (a, b))
        if abs(gap - new_gap) <= gap_tol:
            return best[0], best[1], k
        gap = new_gap
    raise NonConvergenceError(
        f"alternating projections did not stabilise in {max_iter} iterations",
        best=best[1],
        bracket=(0.0, best[0]),
    )


def pair_separation(space: MetricSpace, A, B, eps: float = DEFAULT_EPS,
                    method: str = "auto", max_iter: int = ALT_MAX_ITER) -> ProximalPair:
    """Compute d(A,B) with a witness pair.

    ``method`` is ``"auto"`` (closed form when available), ``"closed-form"``,
    ``"alternating"`` or ``"exhaustive"``.
    """
    if isinstance(space, FiniteSpace):
        ia, ib = _index_set(space, A), _index_set(space, B)
        sub = space.matrix[np.ix_(ia, ib)]
        i, j = np.unravel_index(int(np.argmin(sub)), sub.shape)
        return ProximalPair(space, ia, ib, float(sub[i, j]), (ia[i], ib[j]), "exhaustive", eps)

    _check_euclidean(space, A, B)
    if method == "auto" and A is B:
        return self_pair(space, A, eps)

    if method in ("auto", "exhaustive") and (
        isinstance(A, FinitePointSet) or isinstance(B, FinitePointSet)
    ):
        flip = not isinstance(A, FinitePointSet)
        P, Q = (B, A) if flip else (A, B)
        best = None
        for p in P.points:
            d, q = point_set_distance(space, p, Q)
            if best is None or d < best[0]:
                best = (d, p.copy(), q)
        d, p, q = best
        wit = (q, p) if flip else (p, q)
        return ProximalPair(space, A, B, float(d), wit, "exhaustive", eps)
    if method == "exhaustive":
        raise InvalidInputError("exhaustive separation needs a finite point set")

    if method in ("auto", "closed-form"):
        cf = _closed_form(A, B)
        if cf is None:
            cf_rev = _closed_form(B, A)
            if cf_rev is not None:
                cf = (cf_rev[0], cf_rev[1][::-1])
        if cf is not None:
            return ProximalPair(space, A, B, cf[0], cf[1], "closed-form", eps)
        if method == "closed-form":
            raise InvalidInputError(f"no closed form for {A.kind} / {B.kind}")
    elif method != "alternating":
        raise InvalidInputError(f"unknown separation method {method!r}")

    gap, wit, _ = alternating_separation(A, B, max_iter=max_iter)
    return ProximalPair(space, A, B, gap, wit, "alternating-projections", eps)


def _in_side(pair: ProximalPair, x, own, other, eps) -> bool:
    eps = pair.eps if eps is None else eps
    if pair.is_finite:
        x = pair.space.point(x)
        if x not in own:
            return False
    elif not own.contains(x, eps):
        return False
    return point_set_distance(pair.space, x, other)[0] <= pair.separation + eps


def in_A0(pair: ProximalPair, x, eps: float | None = None) -> bool:
    """x in A and d(x, B) = d(A, B) within eps."""
    return _in_side(pair, x, pair.A, pair.B, eps)


def in_B0(pair: ProximalPair, y, eps: float | None = None) -> bool:
    return _in_side(pair, y, pair.B, pair.A, eps)


def proximal_resolve(pair: ProximalPair, y, eps: float | None = None):
    """Return the point u of A with d(u, y) = d(A, B).

    Convex A: u is the projection of y onto A. Finite spaces: the nearest
    index of A, lowest index on ties. Raises :class:`ResolutionFailure`
    when y is not in B0, i.e. no such u exists.
    """
    eps = pair.eps if eps is None else eps
    if pair.is_finite:
        y = pair.space.point(y)
        if y not in pair.B:
            raise ResolutionFailure(f"T(x) = {y} is not in B", point=y)
    else:
        y = pair.space.point(y)
        if not pair.B.contains(y, eps):
            raise ResolutionFailure(f"T(x) = {y.tolist()} is not in B", point=y)
    d, u = point_set_distance(pair.space, y, pair.A)
    if abs(d - pair.separation) > eps:
        shown = y if pair.is_finite else y.tolist()
        raise ResolutionFailure(
            f"T(x) = {shown} is not in B0: d(T(x), A) = {d!r} but d(A,B) = {pair.separation!r}",
            point=y,
        )
    return u


def _enumerate(pair: ProximalPair, own, other, eps) -> list[int]:
    if not pair.is_finite:
        raise UnsupportedConfigurationError("enumeration of proximal subsets needs a finite space")
    eps = pair.eps if eps is None else eps
    sub = pair.space.matrix[np.ix_(own, other)]
    return [own[i] for i in np.nonzero(sub.min(axis=1) <= pair.separation + eps)[0]]


def enumerate_A0_finite(pair: ProximalPair, eps: float | None = None) -> list[int]:
    return _enumerate(pair, pair.A, pair.B, eps)


def enumerate_B0_finite(pair: ProximalPair, eps: float | None = None) -> list[int]:
    return _enumerate(pair, pair.B, pair.A, eps)
