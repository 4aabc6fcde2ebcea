"""Closed sets in R^n with exact Euclidean projections.

All projections are in the 2-norm. ``FinitePointSet`` is the single
non-convex member: its projection is the nearest listed point, ties going to
the lowest index.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InfeasibleError,
    InvalidInputError,
    NonConvergenceError,
)

DYKSTRA_TOL = 1e-10
DYKSTRA_MAX_SWEEPS = 10_000
# spread of sample windows on unbounded directions
SAMPLE_SCALE = 10.0


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray
    distance: float
    iterations: int = 0


def _vec(x, name="vector"):
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional")
    return arr


class ConvexSet:
    """Base class. Subclasses set ``dim`` and implement ``_project``."""

    kind = "set"
    convex = True
    dim: int

    def _check(self, x) -> np.ndarray:
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        if arr.ndim != 1 or arr.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"{self.kind} lives in dimension {self.dim}, got shape {arr.shape}"
            )
        return arr

    def _project(self, x: np.ndarray) -> tuple[np.ndarray, int]:
        raise NotImplementedError

    def project(self, x) -> ProjectionResult:
        x = self._check(x)
        p, its = self._project(x)
        return ProjectionResult(p, float(np.linalg.norm(x - p)), its)

    def contains(self, x, eps: float = 1e-9) -> bool:
        return self.project(x).distance <= eps

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        raise NotImplementedError

    def sample(self, count: int, seed=None) -> list[np.ndarray]:
        if count < 1:
            raise InvalidInputError("count must be at least 1")
        rng = np.random.default_rng(seed)
        return [np.array(p) for p in self._sample(rng, count)]


class Box(ConvexSet):
    """``{x : lower <= x <= upper}``; infinite bounds allowed."""

    kind = "box"

    def __init__(self, lower, upper):
        self.lower = _vec(lower, "lower")
        self.upper = _vec(upper, "upper")
        if self.lower.shape != self.upper.shape:
            raise DimensionMismatchError("lower and upper must have equal length")
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise InvalidInputError("box bounds must not be NaN")
        if np.any(self.lower > self.upper) or np.any(self.lower == np.inf) or np.any(
            self.upper == -np.inf
        ):
            raise InvalidInputError("box needs lower <= upper with finite feasible range")
        self.dim = self.lower.shape[0]

    @classmethod
    def whole_space(cls, dim: int) -> "Box":
        return cls(np.full(dim, -np.inf), np.full(dim, np.inf))

    def _project(self, x):
        return np.clip(x, self.lower, self.upper), 0

    def contains(self, x, eps=1e-9):
        x = self._check(x)
        return float(np.linalg.norm(x - np.clip(x, self.lower, self.upper))) <= eps

    def _sample(self, rng, count):
        lo, hi = self.lower.copy(), self.upper.copy()
        both = np.isinf(lo) & np.isinf(hi)
        lo[both], hi[both] = -SAMPLE_SCALE, SAMPLE_SCALE
        lo = np.where(np.isinf(lo), hi - SAMPLE_SCALE, lo)
        hi = np.where(np.isinf(hi), lo + SAMPLE_SCALE, hi)
        return rng.uniform(lo, hi, size=(count, self.dim))

    def __repr__(self):
        return f"Box({self.lower.tolist()}, {self.upper.tolist()})"


class Ball(ConvexSet):
    kind = "ball"

    def __init__(self, center, radius):
        self.center = _vec(center, "center")
        self.radius = float(radius)
        if not self.radius >= 0:
            raise InvalidInputError("radius must be nonnegative")
        self.dim = self.center.shape[0]

    def _project(self, x):
        r = x - self.center
        nr = np.linalg.norm(r)
        if nr <= self.radius:
            return x.copy(), 0
        return self.center + (self.radius / nr) * r, 0

    def _sample(self, rng, count):
        g = rng.standard_normal((count, self.dim))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        rad = self.radius * rng.uniform(size=(count, 1)) ** (1.0 / self.dim)
        return self.center + rad * g

    def __repr__(self):
        return f"Ball({self.center.tolist()}, {self.radius})"


class Hyperplane(ConvexSet):
    """``{x : <a, x> = b}``."""

    kind = "hyperplane"

    def __init__(self, normal, offset):
        self.normal = _vec(normal, "normal")
        self.offset = float(offset)
        self._nn = float(self.normal @ self.normal)
        if self._nn == 0:
            raise InvalidInputError("normal must be nonzero")
        self.dim = self.normal.shape[0]

    def _project(self, x):
        return x - ((self.normal @ x - self.offset) / self._nn) * self.normal, 0

    def foot(self) -> np.ndarray:
        """Point of the set closest to the origin."""
        return (self.offset / self._nn) * self.normal

    def _sample(self, rng, count):
        g = self.foot() + SAMPLE_SCALE * rng.standard_normal((count, self.dim))
        return np.array([self._project(p)[0] for p in g])

    def __repr__(self):
        return f"Hyperplane({self.normal.tolist()}, {self.offset})"


class Halfspace(Hyperplane):
    """``{x : <a, x> <= b}``."""

    kind = "halfspace"

    def _project(self, x):
        viol = self.normal @ x - self.offset
        if viol <= 0:
            return x.copy(), 0
        return x - (viol / self._nn) * self.normal, 0

    def contains(self, x, eps=1e-9):
        x = self._check(x)
        return max(0.0, float(self.normal @ x - self.offset)) / np.sqrt(self._nn) <= eps

    def _sample(self, rng, count):
        g = self.foot() + SAMPLE_SCALE * rng.standard_normal((count, self.dim))
        viol = np.maximum(g @ self.normal - self.offset, 0.0)
        # reflect violators through the boundary
        return g - 2.0 * (viol / self._nn)[:, None] * self.normal

    def __repr__(self):
        return f"Halfspace({self.normal.tolist()}, {self.offset})"


class AffineSet(ConvexSet):
    """``{x : A x = c}``, projected through the pseudoinverse."""

    kind = "affine"

    def __init__(self, matrix, rhs, tol=1e-9):
        self.matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        self.rhs = _vec(rhs, "rhs")
        if self.matrix.shape[0] != self.rhs.shape[0]:
            raise DimensionMismatchError("matrix rows must match rhs length")
        self.dim = self.matrix.shape[1]
        self._pinv = np.linalg.pinv(self.matrix)
        self.anchor = self._pinv @ self.rhs
        resid = np.linalg.norm(self.matrix @ self.anchor - self.rhs)
        if resid > tol * max(1.0, np.linalg.norm(self.rhs)):
            raise InfeasibleError(f"A x = c is inconsistent (residual {resid:.3g})")

    def _project(self, x):
        return x - self._pinv @ (self.matrix @ x - self.rhs), 0

    def _sample(self, rng, count):
        g = self.anchor + SAMPLE_SCALE * rng.standard_normal((count, self.dim))
        return np.array([self._project(p)[0] for p in g])

    def __repr__(self):
        return f"AffineSet({self.matrix.tolist()}, {self.rhs.tolist()})"


def project_simplex(v, scale: float = 1.0) -> np.ndarray:
    """Euclidean projection onto ``{x >= 0, sum(x) = scale}`` by sort and threshold."""
    v = _vec(v)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    j = np.arange(1, v.shape[0] + 1)
    thresholds = (css - scale) / j
    rho = np.nonzero(u - thresholds > 0)[0][-1]
    return np.maximum(v - thresholds[rho], 0.0)


class Simplex(ConvexSet):
    kind = "simplex"

    def __init__(self, dim: int, scale: float = 1.0):
        self.dim = int(dim)
        self.scale = float(scale)
        if self.dim < 1:
            raise InvalidInputError("dimension must be positive")
        if not self.scale > 0:
            raise InvalidInputError("simplex scale must be positive")

    def _project(self, x):
        return project_simplex(x, self.scale), 0

    def _sample(self, rng, count):
        return self.scale * rng.dirichlet(np.ones(self.dim), size=count)

    def __repr__(self):
        return f"Simplex({self.dim}, {self.scale})"


class FinitePointSet(ConvexSet):
    """A finite list of points. Not convex; projection is by enumeration."""

    kind = "points"
    convex = False

    def __init__(self, points):
        self.points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.points.shape[0] == 0:
            raise InvalidInputError("point set must be nonempty")
        self.dim = self.points.shape[1]

    def nearest_index(self, x) -> int:
        x = self._check(x)
        return int(np.argmin(np.linalg.norm(self.points - x, axis=1)))

    def _project(self, x):
        return self.points[self.nearest_index(x)].copy(), 0

    def sample(self, count, seed=None):
        # deterministic cycle; seed is irrelevant
        if count < 1:
            raise InvalidInputError("count must be at least 1")
        m = self.points.shape[0]
        return [self.points[i % m].copy() for i in range(count)]

    def __repr__(self):
        return f"FinitePointSet({self.points.tolist()})"


class Intersection(ConvexSet):
    """Intersection of convex sets, projected with Dykstra's algorithm."""

    kind = "intersection"

    def __init__(self, sets, tol=DYKSTRA_TOL, max_sweeps=DYKSTRA_MAX_SWEEPS, feas_tol=1e-6):
        self.sets = list(sets)
        if not self.sets:
            raise InvalidInputError("intersection needs at least one set")
        dims = {s.dim for s in self.sets}
        if len(dims) != 1:
            raise DimensionMismatchError(f"member dimensions differ: {sorted(dims)}")
        if not all(s.convex for s in self.sets):
            raise InvalidInputError("intersection members must be convex")
        self.dim = dims.pop()
        self.tol = tol
        self.max_sweeps = max_sweeps
        self.feas_tol = feas_tol
        self._feasible = False

    def _check_feasible(self, x):
        """Cyclic projections settle at a positive gap exactly when the sets miss each other."""
        if self._feasible:
            return
        y = x.copy()
        for _ in range(DYKSTRA_MAX_SWEEPS):
            prev = y
            for s in self.sets:
                y = s._project(y)[0]
            if np.linalg.norm(y - prev) <= 1e-13 * (1.0 + np.linalg.norm(y)):
                break
        else:
            # never settled: no verdict here, Dykstra reports on its own
            return
        scale = 1.0 + np.linalg.norm(y)
        gap = max(np.linalg.norm(y - s._project(y)[0]) for s in self.sets)
        if gap > self.feas_tol * scale:
            raise InfeasibleError(f"cyclic projections stall {gap:.3g} away: intersection is empty")
        self._feasible = True

    def _project(self, x):
        sets = self.sets
        if len(sets) == 1:
            return sets[0]._project(x)
        self._check_feasible(x)
        incr = [np.zeros_like(x) for _ in sets]
        y = x.copy()
        scale = 1.0 + np.linalg.norm(x)
        prev = None
        for sweep in range(1, self.max_sweeps + 1):
            # iterates can sit still for whole sweeps while increments still
            # move, so convergence compares every intermediate point and increment
            inter = []
            for i, s in enumerate(sets):
                z = y + incr[i]
                y = s._project(z)[0]
                incr[i] = z - y
                inter += [y, incr[i]]
            if max(np.linalg.norm(p) for p in incr) > 1e12 * scale:
                raise InfeasibleError("Dykstra increments diverge: intersection is empty")
            moved = np.inf if prev is None else max(
                np.linalg.norm(a - b) for a, b in zip(inter, prev))
            prev = inter
            if moved <= self.tol:
                return y, sweep
        raise NonConvergenceError(
            f"Dykstra did not converge in {self.max_sweeps} sweeps", best=y
        )

    def contains(self, x, eps=1e-9):
        return all(s.contains(x, eps) for s in self.sets)

    def _sample(self, rng, count):
        out = []
        for s in self.sets:
            for p in s._sample(rng, count):
                if len(out) < count and self.contains(p):
                    out.append(p)
        while len(out) < count:
            seed_pt = self.sets[0]._sample(rng, 1)[0]
            out.append(self._project(seed_pt)[0])
        return np.array(out)

    def __repr__(self):
        return f"Intersection({self.sets!r})"


def contains(s: ConvexSet, x, eps: float = 1e-9) -> bool:
    return s.contains(x, eps)


def project(s: ConvexSet, x) -> ProjectionResult:
    return s.project(x)


def support_sample(s: ConvexSet, count: int, seed=None) -> list[np.ndarray]:
    return s.sample(count, seed)
