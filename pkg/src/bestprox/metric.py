"""Metric spaces, points and convergence helpers.

Two concrete families are supported: finite-dimensional p-norm spaces and
finite spaces given by a distance matrix. Euclidean points are 1-D float
arrays, finite-space points are integer indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, MetricError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ConvergenceCriterion:
    """Stopping tolerance (metric units) and iteration cap."""

    eps_stop: float = 1e-8
    max_iter: int = 100_000

    def __post_init__(self):
        if not self.eps_stop > 0:
            raise InvalidInputError("eps_stop must be positive")
        if int(self.max_iter) < 1:
            raise InvalidInputError("max_iter must be at least 1")


@dataclass(frozen=True)
class MetricReport:
    ok: bool
    violation: str | None = None
    indices: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"{self.violation} at {self.indices}: {self.detail}"


def validate_metric(matrix, atol=1e-12) -> MetricReport:
    """Check zero diagonal, symmetry, nonnegativity and the triangle inequality.

    Triangle violations are reported as a triple ``(i, j, k)`` with
    ``d(i, k) > d(i, j) + d(j, k)``; the lexicographically first one wins.
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return MetricReport(False, "shape", M.shape, "matrix must be square")
    if not np.all(np.isfinite(M)):
        bad = tuple(int(v) for v in np.argwhere(~np.isfinite(M))[0])
        return MetricReport(False, "nonfinite", bad, "entries must be finite")
    n = M.shape[0]
    for i in range(n):
        if abs(M[i, i]) > atol:
            return MetricReport(False, "diagonal", (i, i), f"d({i},{i}) = {M[i, i]}")
    neg = np.argwhere(M < -atol)
    if len(neg):
        i, j = (int(v) for v in neg[0])
        return MetricReport(False, "negative", (i, j), f"d({i},{j}) = {M[i, j]}")
    asym = np.argwhere(np.abs(M - M.T) > atol)
    if len(asym):
        i, j = (int(v) for v in asym[0])
        return MetricReport(
            False, "asymmetry", (i, j), f"d({i},{j}) = {M[i, j]} != d({j},{i}) = {M[j, i]}"
        )
    scale = max(1.0, float(M.max(initial=0.0)))
    for i in range(n):
        # excess[j, k] = d(i,k) - d(i,j) - d(j,k)
        excess = M[i][None, :] - M[i][:, None] - M
        hits = np.argwhere(excess > atol * scale)
        if len(hits):
            j, k = (int(v) for v in hits[0])
            return MetricReport(
                False,
                "triangle",
                (i, j, k),
                f"d({i},{k}) = {M[i, k]} > d({i},{j}) + d({j},{k}) = {M[i, j] + M[j, k]}",
            )
    return MetricReport(True)


class MetricSpace:
    """Common interface; see :class:`EuclideanSpace` and :class:`FiniteSpace`."""

    def point(self, x):
        raise NotImplementedError

    def distance(self, x, y) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class EuclideanSpace(MetricSpace):
    dim: int
    p: float = 2.0

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InvalidInputError("dimension must be positive")
        if not self.p >= 1:
            raise InvalidInputError("norm order p must be >= 1")

    def point(self, x) -> np.ndarray:
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        if arr.ndim != 1 or arr.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"expected a point of dimension {self.dim}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("point coordinates must be finite")
        return arr

    def distance(self, x, y) -> float:
        x, y = self.point(x), self.point(y)
        return float(np.linalg.norm(x - y, ord=self.p))

    def norm(self, x) -> float:
        return float(np.linalg.norm(self.point(x), ord=self.p))


@dataclass(frozen=True, eq=False)
class FiniteSpace(MetricSpace):
    """Points ``0..n-1`` with distances read off a validated matrix."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float)
        report = validate_metric(M)
        if not report:
            raise MetricError(report)
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def point(self, x) -> int:
        if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
            raise DimensionMismatchError(f"finite-space points are indices, got {x!r}")
        if not 0 <= int(x) < self.size:
            raise DimensionMismatchError(f"index {x} outside space of size {self.size}")
        return int(x)

    def distance(self, x, y) -> float:
        return float(self.matrix[self.point(x), self.point(y)])

    @classmethod
    def from_file(cls, path) -> "FiniteSpace":
        """Whitespace-separated rows, one per point."""
        return cls(np.loadtxt(path, dtype=float, ndmin=2))


def distance(space: MetricSpace, x, y) -> float:
    return space.distance(x, y)


def is_cauchy_tail(trace, window: int, eps: float, space: MetricSpace | None = None) -> bool:
    """True iff all pairwise distances among the last ``window`` entries are <= eps.

    Without ``space`` the entries are treated as vectors under the 2-norm.
    """
    if window < 2:
        raise InvalidInputError("window must be at least 2")
    if window > len(trace):
        raise InvalidInputError(f"window {window} exceeds trace length {len(trace)}")
    tail = list(trace)[-window:]
    if space is None:
        pts = [np.atleast_1d(np.asarray(t, dtype=float)) for t in tail]
        dist = lambda a, b: float(np.linalg.norm(a - b))
    else:
        dist = space.distance
        pts = tail
    return all(dist(a, b) <= eps for a, b in combinations(pts, 2))
