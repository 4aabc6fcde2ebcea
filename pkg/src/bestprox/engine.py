"""Best proximity points by T-proximal iteration.

Starting from x0 in A0, each step picks x_{n+1} in A with
d(x_{n+1}, T x_n) = d(A, B) (via :func:`proximal_resolve`). For a proximal
contraction with constant k the steps shrink geometrically, which gives the
a-priori bound ``k**m / (1 - k) * d(x0, x1)`` and the a-posteriori bound
``k / (1 - k) * d(x_{n-1}, x_n)`` on the distance to the limit.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    DivergenceError,
    HypothesisViolation,
    InsufficientSamplesError,
    InvalidConstantError,
    NonConvergenceError,
    NotAContractionError,
    ResolutionFailure,
    UnsupportedConfigurationError,
)
from .metric import ConvergenceCriterion, FiniteSpace
from .pairs import ProximalPair, enumerate_A0_finite, in_A0, in_B0, proximal_resolve

log = logging.getLogger(__name__)

RATIO_WINDOW = 20
STALL_WINDOW = 50
K_CLAMP = 1 - 1e-6
MIN_PAIR_DIST = 1e-10


def _check_k(k):
    if k is not None and not 0 <= k < 1:
        raise InvalidConstantError(f"contraction constant must lie in [0, 1), got {k}")


@dataclass(frozen=True, eq=False)
class ProximalMap:
    """A map T: A -> B together with its pair and an optional declared k."""

    pair: ProximalPair
    func: Callable
    k: float | None = None
    eps: float | None = None

    def __post_init__(self):
        _check_k(self.k)
        if self.eps is None:
            object.__setattr__(self, "eps", self.pair.eps)

    def __call__(self, x):
        return self.func(x)

    @classmethod
    def affine(cls, pair, M, t, k=None, eps=None):
        """T(x) = M x + t."""
        M = np.atleast_2d(np.asarray(M, dtype=float))
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return cls(pair, lambda x: M @ x + t, k, eps)

    @classmethod
    def table(cls, pair, table, k=None, eps=None):
        """Finite-space map given as ``table[i] = T(i)``."""
        tab = list(table)

        def T(i):
            j = tab[i]
            if j is None:
                raise HypothesisViolation(f"T is undefined at point {i}", point=i)
            return int(j)

        return cls(pair, T, k, eps)

    def check_range(self, points) -> list:
        """Points of A0 among ``points`` whose image misses B0."""
        return [x for x in points if in_A0(self.pair, x, self.eps)
                and not in_B0(self.pair, self(x), self.eps)]


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """Record of a T-proximal sequence x_0..x_N.

    ``steps[n] = d(x_n, x_{n+1})`` and ``residuals[n] = |d(x_{n+1}, T x_n) - d(A,B)|``.
    ``k_used[n]`` is the constant behind ``aposteriori[n]`` (declared or running estimate).
    """

    space: object
    points: tuple
    steps: tuple
    residuals: tuple
    k_used: tuple
    declared_k: float | None = None

    def __len__(self):
        return len(self.points)

    @property
    def apriori(self) -> tuple:
        """k**n / (1 - k) * d(x0, x1) for each point, when k was declared."""
        if self.declared_k is None or not self.steps:
            return ()
        k, d01 = self.declared_k, self.steps[0]
        return tuple(k**n / (1 - k) * d01 for n in range(len(self.points)))

    @property
    def aposteriori(self) -> tuple:
        """k / (1 - k) * d(x_{n-1}, x_n) for n >= 1."""
        return tuple(
            None if k is None else k / (1 - k) * s for k, s in zip(self.k_used, self.steps)
        )


@dataclass(frozen=True, eq=False)
class BppResult:
    point: object
    final_gap: float
    iterations: int
    k_used: float | None
    k_source: str
    aposteriori_bound: float | None
    apriori_bound: float | None
    warnings: tuple = ()

    def certificate(self) -> dict:
        pt = self.point if isinstance(self.point, int) else [float(v) for v in self.point]
        return {
            "point": pt,
            "final_gap": self.final_gap,
            "iterations": self.iterations,
            "k_used": self.k_used,
            "bounds": {
                "k_source": self.k_source,
                "aposteriori": self.aposteriori_bound,
                "apriori": self.apriori_bound,
            },
            "warnings": list(self.warnings),
        }


def _running_k(steps) -> float | None:
    ratios = [b / a for a, b in zip(steps[-RATIO_WINDOW - 1:-1], steps[-RATIO_WINDOW:]) if a > 0]
    if not ratios:
        return None
    return min(max(ratios), K_CLAMP)


def _stalled(steps) -> bool:
    if len(steps) < STALL_WINDOW:
        return False
    window = steps[-STALL_WINDOW:]
    return all(a > 0 and b >= a for a, b in zip(window, window[1:]))


def iterate(pmap: ProximalMap, x0, criterion: ConvergenceCriterion | None = None,
            divergence_norm: float | None = None):
    """Run the T-proximal iteration from ``x0``; return ``(trace, result)``.

    Stops when ``k / (1 - k) * step <= eps_stop`` with the declared k, or,
    without one, when both the step and the bound under the running
    estimate of k are below ``eps_stop``.
    """
    crit = criterion or ConvergenceCriterion()
    pair, eps, space = pmap.pair, pmap.eps, pmap.pair.space
    x = space.point(x0)
    if not in_A0(pair, x, eps):
        raise HypothesisViolation("starting point is not in A0", iterate=0, point=x)
    k_decl = pmap.k

    points, steps, residuals, ks = [x], [], [], []

    def snapshot():
        return IterationTrace(space, tuple(points), tuple(steps), tuple(residuals),
                              tuple(ks), k_decl)

    for n in range(crit.max_iter):
        y = pmap(x)
        try:
            x_next = proximal_resolve(pair, y, eps)
        except ResolutionFailure as exc:
            exc.iterate, exc.trace = n, snapshot()
            raise
        step = space.distance(x, x_next)
        points.append(x_next)
        steps.append(step)
        residuals.append(abs(space.distance(x_next, y) - pair.separation))
        k = k_decl if k_decl is not None else _running_k(steps)
        ks.append(k)

        if divergence_norm is not None and space.norm(x_next) > divergence_norm:
            raise DivergenceError(
                f"iterate norm exceeded {divergence_norm:g} at step {n + 1}",
                best=x_next, trace=snapshot())
        if _stalled(steps):
            raise NotAContractionError(
                f"step ratio >= 1 over the last {STALL_WINDOW} steps (ending at step {n + 1})",
                best=x_next, trace=snapshot())

        if k_decl is not None:
            done = k_decl / (1 - k_decl) * step <= crit.eps_stop
        else:
            done = step <= crit.eps_stop and (k is None or k / (1 - k) * step <= crit.eps_stop)
        x = x_next
        if done:
            break
    else:
        raise NonConvergenceError(
            f"no convergence within {crit.max_iter} iterations", best=x, trace=snapshot())

    trace = snapshot()
    gap = abs(space.distance(x, pmap(x)) - pair.separation)
    if gap > eps:
        raise NonConvergenceError(
            f"limit fails the best proximity test: |d(x, Tx) - d(A,B)| = {gap:.3g}",
            best=x, trace=trace)

    warnings = []
    k_final = ks[-1]
    if k_decl is None:
        warnings.append("contraction constant not declared; bounds use a running estimate "
                        "of k and are not certificates")
    else:
        bad = [i for i in range(len(steps) - 1) if steps[i + 1] > k_decl * steps[i] + eps]
        if bad:
            warnings.append(f"declared k violated at steps {bad[:5]}")
    n_it = len(steps)
    result = BppResult(
        point=x,
        final_gap=gap,
        iterations=n_it,
        k_used=k_final,
        k_source="declared" if k_decl is not None else "estimated",
        aposteriori_bound=None if k_final is None else k_final / (1 - k_final) * steps[-1],
        apriori_bound=None if k_decl is None else k_decl**n_it / (1 - k_decl) * steps[0],
        warnings=tuple(warnings),
    )
    return trace, result


def brute_force_bpp(pmap: ProximalMap) -> list[int]:
    """All x in A with |d(x, Tx) - d(A,B)| <= eps, by enumeration (finite spaces)."""
    pair = pmap.pair
    if not pair.is_finite:
        raise UnsupportedConfigurationError("brute force needs a finite space")
    out = []
    for x in pair.A:
        try:
            tx = pmap(x)
        except HypothesisViolation:
            continue
        if abs(pair.space.distance(x, tx) - pair.separation) <= pmap.eps:
            out.append(x)
    return out


def exact_contraction_constant(pmap: ProximalMap) -> float:
    """Smallest k in the proximal contraction inequality, over all of A (finite spaces).

    Every admissible choice of u, v is considered, not just the resolver's.
    Returns ``inf`` when some image has two distinct proximal partners.
    """
    pair = pmap.pair
    if not pair.is_finite:
        raise UnsupportedConfigurationError("exact constant needs a finite space")
    M, sep, eps = pair.space.matrix, pair.separation, pmap.eps
    partners = {}
    for x in pair.A:
        tx = pmap(x)
        partners[x] = [u for u in pair.A if abs(M[u, tx] - sep) <= eps]
    k = 0.0
    for x, y in itertools.product(pair.A, repeat=2):
        for u in partners[x]:
            for v in partners[y]:
                duv = M[u, v]
                if duv <= MIN_PAIR_DIST:
                    continue
                dxy = M[x, y]
                if dxy <= MIN_PAIR_DIST:
                    return float("inf")
                k = max(k, duv / dxy)
    return k


@dataclass(frozen=True)
class ContractionEstimate:
    """Sampled lower bound on the proximal contraction constant."""

    k_hat: float
    sample_count: int
    worst_pair: tuple | None
    admissible: bool
    exhaustive: bool = False


def _distinct(space, pts):
    out = []
    for p in pts:
        if all(space.distance(p, q) > MIN_PAIR_DIST for q in out):
            out.append(p)
    return out


def estimate_k(pmap: ProximalMap, samples: int = 200, seed=0) -> ContractionEstimate:
    """Max of d(u, v) / d(x, y) over sampled x, y in A0 with u, v their resolvents.

    Finite spaces are enumerated exhaustively. Euclidean candidates come from
    samples of A and from projections of samples of B onto A, filtered by A0
    membership.
    """
    if samples < 2:
        raise InsufficientSamplesError("need at least 2 samples")
    pair, space, eps = pmap.pair, pmap.pair.space, pmap.eps
    if pair.is_finite:
        cands = enumerate_A0_finite(pair, eps)
        exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        s1, s2 = (int(v) for v in rng.integers(0, 2**31, size=2))
        raw = list(pair.A.sample(samples, s1))
        raw += [pair.A.project(b).point for b in pair.B.sample(samples, s2)]
        cands = [p for p in raw if in_A0(pair, p, eps)]
        cands = _distinct(space, cands)[:samples]
        exhaustive = False
    if len(cands) < 2:
        raise InsufficientSamplesError(f"found only {len(cands)} distinct A0 sample(s)")
    images = [proximal_resolve(pair, pmap(x), eps) for x in cands]
    k_hat, worst = 0.0, None
    for i, j in itertools.combinations(range(len(cands)), 2):
        dxy = space.distance(cands[i], cands[j])
        if dxy <= MIN_PAIR_DIST:
            continue
        r = space.distance(images[i], images[j]) / dxy
        if worst is None or r > k_hat:
            k_hat, worst = r, (cands[i], cands[j])
    return ContractionEstimate(k_hat, len(cands), worst, k_hat < 1 - 1e-6, exhaustive)


@dataclass(frozen=True, eq=False)
class UniquenessReport:
    unique: bool
    spread: float
    results: tuple = field(repr=False)


def verify_uniqueness(pmap: ProximalMap, starts, criterion: ConvergenceCriterion | None = None,
                      **kw) -> UniquenessReport:
    """Iterate from every start; ``unique`` iff the limits lie within 10 * eps_stop."""
    crit = criterion or ConvergenceCriterion()
    results = []
    for i, x0 in enumerate(starts):
        try:
            results.append(iterate(pmap, x0, crit, **kw)[1])
        except Exception as exc:
            exc.start_index = i
            raise
    space = pmap.pair.space
    spread = max(
        (space.distance(a.point, b.point) for a, b in itertools.combinations(results, 2)),
        default=0.0,
    )
    return UniquenessReport(spread <= 10 * crit.eps_stop, spread, tuple(results))


@dataclass(frozen=True)
class BoundReport:
    k: float
    checked: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def _pairwise(space, points):
    if isinstance(space, FiniteSpace):
        idx = list(points)
        return space.matrix[np.ix_(idx, idx)]
    P = np.array(points)
    return np.linalg.norm(P[:, None, :] - P[None, :, :], ord=space.p, axis=2)


def check_bound_ledger(trace: IterationTrace, k: float, tol: float = 1e-10) -> BoundReport:
    """Check the Cauchy estimate and the geometric step estimate on a trace.

    For all m < n: d(x_m, x_n) <= k**m / (1 - k) * d(x_0, x_1) + tol, and
    d(x_{n+1}, x_{n+2}) <= k**(n+1) * d(x_0, x_1) + tol. Violations come back
    as ``(kind, m, n, lhs, rhs)``.
    """
    if not 0 <= k < 1:
        raise InvalidConstantError(f"k must lie in [0, 1), got {k}")
    pts = trace.points
    if len(pts) < 2:
        return BoundReport(k, 0, ())
    D = _pairwise(trace.space, pts)
    d01 = D[0, 1]
    viol, checked = [], 0
    for m in range(len(pts) - 1):
        rhs = k**m / (1 - k) * d01 + tol
        for n in range(m + 1, len(pts)):
            checked += 1
            if D[m, n] > rhs:
                viol.append(("cauchy", m, n, float(D[m, n]), rhs))
    for n in range(len(pts) - 2):
        rhs = k ** (n + 1) * d01 + tol
        checked += 1
        if D[n + 1, n + 2] > rhs:
            viol.append(("step", n + 1, n + 2, float(D[n + 1, n + 2]), rhs))
    return BoundReport(k, checked, tuple(viol))
