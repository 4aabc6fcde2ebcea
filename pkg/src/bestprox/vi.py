"""Variational inequalities: find u in K with <S u, v - u> >= 0 for all v in K.

Solved as the fixed point of T(u) = P_K(u - lam * S u), run through the
T-proximal engine on the self-pair (K, K). For S strongly monotone with
modulus eta and Lipschitz with constant L,

    ||(I - lam S) u - (I - lam S) v||^2 <= (1 - 2 lam eta + lam^2 L^2) ||u - v||^2,

minimised at lam = eta / L^2 where the factor is sqrt(1 - eta^2 / L^2).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .engine import IterationTrace, ProximalMap, iterate
from .errors import CannotCertifyError, InvalidInputError
from .metric import ConvergenceCriterion, EuclideanSpace
from .pairs import DEFAULT_EPS, self_pair
from .sets import ConvexSet

DIVERGENCE_NORM = 1e12


def spectral_norm(M, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Largest singular value of M by power iteration on M^T M."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    G = M.T @ M
    v = np.ones(G.shape[0]) / np.sqrt(G.shape[0])
    # a fixed non-symmetric start avoids being orthogonal to the top eigenvector
    v = v + 1e-3 * np.arange(1, G.shape[0] + 1)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = G @ v
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v_new = w / nw
        lam_new = float(v_new @ G @ v_new)
        if abs(lam_new - lam) <= tol * max(1.0, lam_new):
            lam = lam_new
            break
        v, lam = v_new, lam_new
    return float(np.sqrt(max(lam, 0.0)))


class Operator:
    """S: R^n -> R^n with optional Lipschitz constant ``L`` and monotonicity modulus ``eta``.

    ``certified`` says whether L and eta are exact (given or computed) rather
    than sampled estimates.
    """

    def __init__(self, func: Callable, dim: int, L=None, eta=None, certified=True):
        self.func = func
        self.dim = int(dim)
        if L is not None and not L > 0:
            raise InvalidInputError("Lipschitz constant must be positive")
        if eta is not None and L is not None and eta > L * (1 + 1e-12):
            raise InvalidInputError("monotonicity modulus cannot exceed the Lipschitz constant")
        self.L = L
        self.eta = eta
        self.certified = certified

    def __call__(self, u):
        return np.asarray(self.func(u), dtype=float)

    def estimate_constants(self, K: ConvexSet, samples: int = 200, seed=0):
        """Difference-quotient estimates of (L, eta) over samples of K; never certified."""
        pts = np.array(K.sample(samples, seed))
        vals = np.array([self(p) for p in pts])
        L_hat, eta_hat = 0.0, np.inf
        for i in range(len(pts)):
            du = pts[i + 1:] - pts[i]
            ds = vals[i + 1:] - vals[i]
            nn = np.sum(du * du, axis=1)
            keep = nn > 1e-20
            if not keep.any():
                continue
            L_hat = max(L_hat, float(np.max(np.linalg.norm(ds[keep], axis=1) / np.sqrt(nn[keep]))))
            eta_hat = min(eta_hat, float(np.min(np.sum(ds[keep] * du[keep], axis=1) / nn[keep])))
        return L_hat, (eta_hat if np.isfinite(eta_hat) else None)


class AffineOperator(Operator):
    """S(u) = M u + b. L defaults to ||M||_2, eta to lambda_min((M + M^T)/2) when positive."""

    def __init__(self, M, b, L=None, eta=None):
        self.M = np.atleast_2d(np.asarray(M, dtype=float))
        self.b = np.atleast_1d(np.asarray(b, dtype=float))
        n = self.M.shape[0]
        if self.M.shape != (n, n) or self.b.shape != (n,):
            raise InvalidInputError("affine operator needs square M and matching b")
        if L is None:
            L = spectral_norm(self.M)
        if eta is None:
            smin = float(np.linalg.eigvalsh((self.M + self.M.T) / 2)[0])
            eta = smin if smin > 0 else None
        M_, b_ = self.M, self.b
        super().__init__(lambda u: M_ @ u + b_, n, L if L > 0 else None, eta, certified=True)


def CallableOperator(func, dim, L=None, eta=None) -> Operator:
    return Operator(func, dim, L, eta, certified=L is not None and eta is not None)


def contraction_factor(lam: float, L: float, eta: float) -> float | None:
    """sqrt(1 - 2 lam eta + lam^2 L^2) if below one, else None."""
    q = 1 - 2 * lam * eta + lam**2 * L**2
    return float(np.sqrt(max(q, 0.0))) if q < 1 else None


def choose_lambda(S: Operator) -> tuple[float, float]:
    """Return ``(eta / L**2, sqrt(1 - eta**2 / L**2))``."""
    if S.eta is None or not S.eta > 0:
        raise CannotCertifyError("operator has no positive strong monotonicity modulus")
    if S.L is None:
        raise CannotCertifyError("operator has no Lipschitz constant")
    lam = S.eta / S.L**2
    return lam, float(np.sqrt(max(0.0, 1 - (S.eta / S.L) ** 2)))


@dataclass(frozen=True, eq=False)
class VIProblem:
    K: ConvexSet
    S: Operator
    lam: float | str = "auto"

    def __post_init__(self):
        if self.K.dim != self.S.dim:
            raise InvalidInputError("K and S dimensions differ")
        if self.lam != "auto":
            lam = float(self.lam)
            if not lam > 0:
                raise InvalidInputError("step size lambda must be positive")
            object.__setattr__(self, "lam", lam)

    def mapping(self, lam: float) -> Callable:
        K, S = self.K, self.S
        return lambda u: K.project(u - lam * S(u)).point

    def natural_residual(self, u, lam: float) -> float:
        u = np.asarray(u, dtype=float)
        return float(np.linalg.norm(u - self.mapping(lam)(u)))


@dataclass(frozen=True, eq=False)
class VIResult:
    u: np.ndarray
    natural_residual: float
    iterations: int
    k: float | None
    lam: float
    trace: IterationTrace
    certified: bool
    warnings: tuple = ()

    def certificate(self) -> dict:
        return {
            "point": [float(v) for v in self.u],
            "final_gap": self.natural_residual,
            "iterations": self.iterations,
            "k_used": self.k,
            "bounds": {
                "k_source": "predicted" if self.certified else "estimated",
                "aposteriori": None if self.k is None or not self.trace.steps
                else self.k / (1 - self.k) * self.trace.steps[-1],
                "apriori": None if self.k is None or not self.trace.steps
                else self.k ** self.iterations / (1 - self.k) * self.trace.steps[0],
            },
            "lambda": self.lam,
            "natural_residual": self.natural_residual,
            "warnings": list(self.warnings),
        }


def resolve_step(problem: VIProblem) -> tuple[float, float | None, list[str]]:
    """Step size, certified contraction factor (or None) and warnings."""
    S, warnings = problem.S, []
    if problem.lam == "auto":
        if S.L is None or S.eta is None:
            L_hat, eta_hat = S.estimate_constants(problem.K)
            S = Operator(S.func, S.dim, S.L or L_hat or None,
                         S.eta if S.eta is not None else eta_hat, certified=False)
        lam, k = choose_lambda(S)
        if not S.certified:
            warnings.append("lambda chosen from estimated L/eta; contraction not certified")
            k = None
        return lam, k, warnings
    lam = problem.lam
    k = None
    if S.certified and S.L is not None and S.eta is not None:
        k = contraction_factor(lam, S.L, S.eta)
    if k is None:
        warnings.append(f"lambda = {lam:g} is not certified to give a contraction")
    return lam, k, warnings


def vi_map(problem: VIProblem, lam: float, k=None, eps: float = DEFAULT_EPS) -> ProximalMap:
    """T = P_K(I - lam S) as a proximal map on the self-pair (K, K)."""
    pair = self_pair(EuclideanSpace(problem.K.dim), problem.K, eps)
    return ProximalMap(pair, problem.mapping(lam), k)


def solve_vi(problem: VIProblem, u0, criterion: ConvergenceCriterion | None = None,
             eps: float = DEFAULT_EPS) -> VIResult:
    """Projected fixed-point iteration u_{n+1} = P_K(u_n - lam S u_n)."""
    crit = criterion or ConvergenceCriterion()
    lam, k, warnings = resolve_step(problem)
    u0 = np.atleast_1d(np.asarray(u0, dtype=float))
    if not problem.K.contains(u0, eps):
        u0 = problem.K.project(u0).point
    pmap = vi_map(problem, lam, k, eps)
    trace, res = iterate(pmap, u0, crit, divergence_norm=DIVERGENCE_NORM)
    u = res.point
    return VIResult(
        u=u,
        natural_residual=problem.natural_residual(u, lam),
        iterations=res.iterations,
        k=k if k is not None else res.k_used,
        lam=lam,
        trace=trace,
        certified=k is not None,
        warnings=tuple(warnings) + (() if k is not None else res.warnings),
    )


def vi_residual(problem: VIProblem, u, probe_count: int = 1000, seed=0,
                lam: float | None = None) -> tuple[float, float]:
    """``(natural residual, min over probes v in K of <S u, v - u>)``."""
    if lam is None:
        lam = resolve_step(problem)[0] if problem.lam == "auto" else problem.lam
    u = np.atleast_1d(np.asarray(u, dtype=float))
    Su = problem.S(u)
    probes = np.array(problem.K.sample(probe_count, seed))
    worst = float(np.min((probes - u) @ Su))
    return problem.natural_residual(u, lam), worst
