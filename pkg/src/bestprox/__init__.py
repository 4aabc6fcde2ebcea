"""Best proximity points of proximal contractions and projected VI solvers."""
from .engine import (BppResult, ContractionEstimate, IterationTrace, ProximalMap,
                     brute_force_bpp, check_bound_ledger, estimate_k,
                     exact_contraction_constant, iterate, verify_uniqueness)
from .errors import (BestProxError, CannotCertifyError, ConfigError, DimensionMismatchError,
                     DivergenceError, HypothesisViolation, InfeasibleError,
                     InsufficientSamplesError, InvalidConstantError, InvalidInputError,
                     MetricError, NonConvergenceError, NotAContractionError, ResolutionFailure,
                     UnsupportedConfigurationError)
from .metric import (ConvergenceCriterion, EuclideanSpace, FiniteSpace, MetricReport, distance,
                     is_cauchy_tail, validate_metric)
from .pairs import (ProximalPair, enumerate_A0_finite, enumerate_B0_finite, in_A0, in_B0,
                    pair_separation, point_set_distance, proximal_resolve, self_pair)
from .sets import (AffineSet, Ball, Box, ConvexSet, FinitePointSet, Halfspace, Hyperplane,
                   Intersection, ProjectionResult, Simplex, contains, project, support_sample)
from .vi import (AffineOperator, CallableOperator, Operator, VIProblem, VIResult,
                 choose_lambda, solve_vi, vi_residual)

__all__ = [
    "AffineOperator", "AffineSet", "Ball", "BestProxError", "Box", "BppResult",
    "CallableOperator", "CannotCertifyError", "ConfigError", "ContractionEstimate",
    "ConvergenceCriterion", "ConvexSet", "DimensionMismatchError", "DivergenceError",
    "EuclideanSpace", "FinitePointSet", "FiniteSpace", "Halfspace", "Hyperplane",
    "HypothesisViolation", "InfeasibleError", "InsufficientSamplesError", "Intersection",
    "InvalidConstantError", "InvalidInputError", "IterationTrace", "MetricError",
    "MetricReport", "NonConvergenceError", "NotAContractionError", "Operator",
    "ProjectionResult", "ProximalMap", "ProximalPair", "ResolutionFailure", "Simplex",
    "UnsupportedConfigurationError", "VIProblem", "VIResult", "brute_force_bpp",
    "check_bound_ledger", "choose_lambda", "contains", "distance", "enumerate_A0_finite",
    "enumerate_B0_finite", "estimate_k", "exact_contraction_constant", "in_A0", "in_B0",
    "is_cauchy_tail", "iterate", "pair_separation", "point_set_distance", "project",
    "proximal_resolve", "self_pair", "solve_vi", "support_sample", "validate_metric",
    "verify_uniqueness", "vi_residual",
]

__version__ = "0.1.0"
