"""Exception hierarchy.

Every failure the library can report maps onto one of four families, which
the command line turns into exit codes: bad input (1), nonconvergence (2),
violated hypothesis (3) and unsupported configuration (4).
"""


class BestProxError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInputError(BestProxError, ValueError):
    """Malformed arguments, dimension mismatches, bad constants."""


class DimensionMismatchError(InvalidInputError):
    pass


class MetricError(InvalidInputError):
    """Matrix does not define a metric; ``report`` names the violation."""

    def __init__(self, report):
        super().__init__(f"not a metric: {report}")
        self.report = report


class InvalidConstantError(InvalidInputError):
    """Contraction constant outside [0, 1)."""


class ConfigError(InvalidInputError):
    pass


class NonConvergenceError(BestProxError):
    """Iteration budget exhausted (or limit failed its certificate).

    ``best`` holds the best iterate found and ``trace`` the partial
    iteration record, when there is one.
    """

    exit_code = 2

    def __init__(self, message, best=None, trace=None, bracket=None):
        super().__init__(message)
        self.best = best
        self.trace = trace
        self.bracket = bracket


class NotAContractionError(NonConvergenceError):
    """Step ratios stayed at or above one for a full detection window."""


class DivergenceError(NonConvergenceError):
    """Iterates blew up; for the VI solver this usually means lambda is too big."""


class HypothesisViolation(BestProxError):
    """An assumption of the existence theorem fails on the given data."""

    exit_code = 3

    def __init__(self, message, iterate=None, point=None, trace=None):
        super().__init__(message)
        self.iterate = iterate
        self.point = point
        self.trace = trace


class ResolutionFailure(HypothesisViolation):
    """No point of A sits at distance d(A,B) from T(x): T(A0) is not inside B0."""


class InfeasibleError(BestProxError):
    """Intersection of sets is (numerically) empty."""

    exit_code = 3


class InsufficientSamplesError(BestProxError):
    pass


class CannotCertifyError(BestProxError):
    """Strong monotonicity modulus missing or nonpositive."""


class UnsupportedConfigurationError(BestProxError):
    """Proximal resolution requested in a p-norm space with p != 2."""

    exit_code = 4
