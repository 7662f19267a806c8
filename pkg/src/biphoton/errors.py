"""Exception hierarchy.

Each family maps to a CLI exit code: configuration problems exit with 2,
numerical non-convergence with 3 and physics-domain violations with 4.
"""


class BiphotonError(Exception):
    exit_code = 1


class ConfigError(BiphotonError, ValueError):
    exit_code = 2


class DomainError(BiphotonError, ValueError):
    """Input lies outside the physical regime the model covers."""

    exit_code = 4


class GeometryError(DomainError):
    pass


class NonDegenerateError(DomainError):
    pass


class PhaseMatchingError(DomainError):
    pass


class NonConvergenceError(BiphotonError, ArithmeticError):
    """Adaptive quadrature ran out of refinement depth.

    ``estimate`` and ``error`` carry the best value reached, so callers can
    decide whether it is still usable.
    """

    exit_code = 3

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class AmbiguousCurveError(BiphotonError, ValueError):
    exit_code = 3

    def __init__(self, message, crossings=()):
        super().__init__(message)
        self.crossings = list(crossings)
