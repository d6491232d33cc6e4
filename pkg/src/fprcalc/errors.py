"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the HTTP service
and the CLI can report failures without parsing message text.
"""


class FprError(ValueError):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DomainError(FprError):
    """An argument is outside the mathematical domain of an operation."""

    code = "domain_error"


class DegenerateDataError(FprError):
    """Input data carries no usable variation (e.g. pooled SD of zero)."""

    code = "degenerate_data"


class NoSolutionError(FprError):
    """A root solve has no solution in its search bracket."""

    code = "no_solution"


class LowStatisticsError(FprError):
    """A Monte Carlo estimate has too few events to be reliable."""

    code = "low_statistics"


class ConvergenceError(FprError):
    """An iterative numerical scheme failed to converge."""

    code = "no_convergence"
