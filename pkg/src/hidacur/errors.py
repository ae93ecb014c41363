"""Exception types shared across the package."""


class NonexistenceError(ValueError):
    """Raised where the object does not exist: at the origin in dimension > 1
    the current is not a well-defined distribution (first chaos diverges)."""


class QuadratureBudgetError(RuntimeError):
    """Node budget exhausted before reaching the requested tolerance.

    Carries the best estimate so far in .best_estimate."""

    def __init__(self, msg, best_estimate=None):
        super().__init__(msg)
        self.best_estimate = best_estimate


class IntegrandFailureError(RuntimeError):
    """Integrand returned NaN or infinity."""


class UnstableDerivativeError(RuntimeError):
    """Numeric derivative estimates at two step sizes disagree beyond tolerance."""
