"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A state, channel or sweep parameter is outside its legal range."""


class UnphysicalCovarianceError(ValueError):
    """A covariance matrix violates the uncertainty relation."""


class DegenerateTrajectoryError(ValueError):
    """Trajectory requested for an input with vanishing cross-correlation."""


class NoRootError(RuntimeError):
    """The slope has no sign change, so no temperature threshold exists."""


class TruncationBudgetError(RuntimeError):
    """A Fock-space cutoff loses more probability than the allowed budget."""

    def __init__(self, message, suggested_cutoff=None):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff


class ConvergenceError(RuntimeError):
    """An iterative routine stopped before meeting its tolerance."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
