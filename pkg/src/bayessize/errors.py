"""Exception types shared across the package.

The command line maps these onto exit codes: domain and configuration
problems exit 1, an unsatisfiable criterion exits 2, and accuracy or
shape failures exit 3.
"""

from __future__ import annotations


class BayesSizeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BayesSizeError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ConfigurationError(BayesSizeError, ValueError):
    """A structurally invalid combination of model, prior, or options."""


class CriterionUnsatisfiableError(BayesSizeError):
    """No finite sample size can meet the requested accuracy target.

    Raised when the information infimum over the planning range is zero
    or negative, for example when an effect-size alternative sits inside
    the planning range itself.  ``theta`` records the offending point.
    """

    def __init__(self, message: str, theta: float | None = None):
        super().__init__(message)
        self.theta = theta


class AccuracyError(BayesSizeError):
    """A numerical routine could not certify its required tolerance."""


class UnsupportedShapeError(BayesSizeError):
    """The posterior shape falls outside the supported class.

    Highest-density intervals are only defined here for densities whose
    super-level sets are single intervals; anything else raises this.
    """


class ReplicateError(BayesSizeError):
    """A Monte Carlo replicate failed; ``index`` identifies which one."""

    def __init__(self, index: int, cause: BaseException):
        super().__init__(f"replicate {index} failed: {cause}")
        self.index = index
        self.cause = cause
