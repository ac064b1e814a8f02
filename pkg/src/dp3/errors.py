"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: validation problems exit 2,
mathematical condition violations exit 3, integration failures exit 4.
"""

from __future__ import annotations


class DP3Error(Exception):
    """Base class for all errors raised by this package."""


class PoleError(DP3Error):
    """Evaluation requested at a pole of gamma/digamma."""


class ConditionViolationError(DP3Error):
    """A validity condition or operation precondition does not hold."""


class SingularityError(DP3Error):
    """A formula was evaluated where it is singular (u = 0 or tau = 0)."""


class IntegrationFailureError(DP3Error):
    """The ODE integrator could not continue (step underflow near a
    zero or pole of the solution).  Carries the approach location."""

    def __init__(self, message: str, tau_abs: float | None = None):
        super().__init__(message)
        self.tau_abs = tau_abs


class LadderBreakdownError(DP3Error):
    """A Backlund ladder entry could not be built; names the failing step."""

    def __init__(self, message: str, n: int | None = None):
        super().__init__(message)
        self.n = n


class SamplingExhaustedError(DP3Error):
    """Rejection sampling exceeded its attempt budget."""
