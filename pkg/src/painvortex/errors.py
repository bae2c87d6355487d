"""Exception types shared by the solvers and checks."""

from __future__ import annotations


class ConvergenceError(RuntimeError):
    """Newton iteration exhausted max_iter without meeting the residual target.

    Carries the final SolveReport so callers can inspect how far the
    iteration got.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvariantViolationError(RuntimeError):
    """A converged iterate violates a qualitative solution invariant.

    Signals convergence onto a wrong branch (e.g. a non-monotone or
    sign-changing iterate); carries the worst offending value and its
    grid location.
    """

    def __init__(self, invariant, worst_violation, worst_location):
        super().__init__(
            f"invariant '{invariant}' violated: worst {worst_violation:.3e} "
            f"at {worst_location}"
        )
        self.invariant = invariant
        self.worst_violation = worst_violation
        self.worst_location = worst_location


class CoverageError(ValueError):
    """A 1D input profile does not cover the range a boundary needs."""


class SupportError(ValueError):
    """A perturbation's support touches the domain boundary."""
