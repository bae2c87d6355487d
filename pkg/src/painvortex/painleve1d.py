"""Hastings-McLeod solution of Painleve II on a truncated interval.

The ODE is y'' = x y + 2 y^3.  The Hastings-McLeod branch is the unique
positive, strictly decreasing solution that decays like Ai(x) on the
right and grows like sqrt(-x/2) on the left; both regimes supply the
Dirichlet data of the truncated problem:

    h(x_min) = sqrt(-x_min/2) * (1 + 1/(8 x_min^3))   (first correction
               of the left branch; the pure leading order is available
               via ``corrected_left_bc=False``)
    h(x_max) = Ai(x_max)

Discretization is the central second difference; the Newton Jacobian is
the tridiagonal ``D^2 - diag(x + 6 y^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .airy import airy_ai
from .errors import InvariantViolationError
from .grids import Field1D, Grid1D
from .solvers import SolveReport, damped_newton_banded

__all__ = [
    "HmProblem",
    "HmSolution",
    "hm_left_asymptote",
    "hm_residual",
    "solve_hastings_mcleod",
]


@dataclass(frozen=True)
class HmProblem:
    """Truncated-interval setup for the Hastings-McLeod solve.

    The interval must reach past both asymptotic regimes: x_min < -4 and
    x_max > 4.
    """

    grid: Grid1D
    newton_tol: float = 1e-10
    max_iter: int = 50
    damping: float = 1.0
    corrected_left_bc: bool = True

    def __post_init__(self):
        if not self.grid.start < -4.0:
            raise ValueError(f"x_min must be < -4, got {self.grid.start}")
        if not self.grid.end > 4.0:
            raise ValueError(f"x_max must be > 4, got {self.grid.end}")

    @property
    def x_min(self) -> float:
        return self.grid.start

    @property
    def x_max(self) -> float:
        return self.grid.end


@dataclass(frozen=True)
class HmSolution:
    h: Field1D
    report: SolveReport


def hm_left_asymptote(x: float, corrected: bool = True) -> float:
    """Left-branch value sqrt(-x/2) with its first correction 1/(8 x^3).

    Valid for x < 0 only.
    """
    if x >= 0.0:
        raise ValueError(f"left asymptote requires x < 0, got {x}")
    lead = np.sqrt(-x / 2.0)
    if not corrected:
        return float(lead)
    return float(lead * (1.0 + 1.0 / (8.0 * x ** 3)))


def hm_residual(y: Field1D) -> Field1D:
    """Interior residual y'' - x y - 2 y^3; boundary rows are zero."""
    v = y.values
    x = y.grid.nodes()
    h2 = y.grid.spacing ** 2
    r = np.zeros_like(v)
    r[1:-1] = (v[:-2] - 2.0 * v[1:-1] + v[2:]) / h2 - x[1:-1] * v[1:-1] - 2.0 * v[1:-1] ** 3
    return Field1D(y.grid, r)


def _ai_rough(x: np.ndarray) -> np.ndarray:
    # leading-order decay, guess quality only (few percent at x=2)
    z = (2.0 / 3.0) * x ** 1.5
    return np.exp(-z) / (2.0 * np.sqrt(np.pi) * x ** 0.25)


def _initial_guess(grid: Grid1D) -> np.ndarray:
    """Smoothed left branch blended into the Airy decay on [2, 4].

    The smoothing floor (delta = 0.25) and the blend keep Newton inside
    the basin of the positive decreasing branch.
    """
    x = grid.nodes()
    y = np.sqrt(np.maximum(-x, 0.25) / 2.0)
    w = np.clip((x - 2.0) / 2.0, 0.0, 1.0)
    ramp = w > 0.0
    y[ramp] = (1.0 - w[ramp]) * y[ramp] + w[ramp] * _ai_rough(x[ramp])
    return y


def solve_hastings_mcleod(problem: HmProblem) -> HmSolution:
    """Damped Newton solve of the truncated Hastings-McLeod problem.

    Raises ConvergenceError if the iteration stalls and
    InvariantViolationError if the converged iterate is not strictly
    positive and decreasing (a wrong-branch signal).
    """
    grid = problem.grid
    y0 = _initial_guess(grid)
    y0[0] = hm_left_asymptote(problem.x_min, problem.corrected_left_bc)
    y0[-1] = airy_ai(problem.x_max).value
    x = grid.nodes()
    h2 = grid.spacing ** 2

    def residual(v: np.ndarray) -> np.ndarray:
        return hm_residual(Field1D(grid, v)).values

    def jacobian(v: np.ndarray) -> np.ndarray:
        n = grid.count - 2
        ab = np.zeros((3, n))
        ab[0, 1:] = 1.0 / h2
        ab[1, :] = -2.0 / h2 - x[1:-1] - 6.0 * v[1:-1] ** 2
        ab[2, :-1] = 1.0 / h2
        return ab

    y, report = damped_newton_banded(
        y0, residual, jacobian, problem.newton_tol, problem.max_iter, problem.damping
    )

    if np.any(y <= 0.0):
        i = int(np.argmin(y))
        raise InvariantViolationError("positivity", float(y[i]), (float(x[i]),))
    diffs = np.diff(y)
    if np.any(diffs >= 0.0):
        i = int(np.argmax(diffs))
        raise InvariantViolationError("strict decrease", float(diffs[i]), (float(x[i]),))
    return HmSolution(Field1D(grid, y), report)
