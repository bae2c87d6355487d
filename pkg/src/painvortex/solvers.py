"""Damped Newton driver for the 1D two-point boundary value solves.

Both 1D profiles (Hastings-McLeod and the vortex amplitude) are solved
on a uniform grid with Dirichlet rows pinned, a tridiagonal Jacobian,
and backtracking damping: the Newton step is halved until the residual
sup-norm decreases, at most ``max_halvings`` times per iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConvergenceError

__all__ = ["SolveReport", "damped_newton_banded"]

MAX_HALVINGS = 30


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one nonlinear solve."""

    iterations: int
    final_residual: float
    converged: bool
    damping_events: int
    corner_mismatch: float | None = None

    def __post_init__(self):
        if self.converged and not np.isfinite(self.final_residual):
            raise ValueError("a converged report must carry a finite residual")


def damped_newton_banded(
    y0: np.ndarray,
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian_banded: Callable[[np.ndarray], np.ndarray],
    tol: float,
    max_iter: int,
    damping: float = 1.0,
) -> tuple[np.ndarray, SolveReport]:
    """Newton iteration on the interior unknowns of a Dirichlet problem.

    Parameters
    ----------
    y0 : full node vector with boundary values already imposed
    residual : maps a full vector to the residual (zero boundary rows)
    jacobian_banded : maps a full vector to the interior Jacobian in
        ``solve_banded`` (3, n-2) layout
    tol : residual sup-norm target
    max_iter : Newton iteration cap
    damping : initial fractional step in (0, 1]

    Raises
    ------
    ConvergenceError after ``max_iter`` iterations above ``tol``.
    """
    if not 0.0 < damping <= 1.0:
        raise ValueError(f"damping must lie in (0, 1], got {damping}")
    y = np.array(y0, dtype=float)
    res_norm = float(np.max(np.abs(residual(y))))
    iterations = 0
    damping_events = 0
    while res_norm > tol and iterations < max_iter:
        step = solve_banded((1, 1), jacobian_banded(y), -residual(y)[1:-1])
        lam = damping
        for _ in range(MAX_HALVINGS):
            trial = y.copy()
            trial[1:-1] += lam * step
            trial_norm = float(np.max(np.abs(residual(trial))))
            if trial_norm < res_norm:
                break
            lam *= 0.5
            damping_events += 1
        y, res_norm = trial, trial_norm
        iterations += 1
    converged = res_norm <= tol
    report = SolveReport(iterations, res_norm, converged, damping_events)
    if not converged:
        raise ConvergenceError(
            f"no convergence after {iterations} iterations "
            f"(residual {res_norm:.3e} > tol {tol:.3e})",
            report,
        )
    return y, report
