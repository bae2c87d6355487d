"""Radial profile of the standard Ginzburg-Landau vortex.

The equivariant ansatz u(x) = f(|x|) x/|x| reduces Delta u = |u|^2 u - u
in dimension d to the two-point problem

    f'' + (d-1)/r f' - (d-1)/r^2 f + f - f^3 = 0,   f(0) = 0,

with f increasing to 1.  The (d-1)/r and (d-1)/r^2 coefficients are the
radial and angular parts of the Laplacian acting on an equivariant
field.  Truncation at r_max uses the first-order far field
f ~ 1 - (d-1)/(2 r^2).  The r = 0 coordinate singularity never enters:
the origin is a Dirichlet row and interior nodes start at r = spacing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolationError
from .grids import Field1D, Grid1D
from .solvers import SolveReport, damped_newton_banded

__all__ = [
    "GlProblem",
    "GlProfile",
    "gl_residual",
    "gl_far_field",
    "solve_gl_profile",
]


@dataclass(frozen=True)
class GlProblem:
    """Vortex-profile setup in ambient dimension d >= 2."""

    d: int
    grid: Grid1D
    newton_tol: float = 1e-10
    max_iter: int = 60
    damping: float = 1.0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"vortex dimension d must be >= 2, got {self.d}")
        if self.grid.start != 0.0:
            raise ValueError(f"grid must start at r = 0, got {self.grid.start}")
        if not self.grid.end > 10.0:
            raise ValueError(f"r_max must be > 10, got {self.grid.end}")

    @property
    def r_max(self) -> float:
        return self.grid.end


@dataclass(frozen=True)
class GlProfile:
    f: Field1D
    report: SolveReport


def gl_far_field(r: float, d: int) -> float:
    """First-order far-field value 1 - (d-1)/(2 r^2), the r_max Dirichlet datum."""
    if r <= 0.0:
        raise ValueError(f"far field requires r > 0, got {r}")
    return float(1.0 - (d - 1) / (2.0 * r * r))


def gl_residual(f: Field1D, d: int) -> Field1D:
    """Interior residual of the reduced vortex ODE; boundary rows zero."""
    v = f.values
    r = f.grid.nodes()
    h = f.grid.spacing
    ri = r[1:-1]
    out = np.zeros_like(v)
    out[1:-1] = (
        (v[:-2] - 2.0 * v[1:-1] + v[2:]) / h ** 2
        + (d - 1) / ri * (v[2:] - v[:-2]) / (2.0 * h)
        - (d - 1) / ri ** 2 * v[1:-1]
        + v[1:-1]
        - v[1:-1] ** 3
    )
    return Field1D(f.grid, out)


def solve_gl_profile(problem: GlProblem) -> GlProfile:
    """Damped Newton solve from the tanh(r/sqrt(2)) initial guess.

    The converged profile must vanish at the origin, stay in [0, 1) at
    interior nodes, and increase strictly; violations raise
    InvariantViolationError.
    """
    grid = problem.grid
    d = problem.d
    r = grid.nodes()
    h = grid.spacing
    ri = r[1:-1]
    f0 = np.tanh(r / np.sqrt(2.0))
    f0[0] = 0.0
    f0[-1] = gl_far_field(problem.r_max, d)

    def residual(v: np.ndarray) -> np.ndarray:
        return gl_residual(Field1D(grid, v), d).values

    def jacobian(v: np.ndarray) -> np.ndarray:
        n = grid.count - 2
        ab = np.zeros((3, n))
        ab[0, 1:] = 1.0 / h ** 2 + (d - 1) / (2.0 * h * ri[:-1])
        ab[1, :] = -2.0 / h ** 2 - (d - 1) / ri ** 2 + 1.0 - 3.0 * v[1:-1] ** 2
        ab[2, :-1] = 1.0 / h ** 2 - (d - 1) / (2.0 * h * ri[1:])
        return ab

    f, report = damped_newton_banded(
        f0, residual, jacobian, problem.newton_tol, problem.max_iter, problem.damping
    )

    diffs = np.diff(f)
    if np.any(diffs <= 0.0):
        i = int(np.argmin(diffs))
        raise InvariantViolationError("strict increase", float(diffs[i]), (float(r[i]),))
    interior = f[1:-1]
    if np.any(interior < 0.0) or np.any(interior >= 1.0):
        i = 1 + int(np.argmax(np.abs(interior - 0.5)))
        raise InvariantViolationError("amplitude in [0, 1)", float(f[i]), (float(r[i]),))
    return GlProfile(Field1D(grid, f), report)
