"""Radially reduced vortex solve on a truncated rectangle.

The equivariant ansatz y(x) = y_rad(x1, sigma) e_z reduces the extended
Painleve system Delta y - x1 y - 2|y|^2 y = 0 in R^n to a scalar PDE on
the half plane:

    y_xx + y_ss + (n-2)/s y_s - (n-2)/s^2 y - x1 y - 2 y^3 = 0,

with s = sigma = |z| >= 0.  The infinite-domain construction (energy
minimization over expanding balls) is replaced by Dirichlet data on a
rectangle [x1_min, x1_max] x [0, sigma_max]:

    bottom  s = 0:          0                     (odd reflection)
    top     s = sigma_max:  h(x1)                 (Hastings-McLeod amplitude)
    left    x1 = x1_min:    sqrt(-x1_min/2) * eta_rad(sqrt(-x1_min) s)
                            (inverse of the deep-left rescaling)
    right   x1 = x1_max:    0                     (super-exponential decay)

The mismatch of the top and left formulas at their shared corner is the
truncation diagnostic carried on the solve report.

Globalization runs semi-implicit gradient-flow steps before Newton: the
sigma-coupled linear operator (Laplacian, centrifugal terms) is treated
implicitly and factored once, while the non-autonomous mass term x1*y
and the cubic stay explicit.  Treating x1*y implicitly would amplify
the explicit cubic around the left branch and destabilize the iteration
at the default step; the explicit-mass splitting is contractive there
for dt * (6 h^2 + x1) < 2, and the step is clamped accordingly.

The cylindrical energy carries the radial volume weight sigma^(n-2), so
that (up to the sphere-area factor) it equals the full-space functional
of the equivariant field; the weighted form is the one whose first
variation reproduces the reduced PDE above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .errors import ConvergenceError, CoverageError, InvariantViolationError, SupportError
from .glvortex import GlProblem, GlProfile, solve_gl_profile
from .grids import Field1D, Field2D, Grid1D, Grid2D, build_grid1, integrate_weighted
from .painleve1d import HmProblem, solve_hastings_mcleod
from .solvers import SolveReport

__all__ = [
    "VortexProblem",
    "VortexField",
    "EnergyBreakdown",
    "BumpSpec",
    "BoundaryData",
    "reference_problem",
    "radial_residual",
    "assemble_boundary",
    "initial_guess",
    "solve_vortex",
    "energy_radial",
    "perturbation_energy_delta",
]

MAX_HALVINGS = 30


@dataclass(frozen=True)
class VortexProblem:
    """Truncated-rectangle setup for the reduced vortex solve (n >= 3)."""

    n: int
    grid: Grid2D
    newton_tol: float = 1e-8
    max_iter: int = 30
    flow_steps: int = 200
    flow_dt: float = 0.1

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"ambient dimension n must be >= 3, got {self.n}")
        if not self.grid.axis1.start < -4.0:
            raise ValueError(f"x1_min must be < -4, got {self.grid.axis1.start}")
        if not self.grid.axis1.end > 4.0:
            raise ValueError(f"x1_max must be > 4, got {self.grid.axis1.end}")
        if self.grid.axis2.start != 0.0:
            raise ValueError("sigma axis must start at 0")
        if not self.grid.axis2.end > 8.0:
            raise ValueError(f"sigma_max must be > 8, got {self.grid.axis2.end}")

    @property
    def x1_min(self) -> float:
        return self.grid.axis1.start

    @property
    def x1_max(self) -> float:
        return self.grid.axis1.end

    @property
    def sigma_max(self) -> float:
        return self.grid.axis2.end


@dataclass(frozen=True)
class VortexField:
    """Converged reduced vortex together with the 1D inputs it used."""

    y: Field2D
    n: int
    report: SolveReport
    h_used: Field1D
    gl_used: Field1D


@dataclass(frozen=True)
class EnergyBreakdown:
    gradient: float
    centrifugal: float
    linear_potential: float
    quartic_potential: float

    @property
    def total(self) -> float:
        return self.gradient + self.centrifugal + self.linear_potential + self.quartic_potential


@dataclass(frozen=True)
class BumpSpec:
    """Compactly supported radial bump amplitude*max(0, 1 - d^2/r^2)^2."""

    center: tuple[float, float]
    radius: float
    amplitude: float


@dataclass(frozen=True)
class BoundaryData:
    """Zero-interior field carrying the Dirichlet data, plus the corner diagnostic."""

    field: Field2D
    corner_mismatch: float


def reference_problem(n: int = 3) -> VortexProblem:
    """The blessed configuration: [-8, 8] x [0, 12], grid 321 x 241, tol 1e-8."""
    grid = Grid2D(build_grid1(-8.0, 8.0, 321), build_grid1(0.0, 12.0, 241))
    return VortexProblem(n=n, grid=grid)


def radial_residual(y: Field2D, n: int) -> Field2D:
    """Five-point stencil residual of the reduced PDE; boundary rows zero."""
    v = y.values
    x = y.grid.axis1.nodes()
    s = y.grid.axis2.nodes()
    h1 = y.grid.axis1.spacing
    h2 = y.grid.axis2.spacing
    nu = n - 2
    si = s[1:-1]
    out = np.zeros_like(v)
    out[1:-1, 1:-1] = (
        (v[:-2, 1:-1] - 2.0 * v[1:-1, 1:-1] + v[2:, 1:-1]) / h1 ** 2
        + (v[1:-1, :-2] - 2.0 * v[1:-1, 1:-1] + v[1:-1, 2:]) / h2 ** 2
        + nu / si[None, :] * (v[1:-1, 2:] - v[1:-1, :-2]) / (2.0 * h2)
        - nu / si[None, :] ** 2 * v[1:-1, 1:-1]
        - x[1:-1, None] * v[1:-1, 1:-1]
        - 2.0 * v[1:-1, 1:-1] ** 3
    )
    return Field2D(y.grid, out)


def _solve_h_for(problem: VortexProblem):
    """Hastings-McLeod amplitude on an interval 4 units past the rectangle.

    Solved at 10x the rectangle's x1 resolution so its sampling error is
    negligible against the 2D discretization.
    """
    dx = problem.grid.axis1.spacing / 10.0
    lo, hi = problem.x1_min - 4.0, problem.x1_max + 4.0
    count = int(round((hi - lo) / dx)) + 1
    # the evaluated stencil residual cannot drop below its rounding floor
    # ~ |h| * eps / dx^2, so the target scales with the spacing
    tol = max(1e-10, 4e-15 / dx ** 2)
    return solve_hastings_mcleod(HmProblem(build_grid1(lo, hi, count), newton_tol=tol))


def _solve_gl_for(problem: VortexProblem):
    """Vortex profile in dimension d = n-1 covering the rescaled left edge."""
    r_need = math.sqrt(-problem.x1_min) * problem.sigma_max
    r_max = float(math.ceil(r_need) + 2)
    count = int(round(r_max / 0.005)) + 1
    return solve_gl_profile(GlProblem(d=problem.n - 1, grid=build_grid1(0.0, r_max, count)))


def assemble_boundary(problem: VortexProblem, h: Field1D, gl: Field1D) -> BoundaryData:
    """Dirichlet data on the rectangle edges.

    The top row (Hastings-McLeod amplitude) is authoritative at its two
    corners; the mismatch against the left-edge formula at the top-left
    corner is returned as the truncation diagnostic.

    Raises CoverageError when ``h`` does not span the x1 range or the
    profile ``gl`` does not reach sqrt(-x1_min)*sigma_max.
    """
    g1, g2 = problem.grid.axis1, problem.grid.axis2
    if h.grid.start > g1.start or h.grid.end < g1.end:
        raise CoverageError(
            f"h covers [{h.grid.start}, {h.grid.end}], need [{g1.start}, {g1.end}]"
        )
    r_need = math.sqrt(-problem.x1_min) * problem.sigma_max
    if gl.grid.end < r_need:
        raise CoverageError(f"gl reaches r = {gl.grid.end}, left edge needs {r_need}")

    x = g1.nodes()
    s = g2.nodes()
    h_on_x = np.interp(x, h.grid.nodes(), h.values)
    eta = np.interp(math.sqrt(-problem.x1_min) * s, gl.grid.nodes(), gl.values)
    amp = math.sqrt(-problem.x1_min / 2.0)

    vals = np.zeros(problem.grid.shape)
    vals[0, :] = amp * eta          # left edge
    vals[-1, :] = 0.0               # right edge
    vals[:, 0] = 0.0                # bottom edge (odd reflection)
    vals[:, -1] = h_on_x            # top edge, wins at corners
    mismatch = abs(h_on_x[0] - amp * eta[-1])
    return BoundaryData(Field2D(problem.grid, vals), float(mismatch))


def initial_guess(problem: VortexProblem, h: Field1D) -> Field2D:
    """Separable guess h(x1) * tanh(sigma * sqrt(max(-x1, 1)/2)).

    Vanishes on the bottom row and saturates to h at large sigma; the
    solver projects it onto the exact boundary data before iterating.
    """
    x = problem.grid.axis1.nodes()
    s = problem.grid.axis2.nodes()
    h_on_x = np.interp(x, h.grid.nodes(), h.values)
    rate = np.sqrt(np.maximum(-x, 1.0) / 2.0)
    vals = h_on_x[:, None] * np.tanh(s[None, :] * rate[:, None])
    return Field2D(problem.grid, vals)


# ---------------------------------------------------------------------------
# shared semilinear engine (centrifugal coefficient nu = n-2, or 0 for the
# scalar slab configuration)

def _interior_operator(grid: Grid2D, nu: int):
    """Sparse interior operators: sigma-coupled linear part, and x1 mass."""
    g1, g2 = grid.axis1, grid.axis2
    h1, h2 = g1.spacing, g2.spacing
    m1, m2 = g1.count - 2, g2.count - 2
    si = g2.nodes()[1:-1]
    t1 = sp.diags([np.ones(m1 - 1), -2.0 * np.ones(m1), np.ones(m1 - 1)], [-1, 0, 1]) / h1 ** 2
    lo = 1.0 / h2 ** 2 - nu / (2.0 * h2 * si[1:])
    hi = 1.0 / h2 ** 2 + nu / (2.0 * h2 * si[:-1])
    t2 = sp.diags([lo, -2.0 * np.ones(m2) / h2 ** 2, hi], [-1, 0, 1])
    a_lin = sp.kron(t1, sp.identity(m2)) + sp.kron(sp.identity(m1), t2)
    a_lin = a_lin - sp.diags(np.broadcast_to(nu / si[None, :] ** 2, (m1, m2)).ravel())
    x_mass = np.repeat(g1.nodes()[1:-1], m2)
    return a_lin.tocsc(), x_mass


def _stencil_residual(vals, grid: Grid2D, nu: int):
    x = grid.axis1.nodes()
    s = grid.axis2.nodes()
    h1, h2 = grid.axis1.spacing, grid.axis2.spacing
    si = s[1:-1]
    out = np.zeros_like(vals)
    out[1:-1, 1:-1] = (
        (vals[:-2, 1:-1] - 2.0 * vals[1:-1, 1:-1] + vals[2:, 1:-1]) / h1 ** 2
        + (vals[1:-1, :-2] - 2.0 * vals[1:-1, 1:-1] + vals[1:-1, 2:]) / h2 ** 2
        + nu / si[None, :] * (vals[1:-1, 2:] - vals[1:-1, :-2]) / (2.0 * h2)
        - nu / si[None, :] ** 2 * vals[1:-1, 1:-1]
        - x[1:-1, None] * vals[1:-1, 1:-1]
        - 2.0 * vals[1:-1, 1:-1] ** 3
    )
    return out


def _solve_semilinear(
    grid: Grid2D,
    nu: int,
    boundary: np.ndarray,
    guess: np.ndarray,
    newton_tol: float,
    max_iter: int,
    flow_steps: int,
    flow_dt: float,
) -> tuple[np.ndarray, SolveReport]:
    """Gradient flow then damped Newton on the interior unknowns."""
    m1, m2 = grid.axis1.count - 2, grid.axis2.count - 2
    vals = np.array(guess, dtype=float)
    vals[0, :] = boundary[0, :]
    vals[-1, :] = boundary[-1, :]
    vals[:, 0] = boundary[:, 0]
    vals[:, -1] = boundary[:, -1]

    a_lin, x_mass = _interior_operator(grid, nu)
    yint = vals[1:-1, 1:-1].ravel()
    # affine boundary contribution of the sigma-coupled operator
    lin_res = _stencil_residual(vals, grid, nu)[1:-1, 1:-1].ravel() + (
        x_mass * yint + 2.0 * yint ** 3
    )
    b = lin_res - a_lin @ yint

    if flow_steps > 0:
        # explicit-mass stability: dt * (6 h^2 + x1) < 2 with h^2 ~ -x1/2
        dt = min(flow_dt, 1.8 / max(1.0, -2.0 * grid.axis1.start))
        step_op = splu((sp.identity(m1 * m2, format="csc") - dt * a_lin).tocsc())
        for _ in range(flow_steps):
            yint = step_op.solve(yint + dt * (b - x_mass * yint - 2.0 * yint ** 3))
        vals[1:-1, 1:-1] = yint.reshape(m1, m2)

    res = _stencil_residual(vals, grid, nu)
    res_norm = float(np.max(np.abs(res)))
    iterations = 0
    damping_events = 0
    while res_norm > newton_tol and iterations < max_iter:
        jac = (a_lin - sp.diags(x_mass + 6.0 * yint ** 2)).tocsc()
        step = splu(jac).solve(-res[1:-1, 1:-1].ravel())
        lam = 1.0
        for _ in range(MAX_HALVINGS):
            trial_int = yint + lam * step
            trial = vals.copy()
            trial[1:-1, 1:-1] = trial_int.reshape(m1, m2)
            trial_res = _stencil_residual(trial, grid, nu)
            trial_norm = float(np.max(np.abs(trial_res)))
            if trial_norm < res_norm:
                break
            lam *= 0.5
            damping_events += 1
        yint, vals, res, res_norm = trial_int, trial, trial_res, trial_norm
        iterations += 1

    converged = res_norm <= newton_tol
    report = SolveReport(iterations, res_norm, converged, damping_events)
    if not converged:
        raise ConvergenceError(
            f"vortex solve stalled at residual {res_norm:.3e} "
            f"after {iterations} Newton iterations",
            report,
        )
    return vals, report


# ---------------------------------------------------------------------------
# invariant margins (shared with the analysis checks)

def _amplitude_margin(vals, h_on_x):
    """max(y - h) over nodes with sigma < sigma_max, and its location."""
    gap = vals[:, :-1] - h_on_x[:, None]
    idx = np.unravel_index(np.argmax(gap), gap.shape)
    return float(gap[idx]), (int(idx[0]), int(idx[1]))


def _monotonicity_margins(vals, s, spacing):
    """Worst forward differences (x1 and sigma) at interior nodes with
    sigma >= 2*spacing; positive x-margin or negative sigma-margin means
    a violation."""
    n1, n2 = vals.shape
    jsel = np.where(s >= 2.0 * spacing)[0]
    jsel = jsel[(jsel >= 1) & (jsel <= n2 - 2)]
    dx = vals[2:n1, jsel] - vals[1 : n1 - 1, jsel]  # forward diff at i=1..n1-2
    ds = vals[1 : n1 - 1, jsel + 1] - vals[1 : n1 - 1, jsel]
    ix = np.unravel_index(np.argmax(dx), dx.shape)
    js = np.unravel_index(np.argmin(ds), ds.shape)
    worst_dx = float(dx[ix])
    worst_ds = float(ds[js])
    loc_dx = (int(ix[0] + 1), int(jsel[ix[1]]))
    loc_ds = (int(js[0] + 1), int(jsel[js[1]]))
    return worst_dx, loc_dx, worst_ds, loc_ds


def _node_coords(grid: Grid2D, loc):
    return (float(grid.axis1.nodes()[loc[0]]), float(grid.axis2.nodes()[loc[1]]))


def solve_vortex(
    problem: VortexProblem,
    h: Field1D | None = None,
    gl: Field1D | None = None,
) -> VortexField:
    """Solve the truncated vortex problem and validate its invariants.

    The two 1D sub-solves run internally unless precomputed profiles are
    passed in.  The converged field must be strictly positive at
    interior nodes, strictly below h at every node with sigma <
    sigma_max, decreasing in x1 and increasing in sigma at interior
    nodes with sigma >= 2*spacing; violations raise
    InvariantViolationError with the worst offending node.  The iterate
    targets the branch selected by the positive separable guess; other
    branches are rejected by these checks rather than searched for.
    """
    if h is None:
        h = _solve_h_for(problem).h
    if gl is None:
        gl = _solve_gl_for(problem).f

    boundary = assemble_boundary(problem, h, gl)
    guess = initial_guess(problem, h)
    vals, report = _solve_semilinear(
        problem.grid,
        problem.n - 2,
        boundary.field.values,
        guess.values,
        problem.newton_tol,
        problem.max_iter,
        problem.flow_steps,
        problem.flow_dt,
    )
    report = replace(report, corner_mismatch=boundary.corner_mismatch)

    x = problem.grid.axis1.nodes()
    s = problem.grid.axis2.nodes()
    h_on_x = np.interp(x, h.grid.nodes(), h.values)

    interior = vals[1:-1, 1:-1]
    if np.any(interior <= 0.0):
        idx = np.unravel_index(np.argmin(interior), interior.shape)
        loc = (int(idx[0] + 1), int(idx[1] + 1))
        raise InvariantViolationError(
            "positivity", float(interior[idx]), _node_coords(problem.grid, loc)
        )
    amp_worst, amp_loc = _amplitude_margin(vals, h_on_x)
    if amp_worst >= 0.0:
        raise InvariantViolationError(
            "amplitude bound y < h", amp_worst, _node_coords(problem.grid, amp_loc)
        )
    worst_dx, loc_dx, worst_ds, loc_ds = _monotonicity_margins(
        vals, s, problem.grid.axis2.spacing
    )
    if worst_dx >= 0.0:
        raise InvariantViolationError(
            "decrease in x1", worst_dx, _node_coords(problem.grid, loc_dx)
        )
    if worst_ds <= 0.0:
        raise InvariantViolationError(
            "increase in sigma", worst_ds, _node_coords(problem.grid, loc_ds)
        )

    return VortexField(
        y=Field2D(problem.grid, vals),
        n=problem.n,
        report=report,
        h_used=Field1D(problem.grid.axis1, h_on_x),
        gl_used=gl,
    )


# ---------------------------------------------------------------------------
# cylindrical energy

def energy_radial(y: Field2D, n: int) -> EnergyBreakdown:
    """Energy of the reduced field with the sigma^(n-2) volume weight.

    Terms: 1/2 |grad y|^2, (n-2) y^2 / (2 sigma^2) (zero on the sigma=0
    row, where y vanishes linearly), x1 y^2 / 2, and y^4 / 2.
    """
    vals = y.values
    x = y.grid.axis1.nodes()
    s = y.grid.axis2.nodes()
    nu = n - 2
    gx = np.gradient(vals, y.grid.axis1.spacing, axis=0)
    gs = np.gradient(vals, y.grid.axis2.spacing, axis=1)

    grad = 0.5 * (gx ** 2 + gs ** 2)
    cent = np.zeros_like(vals)
    cent[:, 1:] = nu * vals[:, 1:] ** 2 / (2.0 * s[1:] ** 2)
    lin = x[:, None] * vals ** 2 / 2.0
    quart = vals ** 4 / 2.0

    return EnergyBreakdown(
        gradient=integrate_weighted(Field2D(y.grid, grad), nu),
        centrifugal=integrate_weighted(Field2D(y.grid, cent), nu),
        linear_potential=integrate_weighted(Field2D(y.grid, lin), nu),
        quartic_potential=integrate_weighted(Field2D(y.grid, quart), nu),
    )


def perturbation_energy_delta(field: VortexField, bump: BumpSpec) -> float:
    """Energy increment E(y + phi) - E(y) for a compact radial bump.

    The bump must sit strictly inside the rectangle and at least one
    sigma spacing above the axis; both energies use the same quadrature.
    """
    g1 = field.y.grid.axis1
    g2 = field.y.grid.axis2
    (cx, cs), rad, amp = bump.center, float(bump.radius), float(bump.amplitude)
    if rad <= 0.0:
        raise SupportError(f"bump radius must be positive, got {rad}")
    if not (g1.start < cx - rad and cx + rad < g1.end):
        raise SupportError(f"bump support [{cx - rad}, {cx + rad}] touches an x1 edge")
    if not (cs + rad < g2.end and cs - rad >= g2.start + g2.spacing):
        raise SupportError(
            f"bump support [{cs - rad}, {cs + rad}] touches a sigma edge "
            f"(must stay one spacing above sigma = 0)"
        )
    x = g1.nodes()
    s = g2.nodes()
    d2 = (x[:, None] - cx) ** 2 + (s[None, :] - cs) ** 2
    phi = amp * np.maximum(0.0, 1.0 - d2 / rad ** 2) ** 2
    if amp == 0.0:
        return 0.0
    base = energy_radial(field.y, field.n)
    bumped = energy_radial(Field2D(field.y.grid, field.y.values + phi), field.n)
    return bumped.total - base.total
