"""Painleve II / Ginzburg-Landau vortex profiles on truncated domains.

Computes the Hastings-McLeod solution of Painleve II, the standard
Ginzburg-Landau vortex profile, and the radially reduced vortex field of
the extended Painleve PDE, then verifies their qualitative properties
(amplitude bound, monotonicity, asymptotics, decay, rescaled limits,
minimality) as machine-checkable reports.
"""

from .airy import AiryResult, airy_ai, airy_ai_deriv
from .analysis import (
    CheckReport,
    RescaledField,
    check_amplitude_bound,
    check_hm_asymptotics,
    check_monotonicity,
    fit_decay_rate,
    gl_comparison_error,
    rescale_field,
    verify_1d_vector_direction,
    verify_slab_equals_h,
)
from .errors import ConvergenceError, CoverageError, InvariantViolationError, SupportError
from .export import export_field, load_field_json
from .glvortex import GlProblem, GlProfile, gl_far_field, gl_residual, solve_gl_profile
from .grids import (
    Field1D,
    Field2D,
    Grid1D,
    Grid2D,
    build_grid1,
    integrate_weighted,
    interp_bilinear,
    second_derivative,
)
from .painleve1d import (
    HmProblem,
    HmSolution,
    hm_left_asymptote,
    hm_residual,
    solve_hastings_mcleod,
)
from .solvers import SolveReport
from .vortexfield import (
    BoundaryData,
    BumpSpec,
    EnergyBreakdown,
    VortexField,
    VortexProblem,
    assemble_boundary,
    energy_radial,
    initial_guess,
    perturbation_energy_delta,
    radial_residual,
    reference_problem,
    solve_vortex,
)

__version__ = "0.1.0"

__all__ = [
    "AiryResult",
    "airy_ai",
    "airy_ai_deriv",
    "BoundaryData",
    "BumpSpec",
    "CheckReport",
    "ConvergenceError",
    "CoverageError",
    "EnergyBreakdown",
    "Field1D",
    "Field2D",
    "GlProblem",
    "GlProfile",
    "Grid1D",
    "Grid2D",
    "HmProblem",
    "HmSolution",
    "InvariantViolationError",
    "RescaledField",
    "SolveReport",
    "SupportError",
    "VortexField",
    "VortexProblem",
    "assemble_boundary",
    "build_grid1",
    "check_amplitude_bound",
    "check_hm_asymptotics",
    "check_monotonicity",
    "energy_radial",
    "export_field",
    "fit_decay_rate",
    "gl_comparison_error",
    "gl_far_field",
    "gl_residual",
    "hm_left_asymptote",
    "hm_residual",
    "initial_guess",
    "integrate_weighted",
    "interp_bilinear",
    "load_field_json",
    "perturbation_energy_delta",
    "radial_residual",
    "reference_problem",
    "rescale_field",
    "second_derivative",
    "solve_gl_profile",
    "solve_hastings_mcleod",
    "solve_vortex",
    "verify_1d_vector_direction",
    "verify_slab_equals_h",
]
