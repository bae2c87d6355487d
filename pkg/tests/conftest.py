"""Shared solved fields; the expensive solves run once per session."""

import pytest

from painvortex.glvortex import GlProblem, solve_gl_profile
from painvortex.grids import build_grid1
from painvortex.painleve1d import HmProblem, solve_hastings_mcleod
from painvortex.vortexfield import reference_problem, solve_vortex


@pytest.fixture(scope="session")
def hm_reference():
    """Hastings-McLeod on [-12, 12], 4801 nodes, tol 1e-10."""
    return solve_hastings_mcleod(HmProblem(build_grid1(-12.0, 12.0, 4801)))


@pytest.fixture(scope="session")
def gl_reference():
    """d = 2 vortex profile on [0, 20], 4001 nodes."""
    return solve_gl_profile(GlProblem(d=2, grid=build_grid1(0.0, 20.0, 4001)))


@pytest.fixture(scope="session")
def vortex_reference():
    """n = 3 reduced vortex on [-8, 8] x [0, 12], 321 x 241."""
    return solve_vortex(reference_problem())
