import numpy as np
import pytest

from painvortex.errors import CoverageError, SupportError
from painvortex.grids import Field1D, Field2D, Grid2D, build_grid1
from painvortex.painleve1d import HmProblem, solve_hastings_mcleod
from painvortex.vortexfield import (
    BumpSpec,
    VortexProblem,
    assemble_boundary,
    energy_radial,
    initial_guess,
    perturbation_energy_delta,
    radial_residual,
    reference_problem,
    solve_vortex,
)

# probes of the reference solve, frozen from a pure gradient-flow run at
# 2x resolution (641 x 481, 600 steps); agreement tolerance 5e-4
FLOW_ORACLE_PROBES = {
    (0.0, 2.0): 0.27339691151062,
    (-4.0, 3.0): 1.38916132326427,
    (2.0, 1.0): 0.01214824768367,
    (-6.0, 6.0): 1.72695921654675,
}

H0 = 0.36706155154806


def small_problem():
    grid = Grid2D(build_grid1(-5.0, 5.0, 41), build_grid1(0.0, 8.5, 35))
    return VortexProblem(n=3, grid=grid)


class TestResidual:
    def test_zero_map_solves(self):
        p = small_problem()
        y = Field2D(p.grid, np.zeros(p.grid.shape))
        assert np.all(radial_residual(y, 3).values == 0.0)

    def test_sigma_independent_h_leaves_centrifugal_term(self):
        # a grid-aligned discrete h extended constant in sigma satisfies the
        # x1 stencil, so only -(n-2) h / sigma^2 survives
        p = small_problem()
        dx = p.grid.axis1.spacing
        count = int(round(18.0 / dx)) + 1
        hm = solve_hastings_mcleod(HmProblem(build_grid1(-9.0, 9.0, count)))
        i0 = int(round(4.0 / dx))
        h_on_x = hm.h.values[i0 : i0 + p.grid.axis1.count]
        y = Field2D(p.grid, np.repeat(h_on_x[:, None], p.grid.axis2.count, axis=1))
        r = radial_residual(y, 3).values
        s = p.grid.axis2.nodes()
        expected = -h_on_x[1:-1, None] / s[None, 1:-1] ** 2
        assert np.max(np.abs(r[1:-1, 1:-1] - expected)) < 1e-9

    def test_independent_loop_evaluation_agrees(self, vortex_reference):
        f = vortex_reference.y
        v = f.values
        x = f.grid.axis1.nodes()
        s = f.grid.axis2.nodes()
        h1, h2 = f.grid.axis1.spacing, f.grid.axis2.spacing
        r_vec = radial_residual(f, 3).values
        rng = np.random.default_rng(3)
        # spot check in a scrambled order with scalar arithmetic
        ii = rng.integers(1, f.grid.axis1.count - 1, size=400)
        jj = rng.integers(1, f.grid.axis2.count - 1, size=400)
        worst = 0.0
        for i, j in zip(ii, jj):
            r = (v[i - 1, j] - 2.0 * v[i, j] + v[i + 1, j]) / h1 ** 2
            r += (v[i, j - 1] - 2.0 * v[i, j] + v[i, j + 1]) / h2 ** 2
            r += 1.0 / s[j] * (v[i, j + 1] - v[i, j - 1]) / (2.0 * h2)
            r += -1.0 / s[j] ** 2 * v[i, j] - x[i] * v[i, j] - 2.0 * v[i, j] ** 3
            worst = max(worst, abs(r - r_vec[i, j]))
        assert worst <= 1e-12

    def test_solver_residual_matches_public_evaluator(self, vortex_reference):
        sup = np.max(np.abs(radial_residual(vortex_reference.y, 3).values))
        assert abs(sup - vortex_reference.report.final_residual) <= 1e-12


class TestBoundary:
    def test_corner_mismatch_small(self, vortex_reference):
        assert vortex_reference.report.corner_mismatch < 2e-2

    def test_bottom_left_corner_zero(self, vortex_reference):
        p = reference_problem()
        bd = assemble_boundary(p, vortex_reference.h_used, vortex_reference.gl_used)
        assert bd.field.values[0, 0] == 0.0

    def test_top_edge_at_origin_is_h0(self, vortex_reference):
        p = reference_problem()
        bd = assemble_boundary(p, vortex_reference.h_used, vortex_reference.gl_used)
        i0 = int(np.argmin(np.abs(p.grid.axis1.nodes())))
        assert abs(bd.field.values[i0, -1] - H0) < 1e-6

    def test_insufficient_gl_coverage_rejected(self, vortex_reference):
        p = reference_problem()
        short = Field1D(build_grid1(0.0, 20.0, 101), np.linspace(0.0, 1.0, 101))
        with pytest.raises(CoverageError):
            assemble_boundary(p, vortex_reference.h_used, short)

    def test_insufficient_h_coverage_rejected(self, vortex_reference):
        p = reference_problem()
        short = Field1D(build_grid1(-6.0, 6.0, 101), np.ones(101))
        with pytest.raises(CoverageError):
            assemble_boundary(p, short, vortex_reference.gl_used)


class TestInitialGuess:
    def test_bottom_row_vanishes(self, vortex_reference):
        g = initial_guess(reference_problem(), vortex_reference.h_used)
        assert np.all(g.values[:, 0] == 0.0)

    def test_saturates_to_h_at_large_sigma(self, vortex_reference):
        p = reference_problem()
        g = initial_guess(p, vortex_reference.h_used)
        h_on_x = vortex_reference.h_used.values
        assert np.max(np.abs(g.values[:, -1] - h_on_x)) < 2e-2

    def test_positive_at_interior(self, vortex_reference):
        g = initial_guess(reference_problem(), vortex_reference.h_used)
        assert np.all(g.values[:, 1:] > 0.0)

    def test_proximity_to_boundary_data(self, vortex_reference):
        # bottom/top/right rows sit within 2e-2 of the imposed data; the
        # left edge differs by the tanh-vs-profile gap (~0.26), which the
        # projection removes before iterating
        p = reference_problem()
        bd = assemble_boundary(p, vortex_reference.h_used, vortex_reference.gl_used)
        g = initial_guess(p, vortex_reference.h_used)
        for take in (np.s_[:, 0], np.s_[:, -1], np.s_[-1, :]):
            assert np.max(np.abs(g.values[take] - bd.field.values[take])) < 2e-2
        left_gap = np.max(np.abs(g.values[0, :] - bd.field.values[0, :]))
        assert left_gap < 0.5


class TestSolve:
    def test_converged_below_tolerance(self, vortex_reference):
        assert vortex_reference.report.converged
        assert vortex_reference.report.final_residual < 1e-8

    def test_boundary_rows_equal_assembled_data_exactly(self, vortex_reference):
        p = reference_problem()
        bd = assemble_boundary(p, vortex_reference.h_used, vortex_reference.gl_used)
        v = vortex_reference.y.values
        b = bd.field.values
        assert np.array_equal(v[0, :], b[0, :])
        assert np.array_equal(v[-1, :], b[-1, :])
        assert np.array_equal(v[:, 0], b[:, 0])
        assert np.array_equal(v[:, -1], b[:, -1])

    def test_top_edge_at_origin(self, vortex_reference):
        x = vortex_reference.y.grid.axis1.nodes()
        i0 = int(np.argmin(np.abs(x)))
        assert vortex_reference.y.values[i0, -1] == vortex_reference.h_used.values[i0]

    def test_probes_match_flow_oracle(self, vortex_reference):
        g = vortex_reference.y.grid
        x = g.axis1.nodes()
        s = g.axis2.nodes()
        for (xq, sq), expected in FLOW_ORACLE_PROBES.items():
            i = int(np.argmin(np.abs(x - xq)))
            j = int(np.argmin(np.abs(s - sq)))
            assert abs(vortex_reference.y.values[i, j] - expected) < 5e-4

    def test_strict_positivity_interior(self, vortex_reference):
        assert np.all(vortex_reference.y.values[1:-1, 1:-1] > 0.0)

    def test_amplitude_below_h(self, vortex_reference):
        v = vortex_reference.y.values
        h = vortex_reference.h_used.values
        assert np.all(v[:, :-1] < h[:, None])

    def test_grid_convergence_order_two(self):
        vals = {}
        for c1, c2 in ((41, 35), (81, 69), (161, 137)):
            grid = Grid2D(build_grid1(-5.0, 5.0, c1), build_grid1(0.0, 8.5, c2))
            field = solve_vortex(VortexProblem(n=3, grid=grid, newton_tol=1e-10))
            x = grid.axis1.nodes()
            s = grid.axis2.nodes()
            i = int(np.argmin(np.abs(x)))
            j = int(np.argmin(np.abs(s - 2.0)))
            vals[c1] = field.y.values[i, j]
        ratio = (vals[41] - vals[81]) / (vals[81] - vals[161])
        assert 3.2 <= ratio <= 4.8


class TestEnergy:
    def test_zero_field_has_zero_energy(self):
        p = small_problem()
        e = energy_radial(Field2D(p.grid, np.zeros(p.grid.shape)), 3)
        assert e.gradient == e.centrifugal == e.linear_potential == e.quartic_potential == 0.0
        assert e.total == 0.0

    def test_separable_slab_gradient_term(self):
        # f(x1) constant in sigma on the unit square with n = 3: the
        # gradient term reduces to 1/4 * int f'(x1)^2 dx1
        grid = Grid2D(build_grid1(0.0, 1.0, 201), build_grid1(0.0, 1.0, 201))
        x = grid.axis1.nodes()
        f = np.sin(2.0 * x)
        y = Field2D(grid, np.repeat(f[:, None], 201, axis=1))
        e = energy_radial(y, 3)
        exact = 0.25 * (2.0 + np.sin(4.0) / 2.0)  # 1/4 int_0^1 (2 cos 2x)^2 dx
        assert abs(e.gradient - exact) < 1e-3
        assert e.centrifugal > 0.0  # f does not vanish at sigma = 0 here

    def test_total_is_sum_of_parts(self, vortex_reference):
        e = energy_radial(vortex_reference.y, 3)
        total = e.gradient + e.centrifugal + e.linear_potential + e.quartic_potential
        assert e.total == total

    def test_converged_vortex_energy_is_negative(self, vortex_reference):
        assert energy_radial(vortex_reference.y, 3).total < 0.0


class TestPerturbation:
    def test_zero_amplitude_gives_zero_exactly(self, vortex_reference):
        bump = BumpSpec((-2.0, 4.0), 1.0, 0.0)
        assert perturbation_energy_delta(vortex_reference, bump) == 0.0

    def test_sampled_bumps_increase_energy(self, vortex_reference):
        from painvortex.cli import sample_bumps

        for bump in sample_bumps(reference_problem(), count=25):
            assert perturbation_energy_delta(vortex_reference, bump) > 0.0

    def test_small_amplitude_quadratic_ratio(self, vortex_reference):
        ratios = []
        for amp in (1e-3, 5e-4):
            bump = BumpSpec((-4.0, 6.0), 1.0, amp)
            delta = perturbation_energy_delta(vortex_reference, bump)
            ratios.append(delta / amp ** 2)
        assert abs(ratios[0] / ratios[1] - 1.0) < 0.05

    def test_support_touching_axis_rejected(self, vortex_reference):
        with pytest.raises(SupportError):
            perturbation_energy_delta(vortex_reference, BumpSpec((0.0, 1.0), 1.0, 1e-3))

    def test_support_touching_edges_rejected(self, vortex_reference):
        with pytest.raises(SupportError):
            perturbation_energy_delta(vortex_reference, BumpSpec((-7.5, 6.0), 1.0, 1e-3))
        with pytest.raises(SupportError):
            perturbation_energy_delta(vortex_reference, BumpSpec((0.0, 11.5), 1.0, 1e-3))


class TestProblemValidation:
    def test_dimension_below_three_rejected(self):
        grid = Grid2D(build_grid1(-8.0, 8.0, 21), build_grid1(0.0, 12.0, 21))
        with pytest.raises(ValueError):
            VortexProblem(n=2, grid=grid)

    def test_rectangle_must_cover_regimes(self):
        with pytest.raises(ValueError):
            VortexProblem(n=3, grid=Grid2D(build_grid1(-3.0, 8.0, 21), build_grid1(0.0, 12.0, 21)))
        with pytest.raises(ValueError):
            VortexProblem(n=3, grid=Grid2D(build_grid1(-8.0, 8.0, 21), build_grid1(0.0, 6.0, 21)))
