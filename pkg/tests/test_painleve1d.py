import numpy as np
import pytest

from painvortex.airy import airy_ai
from painvortex.grids import Field1D, build_grid1, second_derivative
from painvortex.painleve1d import (
    HmProblem,
    hm_left_asymptote,
    hm_residual,
    solve_hastings_mcleod,
)

# Richardson-extrapolated h(0) from the 4801/9601/19201 ladder on [-12, 12]
H0_ORACLE = 0.36706155154806


class TestLeftAsymptote:
    def test_at_minus_two(self):
        assert hm_left_asymptote(-2.0) == 1.0 * (1.0 - 1.0 / 64.0)

    def test_at_minus_eight(self):
        assert hm_left_asymptote(-8.0) == 2.0 * (1.0 - 1.0 / 4096.0)

    def test_ratio_to_leading_order(self):
        ratio = hm_left_asymptote(-100.0) / np.sqrt(50.0)
        assert abs(ratio - (1.0 - 1.25e-7)) < 1e-12

    def test_uncorrected_flag(self):
        assert hm_left_asymptote(-3.0, corrected=False) == np.sqrt(1.5)

    def test_nonnegative_rejected(self):
        with pytest.raises(ValueError):
            hm_left_asymptote(0.0)
        with pytest.raises(ValueError):
            hm_left_asymptote(2.0)


class TestResidual:
    def test_zero_map_solves(self):
        g = build_grid1(-6.0, 6.0, 101)
        r = hm_residual(Field1D(g, np.zeros(101)))
        assert np.all(r.values == 0.0)

    def test_boundary_rows_zero(self):
        g = build_grid1(-6.0, 6.0, 101)
        r = hm_residual(Field1D(g, np.ones(101)))
        assert r.values[0] == 0.0 and r.values[-1] == 0.0

    def test_airy_sample_leaves_cubic_term(self):
        # Ai'' = x Ai, so the residual of sampled Ai is -2 Ai^3 + O(spacing^2)
        g = build_grid1(-5.0, 5.0, 501)
        x = g.nodes()
        ai = np.array([airy_ai(v).value for v in x])
        r = hm_residual(Field1D(g, ai))
        expected = -2.0 * ai ** 3
        err = np.abs(r.values[1:-1] - expected[1:-1])
        assert np.max(err) < 10.0 * g.spacing ** 2


@pytest.fixture(scope="module")
def hm(hm_reference):
    return hm_reference


class TestSolution:
    def test_converged_below_tolerance(self, hm):
        assert hm.report.converged
        assert hm.report.final_residual <= 1e-10

    def test_residual_of_solution_matches_report(self, hm):
        sup = np.max(np.abs(hm_residual(hm.h).values))
        assert sup == hm.report.final_residual

    def test_boundary_values_imposed_exactly(self, hm):
        assert hm.h.values[0] == hm_left_asymptote(-12.0)
        assert hm.h.values[-1] == airy_ai(12.0).value

    def test_positive_and_strictly_decreasing(self, hm):
        assert np.all(hm.h.values > 0.0)
        assert np.all(np.diff(hm.h.values) < 0.0)

    def test_value_at_origin_vs_frozen_oracle(self, hm):
        i0 = int(np.argmin(np.abs(hm.h.grid.nodes())))
        assert abs(hm.h.values[i0] - H0_ORACLE) < 1e-6

    def test_branch_interpolation_left(self, hm):
        x = hm.h.grid.nodes()
        mask = x <= -6.0
        lead = np.sqrt(-x[mask] / 2.0)
        assert np.max(np.abs(hm.h.values[mask] - lead) / lead) <= 1e-2

    def test_branch_interpolation_right(self, hm):
        x = hm.h.grid.nodes()
        mask = x >= 4.0
        ai = np.array([airy_ai(v).value for v in x[mask]])
        ratio = hm.h.values[mask] / ai
        assert np.all(ratio >= 0.9) and np.all(ratio <= 1.1)

    def test_convexity_relation(self, hm):
        d2 = second_derivative(hm.h).values
        x = hm.h.grid.nodes()
        rhs = x * hm.h.values + 2.0 * hm.h.values ** 3
        err = np.abs(d2[1:-1] - rhs[1:-1])
        assert np.max(err) < 10.0 * hm.h.grid.spacing ** 2


class TestGridConvergence:
    def test_halving_reduces_error_by_factor_near_four(self, hm):
        vals = {4801: hm.h.values[2400]}
        for count in (9601, 19201):
            # finer grids: the residual rounding floor scales as 1/spacing^2
            sol = solve_hastings_mcleod(
                HmProblem(build_grid1(-12.0, 12.0, count), newton_tol=1e-9)
            )
            vals[count] = sol.h.values[(count - 1) // 2]
        r1 = (4.0 * vals[9601] - vals[4801]) / 3.0
        r2 = (4.0 * vals[19201] - vals[9601]) / 3.0
        oracle = (16.0 * r2 - r1) / 15.0
        assert abs(oracle - H0_ORACLE) < 2e-8
        ratio = abs(vals[4801] - oracle) / abs(vals[9601] - oracle)
        assert 3.5 <= ratio <= 4.5


class TestProblemValidation:
    def test_interval_must_reach_asymptotic_regimes(self):
        with pytest.raises(ValueError):
            HmProblem(build_grid1(-3.0, 12.0, 101))
        with pytest.raises(ValueError):
            HmProblem(build_grid1(-12.0, 3.0, 101))

    def test_uncorrected_left_bc_still_converges(self):
        sol = solve_hastings_mcleod(
            HmProblem(build_grid1(-12.0, 12.0, 1201), corrected_left_bc=False)
        )
        assert sol.report.converged
        assert sol.h.values[0] == np.sqrt(6.0)
