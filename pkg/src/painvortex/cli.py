"""Command-line front end: solve, verify, and export.

Subcommands
-----------
hm       Hastings-McLeod solve, CSV/JSON export of h(x)
gl       Ginzburg-Landau vortex profile in dimension d = n-1
vortex   reduced 2D vortex solve, optional --check battery
rescale  deep-left rescaled slices against the vortex profile
verify   the full check battery; ``--report`` writes the reports as
         JSON and figures are rendered alongside it

Exit codes: 0 success, 2 bad arguments, 3 solver non-convergence,
4 failed verification checks.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import analysis
from .airy import _ai_asymptotic, _ai_series
from .errors import ConvergenceError, CoverageError, InvariantViolationError, SupportError
from .export import _atomic_write, config_fingerprint, export_field
from .glvortex import GlProblem, GlProfile, solve_gl_profile
from .grids import Grid2D, build_grid1
from .painleve1d import HmProblem, HmSolution, solve_hastings_mcleod
from .solvers import SolveReport
from .vortexfield import BumpSpec, VortexField, VortexProblem, perturbation_energy_delta, solve_vortex

BUMP_SEED = 1234
VORTEX_CHECKS = ("amplitude", "monotonicity", "rescale", "decay", "minimality")


def _parse_grid1(text: str) -> int:
    count = int(text)
    if count < 3:
        raise argparse.ArgumentTypeError(f"grid count must be >= 3, got {count}")
    return count


def _parse_grid2(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected COUNT1xCOUNT2, got {text!r}")
    c1, c2 = int(parts[0]), int(parts[1])
    if c1 < 3 or c2 < 3:
        raise argparse.ArgumentTypeError(f"grid counts must be >= 3, got {text!r}")
    return c1, c2


def _parse_t1_list(text: str) -> list[float]:
    vals = [float(tok) for tok in text.split(",") if tok.strip()]
    if not vals:
        raise argparse.ArgumentTypeError("need at least one t1 value")
    return vals


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="painvortex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    hm = sub.add_parser("hm", help="Hastings-McLeod solve")
    hm.add_argument("--x1-min", type=float, default=-12.0)
    hm.add_argument("--x1-max", type=float, default=12.0)
    hm.add_argument("--grid", type=_parse_grid1, default=4801)
    hm.add_argument("--tol", type=float, default=1e-10)
    hm.add_argument("--max-iter", type=int, default=50)
    hm.add_argument("--out", required=True)
    hm.add_argument("--format", choices=("csv", "json"), default="csv")
    hm.add_argument("--plot-dir")

    gl = sub.add_parser("gl", help="Ginzburg-Landau vortex profile (d = n-1)")
    gl.add_argument("--n", type=int, default=3)
    gl.add_argument("--r-max", type=float, default=20.0)
    gl.add_argument("--grid", type=_parse_grid1, default=4001)
    gl.add_argument("--tol", type=float, default=1e-10)
    gl.add_argument("--max-iter", type=int, default=60)
    gl.add_argument("--out", required=True)
    gl.add_argument("--format", choices=("csv", "json"), default="csv")
    gl.add_argument("--plot-dir")

    vx = sub.add_parser("vortex", help="reduced 2D vortex solve")
    _add_vortex_geometry(vx)
    vx.add_argument("--out")
    vx.add_argument("--format", choices=("csv", "json"), default="csv")
    vx.add_argument("--check", help="comma list of checks or 'all': " + ",".join(VORTEX_CHECKS))
    vx.add_argument("--report", help="write the CheckReport set as JSON")
    vx.add_argument("--plot-dir")

    rs = sub.add_parser("rescale", help="rescaled deep-left slices")
    _add_vortex_geometry(rs)
    rs.add_argument("--t1", type=_parse_t1_list, default=[-6.0, -9.0, -12.0],
                    help="comma-separated negative t1 slices (use --t1=-6,-9,-12)")
    rs.add_argument("--tau-max", type=float, default=3.0)
    rs.add_argument("--count", type=int, default=121)
    rs.add_argument("--out", required=True)
    rs.add_argument("--format", choices=("csv", "json"), default="csv")
    rs.add_argument("--plot-dir")

    vf = sub.add_parser("verify", help="run the full verification battery")
    _add_vortex_geometry(vf)
    vf.add_argument("--report", help="write the CheckReport set as JSON")
    vf.add_argument("--plot-dir", help="figure directory (default: alongside --report)")
    vf.add_argument("--no-plots", action="store_true")
    return parser


def _add_vortex_geometry(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--n", type=int, default=3)
    cmd.add_argument("--x1-min", type=float, default=-8.0)
    cmd.add_argument("--x1-max", type=float, default=8.0)
    cmd.add_argument("--sigma-max", type=float, default=12.0)
    cmd.add_argument("--grid", type=_parse_grid2, default=(321, 241))
    cmd.add_argument("--tol", type=float, default=1e-8)
    cmd.add_argument("--max-iter", type=int, default=30)


def run(argv: list[str]) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _dispatch(args)
    except (ValueError, CoverageError, SupportError, OSError) as exc:
        print(f"painvortex: error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, InvariantViolationError) as exc:
        print(f"painvortex: solver failure: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


def _dispatch(args: argparse.Namespace) -> int:
    return {
        "hm": _cmd_hm,
        "gl": _cmd_gl,
        "vortex": _cmd_vortex,
        "rescale": _cmd_rescale,
        "verify": _cmd_verify,
    }[args.command](args)


# ---------------------------------------------------------------------------
# command bodies

def _meta(report: SolveReport, config: dict) -> dict:
    return {
        "tolerances": {"newton_tol": config.get("tol")},
        "residual": report.final_residual,
        "n": config.get("n"),
        "config": config_fingerprint(config),
    }


def _cmd_hm(args: argparse.Namespace) -> int:
    problem = HmProblem(
        build_grid1(args.x1_min, args.x1_max, args.grid),
        newton_tol=args.tol,
        max_iter=args.max_iter,
    )
    solution = solve_hastings_mcleod(problem)
    config = {"command": "hm", "x1_min": args.x1_min, "x1_max": args.x1_max,
              "grid": args.grid, "tol": args.tol}
    export_field(solution.h, args.format, args.out, value_label="h",
                 meta=_meta(solution.report, config))
    if args.plot_dir:
        from . import plots
        plots.render_hm(solution, f"{args.plot_dir}/hm.png")
    print(f"hm: residual {solution.report.final_residual:.3e} "
          f"in {solution.report.iterations} iterations -> {args.out}")
    return 0


def _cmd_gl(args: argparse.Namespace) -> int:
    problem = GlProblem(d=args.n - 1, grid=build_grid1(0.0, args.r_max, args.grid),
                        newton_tol=args.tol, max_iter=args.max_iter)
    profile = solve_gl_profile(problem)
    config = {"command": "gl", "n": args.n, "r_max": args.r_max,
              "grid": args.grid, "tol": args.tol}
    export_field(profile.f, args.format, args.out, value_label="eta_rad",
                 meta=_meta(profile.report, config))
    if args.plot_dir:
        from . import plots
        plots.render_gl(profile, f"{args.plot_dir}/gl.png")
    print(f"gl: residual {profile.report.final_residual:.3e} "
          f"in {profile.report.iterations} iterations -> {args.out}")
    return 0


def _vortex_problem(args: argparse.Namespace) -> VortexProblem:
    c1, c2 = args.grid
    grid = Grid2D(build_grid1(args.x1_min, args.x1_max, c1),
                  build_grid1(0.0, args.sigma_max, c2))
    return VortexProblem(n=args.n, grid=grid, newton_tol=args.tol, max_iter=args.max_iter)


def _solve_gl_companion(field: VortexField) -> GlProfile:
    return GlProfile(field.gl_used, SolveReport(0, 0.0, True, 0))


def _cmd_vortex(args: argparse.Namespace) -> int:
    problem = _vortex_problem(args)
    wanted: tuple[str, ...] = ()
    if args.check:
        wanted = VORTEX_CHECKS if args.check == "all" else tuple(args.check.split(","))
        unknown = set(wanted) - set(VORTEX_CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
    field = solve_vortex(problem)
    print(f"vortex: residual {field.report.final_residual:.3e} in "
          f"{field.report.iterations} Newton iterations, corner mismatch "
          f"{field.report.corner_mismatch:.3e}")
    config = {"command": "vortex", "n": args.n, "x1_min": args.x1_min,
              "x1_max": args.x1_max, "sigma_max": args.sigma_max,
              "grid": list(args.grid), "tol": args.tol}
    if args.out:
        export_field(field.y, args.format, args.out, value_label="y",
                     meta=_meta(field.report, config))
    if args.plot_dir:
        from . import plots
        plots.render_vortex(field, f"{args.plot_dir}/vortex.png")

    if not wanted:
        return 0
    reports = _field_checks(field, problem, wanted)
    _print_reports(reports)
    if args.report:
        _write_report(args.report, reports)
    return 0 if all(r.passed for r in reports) else 4


def _cmd_rescale(args: argparse.Namespace) -> int:
    problem = _vortex_problem(args)
    field = solve_vortex(problem)
    slices = []
    for t1 in args.t1:
        fld = analysis.rescale_field(field, t1, args.tau_max, args.count)
        err = analysis.gl_comparison_error(fld, _solve_gl_companion(field))
        print(f"rescale: t1 = {t1:g}, sup |y~ - eta| = {err:.4f}")
        slices.append((t1, fld))
    _write_slices(args, slices, field)
    if args.plot_dir:
        from . import plots
        plots.render_rescaled(slices, _solve_gl_companion(field), f"{args.plot_dir}/rescaled.png")
    return 0


def _write_slices(args: argparse.Namespace, slices, field: VortexField) -> None:
    config = {"command": "rescale", "n": args.n, "t1": list(args.t1),
              "tau_max": args.tau_max, "count": args.count, "tol": args.tol}
    if args.format == "csv":
        lines = ["t1,tau,value"]
        for t1, fld in slices:
            for tau, v in zip(fld.grid.nodes(), fld.values):
                lines.append(f"{t1:.17g},{tau:.17g},{v:.17g}")
        _atomic_write(args.out, "\n".join(lines) + "\n")
    else:
        doc = {
            "tau_grid": {"start": 0.0, "end": args.tau_max, "count": args.count},
            "slices": [{"t1": t1, "values": fld.values.tolist()} for t1, fld in slices],
            "meta": _meta(field.report, config),
        }
        _atomic_write(args.out, json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# verification battery

def _airy_branch_check() -> analysis.CheckReport:
    xs = np.linspace(4.0, 8.0, 41)
    rel = np.array([abs(_ai_series(x) / _ai_asymptotic(x) - 1.0) for x in xs])
    i = int(np.argmax(rel))
    worst = float(rel[i])
    return analysis.CheckReport(
        name="airy_branch_agreement",
        passed=bool(worst <= 1e-9),
        worst_violation=worst,
        worst_location=(float(xs[i]), 0.0),
        details=f"max relative series/asymptotic disagreement on [4, 8]: {worst:.3e} (tol 1e-9)",
    )


def _gl_tail_check(profile: GlProfile, d: int) -> analysis.CheckReport:
    r = profile.f.grid.nodes()
    i = int(np.argmin(np.abs(r - 15.0)))
    ident = (1.0 - profile.f.values[i]) * 2.0 * r[i] ** 2 / (d - 1)
    return analysis.CheckReport(
        name="gl_far_field_tail",
        passed=bool(0.9 <= ident <= 1.1),
        worst_violation=float(abs(ident - 1.0)),
        worst_location=(float(r[i]), 0.0),
        details=f"(1 - f(15)) * 2 * 15^2 / (d-1) = {ident:.4f} (window [0.9, 1.1])",
    )


def _solver_check(name: str, report: SolveReport, tol: float) -> analysis.CheckReport:
    extra = ""
    if report.corner_mismatch is not None:
        extra = f"; corner mismatch {report.corner_mismatch:.3e}"
    return analysis.CheckReport(
        name=name,
        passed=bool(report.converged and report.final_residual <= tol),
        worst_violation=report.final_residual,
        worst_location=(0.0, 0.0),
        details=f"residual {report.final_residual:.3e} (tol {tol:.1e}) "
        f"in {report.iterations} iterations{extra}",
    )


def _corner_check(field: VortexField) -> analysis.CheckReport:
    mism = field.report.corner_mismatch
    return analysis.CheckReport(
        name="corner_mismatch",
        passed=bool(mism < 2e-2),
        worst_violation=float(mism),
        worst_location=(field.y.grid.axis1.start, field.y.grid.axis2.end),
        details=f"|h(x1_min) - left-edge formula| = {mism:.3e} (tol 2e-2)",
    )


def _rescale_check(field: VortexField) -> analysis.CheckReport:
    gl = _solve_gl_companion(field)
    errs = []
    for t1 in (-6.0, -9.0, -12.0):
        fld = analysis.rescale_field(field, t1, tau_max=3.0, count=121)
        errs.append(analysis.gl_comparison_error(fld, gl))
    nonincreasing = all(errs[i + 1] <= errs[i] for i in range(len(errs) - 1))
    passed = nonincreasing and errs[-1] < 0.1
    return analysis.CheckReport(
        name="rescaled_gl_limit",
        passed=bool(passed),
        worst_violation=float(errs[-1]),
        worst_location=(-12.0, 0.0),
        details=f"sup errors at t1 = -6, -9, -12: "
        f"{errs[0]:.4f}, {errs[1]:.4f}, {errs[2]:.4f} "
        f"(nonincreasing, last < 0.1)",
    )


def _decay_checks(field: VortexField, hm: HmSolution) -> list[analysis.CheckReport]:
    s = field.y.grid.axis2.nodes()
    j = int(np.argmin(np.abs(s - 6.0)))
    trace = field.y.values[:, j]
    from .grids import Field1D

    slope_v = analysis.fit_decay_rate(Field1D(field.y.grid.axis1, trace), (3.0, 7.0))
    slope_h = analysis.fit_decay_rate(hm.h, (3.0, 8.0))
    return [
        analysis.CheckReport(
            name="decay_vortex",
            passed=bool(abs(slope_v - 1.0) < 0.10),
            worst_violation=float(abs(slope_v - 1.0)),
            worst_location=(0.0, float(s[j])),
            details=f"log-slope vs -(2/3) x1^(3/2) on [3, 7] at sigma = 6: "
            f"{slope_v:.4f} (within 10% of 1)",
        ),
        analysis.CheckReport(
            name="decay_hm",
            passed=bool(abs(slope_h - 1.0) < 0.05),
            worst_violation=float(abs(slope_h - 1.0)),
            worst_location=(0.0, 0.0),
            details=f"log-slope of h on [3, 8]: {slope_h:.4f} (within 5% of 1)",
        ),
    ]


def sample_bumps(problem: VortexProblem, count: int = 100, seed: int = BUMP_SEED):
    """Deterministic admissible bump sample for the minimality smoke test."""
    rng = np.random.default_rng(seed)
    g1, g2 = problem.grid.axis1, problem.grid.axis2
    bumps = []
    for _ in range(count):
        radius = rng.uniform(0.3, 1.5)
        cx = rng.uniform(g1.start + radius + 0.2, g1.end - radius - 0.2)
        cs = rng.uniform(radius + g2.spacing + 0.1, g2.end - radius - 0.2)
        amp = rng.uniform(1e-3, 5e-2) * rng.choice((-1.0, 1.0))
        bumps.append(BumpSpec((cx, cs), radius, amp))
    return bumps


def _minimality_check(field: VortexField, problem: VortexProblem) -> analysis.CheckReport:
    deltas = [perturbation_energy_delta(field, b) for b in sample_bumps(problem)]
    worst = min(deltas)
    return analysis.CheckReport(
        name="minimality_bumps",
        passed=bool(worst > 0.0),
        worst_violation=float(-worst),
        worst_location=(0.0, 0.0),
        details=f"{len(deltas)} random admissible bumps, "
        f"min energy increment {worst:.3e} (must be > 0)",
    )


def _direction_check(hm: HmSolution) -> analysis.CheckReport:
    units = [(1.0, 0.0), (np.sqrt(0.5), np.sqrt(0.5)), (0.6, 0.8)]
    norms = [analysis.verify_1d_vector_direction(hm, u) for u in units]
    spread = max(norms) - min(norms)
    return analysis.CheckReport(
        name="direction_1d",
        passed=bool(spread <= 1e-12),
        worst_violation=float(spread),
        worst_location=(0.0, 0.0),
        details=f"residual norms for three unit directions: "
        f"{norms[0]:.3e}, {norms[1]:.3e}, {norms[2]:.3e} (spread {spread:.1e})",
    )


def _field_checks(field: VortexField, problem: VortexProblem, wanted) -> list[analysis.CheckReport]:
    reports = []
    if "amplitude" in wanted:
        reports.append(analysis.check_amplitude_bound(field, field.h_used))
    if "monotonicity" in wanted:
        reports.append(analysis.check_monotonicity(field))
    if "rescale" in wanted:
        reports.append(_rescale_check(field))
    if "decay" in wanted:
        s = field.y.grid.axis2.nodes()
        j = int(np.argmin(np.abs(s - 6.0)))
        from .grids import Field1D

        slope = analysis.fit_decay_rate(
            Field1D(field.y.grid.axis1, field.y.values[:, j]), (3.0, 7.0)
        )
        reports.append(
            analysis.CheckReport(
                name="decay_vortex",
                passed=bool(abs(slope - 1.0) < 0.10),
                worst_violation=float(abs(slope - 1.0)),
                worst_location=(0.0, float(s[j])),
                details=f"log-slope on [3, 7] at sigma = 6: {slope:.4f}",
            )
        )
    if "minimality" in wanted:
        reports.append(_minimality_check(field, problem))
    return reports


def _cmd_verify(args: argparse.Namespace) -> int:
    hm = solve_hastings_mcleod(
        HmProblem(build_grid1(-12.0, 12.0, 4801), newton_tol=1e-10)
    )
    gl = solve_gl_profile(
        GlProblem(d=args.n - 1, grid=build_grid1(0.0, 20.0, 4001), newton_tol=1e-10)
    )
    problem = _vortex_problem(args)
    field = solve_vortex(problem)

    reports = [
        _solver_check("hm_solve", hm.report, 1e-10),
        analysis.check_hm_asymptotics(hm),
        _airy_branch_check(),
        _solver_check("gl_solve", gl.report, 1e-10),
        _gl_tail_check(gl, args.n - 1),
        _solver_check("vortex_solve", field.report, args.tol),
        _corner_check(field),
        analysis.check_amplitude_bound(field, field.h_used),
        analysis.check_monotonicity(field),
        _rescale_check(field),
        *_decay_checks(field, hm),
        _minimality_check(field, problem),
        analysis.verify_slab_equals_h(),
        _direction_check(hm),
    ]
    _print_reports(reports)
    if args.report:
        _write_report(args.report, reports)
    if not args.no_plots and (args.report or args.plot_dir):
        import os

        from . import plots

        plot_dir = args.plot_dir or os.path.dirname(os.path.abspath(args.report))
        plots.render_hm(hm, f"{plot_dir}/hm.png")
        plots.render_gl(gl, f"{plot_dir}/gl.png")
        plots.render_vortex(field, f"{plot_dir}/vortex.png")
        slices = [
            (t1, analysis.rescale_field(field, t1, 3.0, 121)) for t1 in (-6.0, -9.0, -12.0)
        ]
        plots.render_rescaled(slices, _solve_gl_companion(field), f"{plot_dir}/rescaled.png")
        plots.render_checks(reports, f"{plot_dir}/checks.png")
    return 0 if all(r.passed for r in reports) else 4


def _print_reports(reports: list[analysis.CheckReport]) -> None:
    for r in reports:
        tag = "PASS" if r.passed else "FAIL"
        print(f"{tag} {r.name}: {r.details}")


def _write_report(path: str, reports: list[analysis.CheckReport]) -> None:
    doc = [dataclasses.asdict(r) for r in reports]
    _atomic_write(path, json.dumps(doc, sort_keys=True, indent=2) + "\n")


if __name__ == "__main__":
    main()
