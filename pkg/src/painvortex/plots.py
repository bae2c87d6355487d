"""Matplotlib figure rendering for the CLI report path.

Figures are written as PNG files next to the delimited output; nothing
here opens a window (the Agg backend is forced on import).
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .airy import airy_ai  # noqa: E402
from .analysis import CheckReport  # noqa: E402
from .glvortex import GlProfile  # noqa: E402
from .grids import Field1D  # noqa: E402
from .painleve1d import HmSolution, hm_left_asymptote  # noqa: E402
from .vortexfield import VortexField  # noqa: E402

__all__ = [
    "render_hm",
    "render_gl",
    "render_vortex",
    "render_rescaled",
    "render_checks",
]

FIGSIZE = (6.4, 4.2)
DPI = 150


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def render_hm(solution: HmSolution, path: str) -> str:
    x = solution.h.grid.nodes()
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(x, solution.h.values, label="h(x)", lw=1.6)
    left = x[x < 0.0]
    ax.plot(left, [hm_left_asymptote(v) for v in left], "--", label=r"$\sqrt{-x/2}\,(1+1/(8x^3))$")
    right = x[x > 0.0]
    ax.plot(right, [airy_ai(v).value for v in right], ":", label="Ai(x)")
    ax.set_xlabel("x")
    ax.set_ylabel("h")
    ax.set_title("Hastings-McLeod solution and its asymptotes")
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, path)


def render_gl(profile: GlProfile, path: str) -> str:
    r = profile.f.grid.nodes()
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(r, profile.f.values, lw=1.6, label=r"$\eta_{rad}(r)$")
    ax.axhline(1.0, color="k", lw=0.6, alpha=0.5)
    ax.set_xlabel("r")
    ax.set_ylabel(r"$\eta_{rad}$")
    ax.set_title("Ginzburg-Landau vortex profile")
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, path)


def render_vortex(field: VortexField, path: str) -> str:
    g = field.y.grid
    fig, ax = plt.subplots(figsize=(7.2, 4.4))
    im = ax.imshow(
        field.y.values.T,
        origin="lower",
        aspect="auto",
        extent=(g.axis1.start, g.axis1.end, g.axis2.start, g.axis2.end),
        cmap="viridis",
    )
    fig.colorbar(im, ax=ax, label=r"$y_{rad}$")
    ax.set_xlabel(r"$x_1$")
    ax.set_ylabel(r"$\sigma$")
    ax.set_title(f"Reduced vortex field (n = {field.n})")
    return _save(fig, path)


def render_rescaled(slices: list[tuple[float, Field1D]], gl: GlProfile, path: str) -> str:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    tau_max = 0.0
    for t1, fld in slices:
        tau = fld.grid.nodes()
        tau_max = max(tau_max, tau[-1])
        ax.plot(tau, fld.values, lw=1.2, label=rf"$t_1 = {t1:g}$")
    r = gl.f.grid.nodes()
    mask = r <= tau_max
    ax.plot(r[mask], gl.f.values[mask], "k--", lw=1.6, label=r"$\eta_{rad}$")
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel(r"$\tilde y$")
    ax.set_title("Rescaled slices against the vortex profile")
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, path)


def render_checks(reports: list[CheckReport], path: str) -> str:
    fig, ax = plt.subplots(figsize=(7.2, 0.45 * max(4, len(reports))))
    names = [r.name for r in reports]
    ypos = np.arange(len(reports))[::-1]
    colors = ["#2a9d4e" if r.passed else "#d03030" for r in reports]
    ax.barh(ypos, [1.0] * len(reports), color=colors, height=0.6)
    for y, r in zip(ypos, reports):
        label = "pass" if r.passed else f"FAIL ({r.worst_violation:.2e})"
        ax.text(0.02, y, f"{r.name}: {label}", va="center", fontsize=9, color="white")
    ax.set_yticks(ypos)
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xticks([])
    ax.set_xlim(0, 1)
    ax.set_title("Verification checks")
    return _save(fig, path)
