"""Uniform grids, sampled fields, stencils, quadrature, and interpolation.

Conventions
-----------
* Grid1D nodes are ``start + i*spacing`` for ``0 <= i < count``.
* Field2D values are stored as a ``(axis1.count, axis2.count)`` array,
  axis1 varying along rows (row-major flattening matches the on-disk
  layout used by the exporters).
* All operations are pure functions of immutable inputs; nothing here
  mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid1D",
    "Grid2D",
    "Field1D",
    "Field2D",
    "build_grid1",
    "second_derivative",
    "integrate_weighted",
    "interp_bilinear",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid on [start, end] with ``count`` nodes."""

    start: float
    end: float
    count: int

    def __post_init__(self):
        if not (np.isfinite(self.start) and np.isfinite(self.end)):
            raise ValueError("grid bounds must be finite")
        if self.count < 3:
            raise ValueError(f"count must be >= 3, got {self.count}")
        if not self.start < self.end:
            raise ValueError(f"require start < end, got [{self.start}, {self.end}]")

    @property
    def spacing(self) -> float:
        return (self.end - self.start) / (self.count - 1)

    def nodes(self) -> np.ndarray:
        return self.start + self.spacing * np.arange(self.count)


@dataclass(frozen=True)
class Grid2D:
    """Tensor product of two Grid1D axes (axis2 is the radial direction)."""

    axis1: Grid1D
    axis2: Grid1D

    def __post_init__(self):
        if self.axis2.start < 0:
            raise ValueError("axis2 is a radial coordinate and must start at >= 0")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.axis1.count, self.axis2.count)


def _as_finite_array(values, shape):
    arr = np.asarray(values, dtype=float)
    if arr.size != int(np.prod(shape)):
        raise ValueError(f"values length {arr.size} does not match grid size {shape}")
    arr = arr.reshape(shape)
    if not np.all(np.isfinite(arr)):
        raise ValueError("field values must all be finite")
    return arr


@dataclass(frozen=True)
class Field1D:
    """Real samples on a Grid1D, one value per node."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _as_finite_array(self.values, (self.grid.count,)))


@dataclass(frozen=True)
class Field2D:
    """Real samples on a Grid2D, stored as an (n1, n2) array."""

    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _as_finite_array(self.values, self.grid.shape))


def build_grid1(start: float, end: float, count: int) -> Grid1D:
    """Build a uniform grid; spacing is exactly (end - start)/(count - 1)."""
    return Grid1D(float(start), float(end), int(count))


def second_derivative(f: Field1D) -> Field1D:
    """Central second difference, one-sided second-order at the endpoints.

    Exact (to rounding) on affine and quadratic samples.  Interior nodes
    use ``(f[i-1] - 2 f[i] + f[i+1]) / spacing^2``; endpoints use the
    four-point one-sided stencil when the grid has at least four nodes,
    falling back to the three-point stencil on a three-node grid.
    """
    y = f.values
    h2 = f.grid.spacing ** 2
    out = np.empty_like(y)
    out[1:-1] = (y[:-2] - 2.0 * y[1:-1] + y[2:]) / h2
    if f.grid.count >= 4:
        out[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / h2
        out[-1] = (2.0 * y[-1] - 5.0 * y[-2] + 4.0 * y[-3] - y[-4]) / h2
    else:
        out[0] = (y[0] - 2.0 * y[1] + y[2]) / h2
        out[-1] = out[0]
    return Field1D(f.grid, out)


def _trapezoid_weights(grid: Grid1D) -> np.ndarray:
    w = np.full(grid.count, grid.spacing)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def integrate_weighted(f: Field2D, weight_exponent: int) -> float:
    """Trapezoid approximation of the weighted integral of a 2D field.

    Returns the tensor-product trapezoid rule applied to
    ``f(x1, sigma) * sigma**p`` over the grid rectangle, where
    ``p = weight_exponent >= 0`` supplies the radial volume weight of a
    cylindrical reduction.
    """
    p = int(weight_exponent)
    if p < 0:
        raise ValueError(f"weight exponent must be >= 0, got {weight_exponent}")
    w1 = _trapezoid_weights(f.grid.axis1)
    w2 = _trapezoid_weights(f.grid.axis2) * f.grid.axis2.nodes() ** p
    return float(w1 @ f.values @ w2)


def _locate(q: float, grid: Grid1D) -> tuple[int, float]:
    """Cell index and local coordinate for a query on one axis.

    Queries landing exactly on a node return a local coordinate of
    exactly 0.0 or 1.0 so interpolation reproduces stored values
    bit-exactly.
    """
    h = grid.spacing
    i = int(np.floor((q - grid.start) / h))
    i = min(max(i, 0), grid.count - 2)
    lo = grid.start + i * h
    hi = grid.start + (i + 1) * h
    if q == lo:
        return i, 0.0
    if q == hi:
        return i, 1.0
    return i, (q - lo) / h


def interp_bilinear(f: Field2D, x1: float, sigma: float) -> float:
    """Bilinear interpolation from the four surrounding nodes.

    Raises ValueError when the query point lies outside the grid
    rectangle (boundary included).  Exact at grid nodes.
    """
    g1, g2 = f.grid.axis1, f.grid.axis2
    if not (g1.start <= x1 <= g1.end) or not (g2.start <= sigma <= g2.end):
        raise ValueError(
            f"query ({x1}, {sigma}) outside grid rectangle "
            f"[{g1.start}, {g1.end}] x [{g2.start}, {g2.end}]"
        )
    i, u = _locate(x1, g1)
    j, v = _locate(sigma, g2)
    z = f.values
    return float(
        (1.0 - u) * (1.0 - v) * z[i, j]
        + u * (1.0 - v) * z[i + 1, j]
        + (1.0 - u) * v * z[i, j + 1]
        + u * v * z[i + 1, j + 1]
    )
