"""CSV/JSON serialization of sampled fields.

CSV carries full double precision (17 significant digits).  JSON files
round-trip bit-exactly: values are emitted with Python's shortest
round-trip float representation and re-imported with ``json.load``.
Writes are atomic (temp file in the target directory, then rename), and
byte-stable for identical inputs: metadata holds no timestamps, only a
deterministic fingerprint of the run configuration.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from typing import Any

from .grids import Field1D, Field2D, Grid1D, Grid2D, build_grid1

__all__ = ["export_field", "load_field_json", "config_fingerprint"]


def config_fingerprint(config: dict[str, Any]) -> str:
    """Short deterministic digest of a run configuration."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _axis_dict(grid: Grid1D) -> dict[str, Any]:
    return {"start": grid.start, "end": grid.end, "count": grid.count}


def export_field(
    field: Field1D | Field2D,
    format: str,
    path: str,
    value_label: str = "value",
    meta: dict[str, Any] | None = None,
) -> None:
    """Write a field to ``path`` as CSV or JSON.

    CSV: 1D fields get header ``x,<value_label>``; 2D fields get
    ``x1,sigma,<value_label>`` in row-major node order.  JSON: an object
    with ``grid`` (axes), ``values`` (row-major), and ``meta``.
    """
    if format not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")
    try:
        if format == "csv":
            _atomic_write(path, _to_csv(field, value_label))
        else:
            _atomic_write(path, _to_json(field, meta or {}))
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc


def _to_csv(field: Field1D | Field2D, value_label: str) -> str:
    lines = []
    if isinstance(field, Field1D):
        lines.append(f"x,{value_label}")
        for x, v in zip(field.grid.nodes(), field.values):
            lines.append(f"{x:.17g},{v:.17g}")
    else:
        lines.append(f"x1,sigma,{value_label}")
        xs = field.grid.axis1.nodes()
        ss = field.grid.axis2.nodes()
        for i, x in enumerate(xs):
            for j, s in enumerate(ss):
                lines.append(f"{x:.17g},{s:.17g},{field.values[i, j]:.17g}")
    return "\n".join(lines) + "\n"


def _to_json(field: Field1D | Field2D, meta: dict[str, Any]) -> str:
    if isinstance(field, Field1D):
        axes = [_axis_dict(field.grid)]
        values = field.values.tolist()
    else:
        axes = [_axis_dict(field.grid.axis1), _axis_dict(field.grid.axis2)]
        values = field.values.ravel().tolist()
    doc = {"grid": {"axes": axes}, "values": values, "meta": meta}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_field_json(path: str) -> Field1D | Field2D:
    """Re-import a JSON export; values reproduce the original bit-exactly."""
    with open(path) as fh:
        doc = json.load(fh)
    axes = [build_grid1(a["start"], a["end"], a["count"]) for a in doc["grid"]["axes"]]
    if len(axes) == 1:
        return Field1D(axes[0], doc["values"])
    if len(axes) == 2:
        return Field2D(Grid2D(axes[0], axes[1]), doc["values"])
    raise ValueError(f"{path}: expected 1 or 2 axes, found {len(axes)}")
