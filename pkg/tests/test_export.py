import json

import numpy as np
import pytest

from painvortex.export import config_fingerprint, export_field, load_field_json
from painvortex.grids import Field1D, Field2D, Grid2D, build_grid1


def field1(count=3):
    g = build_grid1(0.0, 1.0, count)
    return Field1D(g, np.zeros(count))


def field2():
    g2 = Grid2D(build_grid1(-1.0, 1.0, 5), build_grid1(0.0, 2.0, 4))
    rng = np.random.default_rng(11)
    return Field2D(g2, rng.standard_normal(g2.shape))


class TestCsv:
    def test_1d_line_count_and_header(self, tmp_path):
        path = tmp_path / "f.csv"
        export_field(field1(), "csv", str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "x,value"
        assert len(lines) == 4

    def test_custom_value_label(self, tmp_path):
        path = tmp_path / "h.csv"
        export_field(field1(), "csv", str(path), value_label="h")
        assert path.read_text().splitlines()[0] == "x,h"

    def test_2d_row_major_layout(self, tmp_path):
        f = field2()
        path = tmp_path / "f2.csv"
        export_field(f, "csv", str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "x1,sigma,value"
        assert len(lines) == 1 + 5 * 4
        # second row is node (0, 1) in row-major order
        x1, sigma, value = lines[2].split(",")
        assert float(x1) == -1.0
        assert float(sigma) == f.grid.axis2.nodes()[1]
        assert float(value) == f.values[0, 1]

    def test_full_precision_roundtrip_through_text(self, tmp_path):
        g = build_grid1(0.0, 1.0, 3)
        vals = np.array([1.0 / 3.0, np.pi, np.e])
        path = tmp_path / "p.csv"
        export_field(Field1D(g, vals), "csv", str(path))
        parsed = [float(line.split(",")[1]) for line in path.read_text().splitlines()[1:]]
        assert np.array_equal(np.array(parsed), vals)


class TestJson:
    def test_roundtrip_bit_exact(self, tmp_path):
        f = field2()
        path = tmp_path / "f.json"
        export_field(f, "json", str(path), meta={"n": 3})
        back = load_field_json(str(path))
        assert np.array_equal(back.values, f.values)
        assert back.grid.axis1 == f.grid.axis1
        assert back.grid.axis2 == f.grid.axis2

    def test_1d_roundtrip(self, tmp_path):
        g = build_grid1(-2.0, 2.0, 7)
        vals = np.linspace(-1.0, 1.0, 7) ** 3
        path = tmp_path / "f1.json"
        export_field(Field1D(g, vals), "json", str(path))
        back = load_field_json(str(path))
        assert np.array_equal(back.values, vals)

    def test_meta_preserved(self, tmp_path):
        path = tmp_path / "m.json"
        export_field(field1(), "json", str(path), meta={"residual": 1e-11, "n": 3})
        doc = json.loads(path.read_text())
        assert doc["meta"]["residual"] == 1e-11
        assert doc["meta"]["n"] == 3

    def test_byte_stable(self, tmp_path):
        f = field2()
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        export_field(f, "json", str(p1), meta={"config": "abc"})
        export_field(f, "json", str(p2), meta={"config": "abc"})
        assert p1.read_bytes() == p2.read_bytes()


class TestMisc:
    def test_unknown_format_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            export_field(field1(), "xml", str(tmp_path / "f.xml"))

    def test_unwritable_path_errors_with_context(self):
        with pytest.raises(OSError):
            export_field(field1(), "csv", "/proc/definitely/not/writable.csv")

    def test_fingerprint_deterministic(self):
        a = config_fingerprint({"n": 3, "tol": 1e-8})
        b = config_fingerprint({"tol": 1e-8, "n": 3})
        assert a == b
        assert len(a) == 12
