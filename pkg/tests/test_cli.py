"""Command line surface: exit codes, report schemas, determinism."""

import json
import math

import pytest

from tessera.cli import Config, main
from tessera.rules import catalog, load_rule, rule_to_dict

PHI = (1 + math.sqrt(5)) / 2


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestList:
    def test_exit_and_contents(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0
        for name in ("penrose", "square2", "taylor-trapezoid",
                     "silver-1d:<bits>", "cartesian:<bits>"):
            assert name in out

    def test_stable_sorted(self, capsys):
        _, out, _ = run(capsys, "list")
        lines = out.strip().splitlines()
        assert lines == sorted(lines)


class TestVerify:
    def test_penrose(self, capsys):
        code, out, _ = run(capsys, "verify", "penrose", "--depth", "6")
        assert code == 0
        report = json.loads(out)
        assert report["ok"]
        u = catalog("penrose").partition_matrix()
        assert report["tile_count"] == u.power(6).row_sum(0)

    def test_square2_depth_three(self, capsys):
        code, out, _ = run(capsys, "verify", "square2", "--depth", "3")
        assert code == 0
        assert json.loads(out)["tile_count"] == 64

    def test_measure_only_rule_skips_geometry(self, capsys):
        code, out, _ = run(capsys, "verify", "complex-1-plus-i")
        assert code == 0
        assert "skipped" in json.loads(out)["geometry"]

    def test_corrupt_rule_file(self, capsys, tmp_path):
        obj = rule_to_dict(catalog("silver-1d:11"))
        obj["types"][1]["measure"] = ["1", "0"]  # breaks the row relation
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(obj))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        report = json.loads(out)
        assert not report["measure_check"]["ok"]
        assert any("R" in f for f in report["measure_check"]["failures"])

    def test_cap_exceeded_is_exit_two(self, capsys):
        code, _, err = run(capsys, "verify", "silver-1d:11",
                           "--depth", "40", "--cap", "100")
        assert code == 2
        assert "cap" in err

    def test_unknown_rule(self, capsys):
        code, _, err = run(capsys, "verify", "no-such-rule")
        assert code == 1
        assert "unknown rule" in err


class TestAnalyze:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "analyze", "silver-1d:11")
        assert code == 0
        report = json.loads(out)
        assert abs(report["eigenvalue"] - PHI) < 1e-9
        assert report["aperiodicity"]["verdict"] == "aperiodic"
        assert report["two_in_Zrho"] == "none-up-to-20"
        assert report["silver_identity"] is True

    def test_square2_inapplicable(self, capsys):
        _, out, _ = run(capsys, "analyze", "square2")
        report = json.loads(out)
        assert report["eigenvalue"] == pytest.approx(4.0)
        assert report["aperiodicity"]["method"] == "inapplicable"

    def test_cartesian_three_bit_eigenvalue(self, capsys):
        _, out, _ = run(capsys, "analyze", "cartesian:111:isometry")
        report = json.loads(out)
        assert abs(report["eigenvalue"] - 1.839286755 ** 2) < 1e-6

    def test_matrix_included(self, capsys):
        _, out, _ = run(capsys, "analyze", "silver-1d:11")
        assert json.loads(out)["partition_matrix"] == [[1, 1], [1, 0]]


class TestRender:
    def test_tiles(self, capsys, tmp_path):
        out_path = tmp_path / "penrose.svg"
        code, out, _ = run(capsys, "render", "penrose", "--mode", "tiles",
                           "--depth", "4", "--out", str(out_path))
        assert code == 0
        assert out_path.exists()
        assert "wrote" in out

    def test_barcode(self, capsys, tmp_path):
        out_path = tmp_path / "bar.svg"
        code, _, _ = run(capsys, "render", "silver-1d:11", "--mode", "barcode",
                         "--depth", "10", "--out", str(out_path))
        assert code == 0
        assert out_path.read_text().startswith("<?xml")

    def test_mode_dimension_mismatch(self, capsys, tmp_path):
        code, _, err = run(capsys, "render", "silver-1d:11", "--mode", "tiles",
                           "--out", str(tmp_path / "x.svg"))
        assert code == 1
        assert "barcode" in err

    def test_points_and_path_and_curves(self, capsys, tmp_path):
        for mode, rule in (("points", "penrose"), ("path", "penrose"),
                           ("curves", "taylor-trapezoid")):
            out_path = tmp_path / f"{mode}.svg"
            code, _, _ = run(capsys, "render", rule, "--mode", mode,
                             "--depth", "4", "--out", str(out_path))
            assert code == 0
            assert out_path.exists()


class TestProject:
    def test_penrose(self, capsys, tmp_path):
        out_path = tmp_path / "proj.json"
        code, out, _ = run(capsys, "project", "penrose", "--out", str(out_path))
        assert code == 0
        report = json.loads(out)
        digits = report["digits"]
        assert any(abs(d - 1 / PHI) < 1e-9 for d in digits)
        assert any(abs(d - 1.0) < 1e-9 for d in digits)
        loaded = load_rule(out_path)
        assert loaded.dimension == 1
        assert loaded.partition_matrix() == catalog("penrose").partition_matrix()

    def test_one_dimensional_input_rejected(self, capsys, tmp_path):
        code, _, err = run(capsys, "project", "silver-1d:11",
                           "--out", str(tmp_path / "x.json"))
        assert code == 1
        assert "2-D" in err


class TestExpand:
    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, "expand", "penrose", "--depth", "3")
        _, b, _ = run(capsys, "expand", "penrose", "--depth", "3")
        assert a == b

    def test_tile_count(self, capsys):
        _, out, _ = run(capsys, "expand", "ammann-chair", "--depth", "4")
        report = json.loads(out)
        u = catalog("ammann-chair").partition_matrix()
        assert report["tile_count"] == u.power(4).row_sum(0)
        assert len(report["tiles"]) == report["tile_count"]

    def test_inflate_mode(self, capsys):
        _, out, _ = run(capsys, "expand", "penrose", "--depth", "2",
                        "--mode", "inflate")
        report = json.loads(out)
        assert report["mode"] == "inflate"
        assert all(t["scale"] == 0 for t in report["tiles"])


class TestConfig:
    def test_unknown_field_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"tile_cap": 10, "mystery": 1}))
        code, _, err = run(capsys, "verify", "penrose", "--config", str(cfg))
        assert code == 1
        assert "mystery" in err

    def test_cap_from_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"tile_cap": 10}))
        code, _, _ = run(capsys, "verify", "penrose", "--depth", "6",
                         "--config", str(cfg))
        assert code == 2

    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"tile_cap": 10}))
        code, _, _ = run(capsys, "verify", "penrose", "--depth", "4",
                         "--config", str(cfg), "--cap", str(10 ** 6))
        assert code == 0

    def test_invalid_values(self):
        with pytest.raises(ValueError):
            Config(tile_cap=0)
        with pytest.raises(ValueError):
            Config(precision_bits=8)

    def test_style_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"style": {"canvas_width": 400.0}}))
        out_path = tmp_path / "x.svg"
        code, _, _ = run(capsys, "render", "penrose", "--depth", "3",
                         "--out", str(out_path), "--config", str(cfg))
        assert code == 0
        assert 'width="400"' in out_path.read_text()
