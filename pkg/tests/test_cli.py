"""
Tests for the command-line interface
"""
import json
import math

import pytest

from elastic_match.cli import main
from elastic_match.matching.curves import PlCurve
from elastic_match.pipeline.examples import make_example
from elastic_match.pipeline.ingest import write_curve


@pytest.fixture
def ex6_files(tmp_path):
    f1, f2 = make_example("ex6")
    return str(write_curve(f1, tmp_path / "f1.json")), str(write_curve(f2, tmp_path / "f2.json"))


class TestCommands:
    """Successful runs print JSON and return 0"""

    def test_distance(self, ex6_files, capsys):
        assert main(["distance", *ex6_files]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["after"] == pytest.approx(math.sqrt(6 * math.sqrt(3) - 2 * math.sqrt(6)), rel=1e-10)

    def test_identical_curves(self, ex6_files, capsys):
        assert main(["distance", ex6_files[0], ex6_files[0]]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["after"] == pytest.approx(0.0, abs=1e-6)

    def test_match_then_plot(self, ex6_files, tmp_path):
        match_json = tmp_path / "match.json"
        assert main(["match", *ex6_files, "--out", str(match_json)]) == 0
        report = json.loads(match_json.read_text())
        assert report["grid"]["W"] and report["gamma1"]["knots"][0] == [0.0, 0.0]
        svg = tmp_path / "grid.svg"
        assert main(["plot", str(match_json), str(svg)]) == 0
        assert svg.read_text().lstrip().startswith("<?xml")

    def test_geodesic(self, ex6_files, capsys):
        assert main(["geodesic", *ex6_files, "--steps", "3", "--geodesic-mode", "sphere"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["mode"] == "sphere"
        assert len(report["curves"]) == 3

    def test_dp_engine(self, ex6_files, capsys):
        assert main(["distance", *ex6_files, "--engine", "dp", "--dp-refine", "2"]) == 0
        assert json.loads(capsys.readouterr().out)["engine"] == "dp"

    def test_grid(self, ex6_files, capsys):
        assert main(["grid", *ex6_files]) == 0
        dump = json.loads(capsys.readouterr().out)
        assert len(dump["W"]) == 3 and len(dump["W"][0]) == 3

    def test_compare_dp_standin(self, capsys):
        assert main(["compare-dp", "--pareto"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["exact"] <= report["dp"] + 1e-9

    def test_demo(self, tmp_path, capsys):
        assert main(["demo", "ex6", "--outdir", str(tmp_path), "--no-plots"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["id"] == "ex6"
        assert (tmp_path / "ex6" / "match.json").exists()


class TestFailures:
    """Invalid input returns exit code 2 with a message on stderr"""

    def test_missing_file(self, ex6_files, tmp_path, capsys):
        assert main(["distance", ex6_files[0], str(tmp_path / "nope.json")]) == 2
        assert "not found" in capsys.readouterr().err

    def test_dimension_mismatch(self, ex6_files, tmp_path, capsys):
        line = write_curve(PlCurve([0.0, 1.0], [[0.0], [1.0]]), tmp_path / "line.json")
        assert main(["distance", ex6_files[0], str(line)]) == 2
        assert "dimension mismatch" in capsys.readouterr().err

    def test_degenerate_curve(self, ex6_files, tmp_path, capsys):
        point = write_curve(PlCurve([0.0, 1.0], [[1.0, 1.0], [1.0, 1.0]]), tmp_path / "point.json")
        assert main(["match", ex6_files[0], str(point)]) == 2
        assert "degenerate" in capsys.readouterr().err

    def test_geodesic_with_one_step(self, ex6_files, capsys):
        assert main(["geodesic", *ex6_files, "--steps", "1"]) == 2
        assert "at least two steps" in capsys.readouterr().err

    def test_zero_refinement_is_rejected(self, ex6_files):
        with pytest.raises(SystemExit) as exc:
            main(["distance", *ex6_files, "--engine", "dp", "--dp-refine", "0"])
        assert exc.value.code == 2

    def test_compare_dp_needs_both_files(self, ex6_files):
        assert main(["compare-dp", ex6_files[0]]) == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            main(["warp"])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
