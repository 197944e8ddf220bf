import json

import numpy as np
import pytest

from gluecop.cli import main, read_xy_csv
from gluecop.errors import DataError


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def tent_csv(tmp_path, capsys):
    path = tmp_path / "tent.csv"
    code, _, _ = run(capsys, "simulate", "example1", "--theta", "0.5",
                     "--n", "800", "--seed", "1", "--out", str(path))
    assert code == 0
    return path


class TestReadCsv:
    def test_header_autodetected(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("x,y\n1,2\n3,4\n")
        s = read_xy_csv(str(p))
        assert s.n == 2 and s.x[1] == 3.0

    def test_no_header(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,2\n3,4\n")
        assert read_xy_csv(str(p)).n == 2

    def test_bad_row_reports_line_number(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,2\noops,4\n5,6\n")
        with pytest.raises(DataError, match="lines: 2"):
            read_xy_csv(str(p))

    def test_missing_file(self):
        with pytest.raises(DataError):
            read_xy_csv("/nonexistent/path.csv")


class TestSimulate:
    def test_stdout_header_and_shape(self, capsys):
        code, out, _ = run(capsys, "simulate", "example1", "--n", "5",
                           "--seed", "3")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "x,y"
        assert len(lines) == 6

    def test_deterministic(self, capsys):
        a = run(capsys, "simulate", "example4", "--n", "20", "--seed", "9")
        b = run(capsys, "simulate", "example4", "--n", "20", "--seed", "9")
        assert a == b

    def test_n_zero_is_usage_error(self, capsys):
        code, _, err = run(capsys, "simulate", "example1", "--n", "0")
        assert code == 1
        assert "error" in err

    def test_unknown_model_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "simulate", "example9", "--n", "10")
        assert code == 1


class TestAnalyze:
    def test_tent_report(self, tent_csv, capsys):
        code, out, _ = run(capsys, "analyze", str(tent_csv))
        assert code == 0
        doc = json.loads(out)
        assert doc["schema_version"] == 1
        assert doc["n"] == 800
        assert doc["mixed_dependence"] is True
        assert len(doc["candidates"]) == 1
        assert abs(doc["candidates"][0] - 0.5) < 0.07
        assert abs(doc["rho_hat"]) < 0.2
        assert doc["sigma_hat"] > 0.3

    def test_small_sample_warning_field(self, tmp_path, capsys):
        p = tmp_path / "small.csv"
        rng = np.random.default_rng(0)
        rows = "\n".join(f"{a},{b}" for a, b in rng.uniform(size=(20, 2)))
        p.write_text(rows + "\n")
        code, out, _ = run(capsys, "analyze", str(p))
        assert code == 0
        assert "warning" in json.loads(out)

    def test_missing_file_is_data_error(self, capsys):
        code, _, err = run(capsys, "analyze", "/nope.csv")
        assert code == 2
        assert "data error" in err


class TestFitPredict:
    def test_round_trip(self, tent_csv, tmp_path, capsys):
        model_path = tmp_path / "model.json"
        code, out, _ = run(capsys, "fit", str(tent_csv),
                           "--out-model", str(model_path))
        assert code == 0
        assert "frechet-upper" in out and "frechet-lower" in out
        doc = json.loads(model_path.read_text())
        assert doc["schema_version"] == 1
        assert len(doc["segment_copulas"]) == 2

        pred_path = tmp_path / "pred.csv"
        code, _, _ = run(capsys, "predict", str(model_path),
                         "--x-min", "0.05", "--x-max", "0.95",
                         "--num", "91", "--out", str(pred_path))
        assert code == 0
        rows = pred_path.read_text().strip().split("\n")
        assert rows[0] == "x,mu"
        data = np.array([[float(t) for t in r.split(",")] for r in rows[1:]])
        tent_true = np.where(data[:, 0] <= 0.5, data[:, 0] / 0.5,
                             (1 - data[:, 0]) / 0.5)
        assert np.sqrt(np.mean((data[:, 1] - tent_true) ** 2)) < 0.05

    def test_explicit_breakpoints_and_families(self, tent_csv, tmp_path, capsys):
        model_path = tmp_path / "m.json"
        code, _, _ = run(capsys, "fit", str(tent_csv), "--breakpoints", "0.5",
                         "--families", "frechet-upper,frechet-lower,product",
                         "--out-model", str(model_path))
        assert code == 0
        assert json.loads(model_path.read_text())["break_points"] == [0.5]

    def test_unknown_family_is_usage_error(self, tent_csv, tmp_path, capsys):
        code, _, _ = run(capsys, "fit", str(tent_csv), "--families", "gaussian",
                         "--out-model", str(tmp_path / "m.json"))
        assert code == 1

    def test_predict_outside_support_nan_vs_strict(self, tent_csv, tmp_path,
                                                   capsys):
        model_path = tmp_path / "m.json"
        run(capsys, "fit", str(tent_csv), "--breakpoints", "0.5",
            "--out-model", str(model_path))
        code, out, err = run(capsys, "predict", str(model_path),
                             "--x-min", "-1", "--x-max", "2", "--num", "7")
        assert code == 0
        assert "outside" in err
        assert "nan" in out
        code, _, _ = run(capsys, "predict", str(model_path), "--x-min", "-1",
                         "--x-max", "2", "--num", "7", "--strict")
        assert code == 2

    def test_predict_bad_range(self, tent_csv, tmp_path, capsys):
        model_path = tmp_path / "m.json"
        run(capsys, "fit", str(tent_csv), "--breakpoints", "0.5",
            "--out-model", str(model_path))
        code, _, _ = run(capsys, "predict", str(model_path), "--x-min", "0.9",
                         "--x-max", "0.1")
        assert code == 1


class TestMeasures:
    def test_family_report(self, capsys):
        code, out, _ = run(capsys, "measures", "--family", "clayton",
                           "--theta", "3.0")
        assert code == 0
        doc = json.loads(out)
        assert doc["quadrant_class"] == "PQD"
        assert doc["regression_class"] == "PRD"
        assert doc["sigma"] == pytest.approx(doc["rho"], abs=2e-3)

    def test_dataset_report(self, tent_csv, capsys):
        code, out, _ = run(capsys, "measures", str(tent_csv))
        assert code == 0
        doc = json.loads(out)
        assert doc["quadrant_class"] == "NEITHER"
        assert doc["sigma"] > 0.3

    def test_both_sources_is_usage_error(self, tent_csv, capsys):
        code, _, _ = run(capsys, "measures", str(tent_csv), "--family",
                         "clayton", "--theta", "2")
        assert code == 1

    def test_neither_source_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "measures")
        assert code == 1

    def test_bad_theta_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "measures", "--family", "clayton",
                         "--theta", "-2")
        assert code == 1
