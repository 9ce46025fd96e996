import json

import pytest

from kappa_star.cli import main


def _write(tmp_path, cfg):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return str(p)


def test_empty_suite_list(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["suite", "run", "--config", _write(tmp_path, {"suites": []}), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["cases"] == [] and report["passed"] is True


def test_suite_run_passes(tmp_path):
    out = tmp_path / "r.json"
    assert main(["suite", "run", "--config", _write(tmp_path, {"suites": ["poly_exact"]}), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["passed"] and all(c["passed"] for c in report["cases"])


def test_failing_suite_exits_one(tmp_path, capsys):
    cfg = {"suites": ["moyal"], "tolerances": {"moyal.commutator_center": 1e-30}}
    assert main(["suite", "run", "--config", _write(tmp_path, cfg), "--out", str(tmp_path / "r.json")]) == 1
    assert "FAILED" in capsys.readouterr().err


@pytest.mark.parametrize("cfg", [{"grids": {"v": {"lo": 1.0, "hi": -1.0, "n": 9}}}, {"grids": {"b": {"lo": -8.0, "hi": 8.0, "n": 64}}},
                                 {"suites": ["nope"]}, {"bogus": 1}])
def test_bad_config_exits_two(tmp_path, capsys, cfg):
    assert main(["suite", "run", "--config", _write(tmp_path, cfg)]) == 2
    assert "invalid configuration" in capsys.readouterr().err


def test_missing_section(tmp_path, capsys):
    assert main(["kernel", "--config", _write(tmp_path, {}), "--out-dir", str(tmp_path)]) == 2


def test_product_command(tmp_path, capsys):
    cfg = {"product": {"f": {"V": 1.0, "sigma": 0.8}, "op": "pointwise"}}
    assert main(["product", "--config", _write(tmp_path, cfg), "--out-dir", str(tmp_path / "o")]) == 0
    assert (tmp_path / "o").is_dir() and any(p.suffix == ".csv" for p in (tmp_path / "o").iterdir())


def test_convergence_levels_too_small(tmp_path):
    assert main(["convergence", "--levels", "1", "--out", str(tmp_path / "c.json")]) == 2
