from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from thurston_tri.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_suite_json(capsys):
    code, out, _ = run(capsys, "suite", "--geometry", "nil", "--trials", "50", "--seed", "7")
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == "thurston-tri/1"
    assert data["result"]["summary"]["ceva"]["max_deviation"] < 1e-9


def test_ratio_slr_both_variants(capsys):
    code, out, _ = run(capsys, "ratio", "--geometry", "slr", "--points", "(0,0,0);(0.2,0,0);(0.5,0,0)")
    res = json.loads(out)["result"]
    assert code == 0
    d1, d2 = np.arctan(0.2), np.arctan(0.5) - np.arctan(0.2)
    assert res["translation_distance"]["value"] == pytest.approx(np.tan(d1) / np.tan(d2), rel=1e-12)
    assert res["euclidean"]["value"] == pytest.approx(0.2 / 0.3, rel=1e-12)


def test_surface_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "surface", "--geometry", "nil", "--vertices", "(-1,1,1);(0.5,1,0.5)",
                       "--resolution", "24", "--out", str(tmp_path / "fig1"))
    assert code == 0
    res = json.loads(out)["result"]["surface"]
    obj = (tmp_path / "fig1.obj").read_text().splitlines()
    assert all(line.split()[0] in ("v", "f") for line in obj)
    csv = (tmp_path / "fig1.csv").read_text().splitlines()
    assert csv[0] == "x,y,z,residual"
    assert len(csv) - 1 == res["mesh_vertices"]
    assert max(abs(float(r.split(",")[3])) for r in csv[1:]) < 1e-7


def test_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "figures", "--out", str(tmp_path))
    files = json.loads(out)["result"]["files"]
    assert code == 0
    for n in range(1, 7):
        assert any(f.startswith(f"fig{n}_") for f in files)
    for f in files:
        assert (tmp_path / f).read_text().splitlines()[0] == "x,y,z"


def test_curve_and_distance(capsys):
    code, out, _ = run(capsys, "curve", "--geometry", "nil", "--target", "(1,1,1)")
    assert json.loads(out)["result"]["t"] == pytest.approx(1.5)
    code, out, _ = run(capsys, "curve", "--geometry", "sol", "--direction", "0,1.5707963267948966", "--t", "2")
    np.testing.assert_allclose(json.loads(out)["result"]["point"], (0, 0, 2), atol=1e-15)
    code, out, _ = run(capsys, "distance", "--geometry", "slr", "--points", "(0,0,0);(0.6,0,0)")
    assert json.loads(out)["result"]["distance"] == pytest.approx(np.arctan(0.6))


def test_ceva_and_menelaus(capsys):
    code, out, _ = run(capsys, "ceva", "--geometry", "sol", "--vertices", "(1.25,0.5,1);(0.2,1,0.5)", "--weights", "1,2,3")
    assert code == 0 and json.loads(out)["result"]["report"]["deviation"] < 1e-9
    code, out, _ = run(capsys, "menelaus", "--geometry", "nil", "--vertices", "(-1,1,1);(0.5,1,0.5)", "--seed", "3")
    assert code == 0 and json.loads(out)["result"]["report"]["product"] == pytest.approx(-1.0, abs=1e-9)


def test_validation_errors(capsys, tmp_path):
    code, out, err = run(capsys, "distance", "--geometry", "nil", "--points", "(1,2);(3,4)")
    assert code == 1 and out == ""
    assert json.loads(err)["error"]["type"] == "UsageError"
    code, _, err = run(capsys, "nope")
    assert code == 1
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"geometry": "nil", "trials": 3, "colour": "red"}))
    code, _, err = run(capsys, "suite", "--config", str(cfg))
    assert code == 1 and "colour" in json.loads(err)["error"]["message"]


def test_config_and_env_seed(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"geometry": "sol", "trials": 5}))
    monkeypatch.setenv("THURSTON_TRI_SEED", "11")
    _, out_env, _ = run(capsys, "suite", "--config", str(cfg))
    _, out_flag, _ = run(capsys, "suite", "--config", str(cfg), "--seed", "11")
    assert json.loads(out_env)["result"]["summary"]["seed"] == 11
    assert out_env == out_flag
    _, out_other, _ = run(capsys, "suite", "--config", str(cfg), "--seed", "12")
    assert out_other != out_flag


def test_tolerance_failure_exit_code(capsys):
    code, out, _ = run(capsys, "suite", "--geometry", "nil", "--trials", "5", "--eps-theorem", "1e-300")
    assert code == 2
    assert json.loads(out)["result"]["summary"]["passed"] is False


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "thurston_tri.cli", "suite", "--geometry", "e3", "--trials", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["summary"]["passed"]
