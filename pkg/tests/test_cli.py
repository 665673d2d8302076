import csv
import json

import numpy as np
import pytest

from polyharm.cli import run
from polyharm.config import dumps, format_float
from polyharm.grid import Grid, parse_grid

BIHARMONIC = {"n": 2, "modes": [{"variant": "osc", "omega": 1, "a": 1, "b": 0}],
              "last": {"K": -1, "n": 2, "basis": "exp", "q": [0, 1]}}
WRONG_POWER = {"n": 1, "modes": [{"variant": "osc", "omega": 1}],
               "last": {"K": -1, "n": 1, "basis": "exp", "q": [0, 1], "overcount": True}}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_expand_json(capsys):
    code, out = run_json(capsys, ["expand", "--n", "2", "--m", "2", "--format", "json"])
    assert code == 0
    assert [t["coeff"] for t in out["terms"]] == [1, 2, 1]
    assert out["terms"][0] == {"h": [2, 0], "coeff": 1, "orders": [4, 0]}


def test_expand_csv_and_text(capsys):
    assert run(["expand", "--n", "3", "--m", "2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "coeff,h1,h2,order1,order2"
    assert [int(row.split(",")[0]) for row in lines[1:]] == [1, 3, 3, 1]
    assert run(["expand", "--n", "1", "--m", "2", "--format", "text"]) == 0
    assert "D1^2" in capsys.readouterr().out


def test_expand_bad_dimension(capsys):
    assert run(["expand", "--n", "2", "--m", "0"]) == 2


def test_build(tmp_path, capsys):
    code, out = run_json(capsys, ["build", "--config", write(tmp_path, "s.json", BIHARMONIC)])
    assert code == 0 and out["metrics"]["K"] == -1.0 and out["metrics"]["m"] == 2


def test_build_rejects_unknown_key(tmp_path, capsys):
    bad = json.loads(json.dumps(BIHARMONIC))
    bad["modes"][0]["omeg"] = 1
    assert run(["build", "--config", write(tmp_path, "s.json", bad)]) == 2
    assert "modes[0].omeg" in capsys.readouterr().err


def test_build_rejects_inconsistent_K(tmp_path, capsys):
    bad = json.loads(json.dumps(BIHARMONIC))
    bad["last"]["K"] = 1
    bad["last"]["basis"] = "trig"
    bad["last"].pop("q")
    assert run(["build", "--config", write(tmp_path, "s.json", bad)]) == 2
    assert "last" in capsys.readouterr().err


def test_verify_pass_and_fail(tmp_path, capsys):
    code, out = run_json(capsys, ["verify", "--config", write(tmp_path, "a.json", BIHARMONIC),
                                  "--points", "50", "--seed", "3", "--tol", "1e-9"])
    assert code == 0 and out["status"] == "pass"
    assert out["metrics"]["max_rel"] <= 1e-9
    assert out["thresholds"]["max_rel"] == 1e-9
    code, out = run_json(capsys, ["verify", "--config", write(tmp_path, "b.json", WRONG_POWER)])
    assert code == 1 and out["status"] == "fail"


def test_verify_deterministic(tmp_path, capsys):
    cfg = write(tmp_path, "a.json", BIHARMONIC)
    run(["verify", "--config", cfg, "--seed", "11", "--per-point"])
    first = capsys.readouterr().out
    run(["verify", "--config", cfg, "--seed", "11", "--per-point"])
    assert capsys.readouterr().out == first


def test_fd_verify(tmp_path, capsys):
    code, out = run_json(capsys, ["fd-verify", "--config", write(tmp_path, "a.json", BIHARMONIC),
                                  "--point", "0.7,1.3", "--h-ladder", "default"])
    assert code == 0 and out["verdict"] == "pass"
    assert out["observed_order"] == pytest.approx(2.0, abs=0.3)
    code, out = run_json(capsys, ["fd-verify", "--config", write(tmp_path, "b.json", WRONG_POWER),
                                  "--point", "0.7,1.3"])
    assert code == 1 and out["verdict"] == "fail"


def test_fd_verify_bad_point(tmp_path, capsys):
    assert run(["fd-verify", "--config", write(tmp_path, "a.json", BIHARMONIC),
                "--point", "0.7"]) == 2


def test_sample_round_trip(tmp_path, capsys):
    out_csv = tmp_path / "field.csv"
    assert run(["sample", "--config", write(tmp_path, "a.json", BIHARMONIC),
                "--grid", "x1=-2:2:5,x2=0:4:3", "--out", str(out_csv)]) == 0
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["x1", "x2", "u"] and len(rows) == 16
    meta = json.loads((tmp_path / "field.csv.json").read_text())
    grid = Grid.from_dict(meta["grid"])
    pts = np.array([[float(v) for v in r[:2]] for r in rows[1:]])
    np.testing.assert_array_equal(pts, grid.points())
    x1, x2 = pts.T
    u = np.array([float(r[2]) for r in rows[1:]])
    np.testing.assert_allclose(u, np.cos(x1) * x2 * np.exp(-x2), rtol=1e-15)


def test_halfspace_solve_both(capsys):
    code, out = run_json(capsys, ["halfspace", "solve", "--f", "heaviside", "--route", "both",
                                  "--grid", "x=1:1:1,y=1:1:1"])
    assert code == 0
    vals = out["metrics"]["values"]
    assert vals["u_fourier"][0] == pytest.approx(0.75, abs=1e-6)
    assert vals["u_convolution"][0] == pytest.approx(0.75, abs=1e-6)


def test_halfspace_solve_csv(tmp_path, capsys):
    out = tmp_path / "u.csv"
    assert run(["halfspace", "solve", "--f", "gaussian:1", "--route", "fourier", "--grid",
                "x=-1:1:3,y=0.5:2:4", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["x", "y", "u"] and len(rows) == 13
    side = json.loads((tmp_path / "u.csv.json").read_text())
    assert side["diagnostics"]["fourier"]["nodes_per_axis"] == 400
    assert "truncation_bound" in side["diagnostics"]["fourier"]


def test_halfspace_table_input(tmp_path, capsys):
    xs = np.linspace(-6, 6, 241)
    path = tmp_path / "f.csv"
    np.savetxt(path, np.column_stack([xs, np.exp(-xs**2)]), delimiter=",")
    code, out = run_json(capsys, ["halfspace", "solve", "--f", str(path), "--route", "both",
                                  "--grid", "x=-1:1:3,y=0.5:1:2"])
    assert code == 0 and out["metrics"]["max_route_diff"] <= 1e-4


def test_halfspace_convolution_needs_m2(capsys):
    assert run(["halfspace", "solve", "--f", "gaussian:1", "--m", "3", "--route", "convolution",
                "--grid", "x1=0:0:1,x2=0:0:1,y=1:1:1"]) == 2


def test_halfspace_rejects_boundary_points(capsys):
    assert run(["halfspace", "solve", "--f", "gaussian:1", "--grid", "x=0:1:2,y=0:1:2"]) == 2


def test_cross_validate_cli(capsys):
    code, out = run_json(capsys, ["halfspace", "cross-validate", "--f", "heaviside",
                                  "--tol", "1e-6"])
    assert code == 0 and out["status"] == "pass"
    assert len(out["metrics"]["points"]) == 9
    assert out["metrics"]["max_closed_form_diff"] <= 1e-6


def test_evolve_verify(tmp_path, capsys):
    cfg = write(tmp_path, "st.json", {"n": 1, "modes": [{"variant": "osc", "omega": 1}],
                                      "alpha": 1.0})
    code, out = run_json(capsys, ["evolve", "verify", "--type", "parabolic", "--config", cfg,
                                  "--points", "20", "--tol", "1e-12"])
    assert code == 0 and out["metrics"]["k"] == -1.0
    cfg = write(tmp_path, "bad.json", {"n": 1, "modes": [{"variant": "osc", "omega": 1}],
                                       "beta": 1.0, "k": -0.5})
    code, out = run_json(capsys, ["evolve", "verify", "--type", "hyperbolic", "--config", cfg])
    assert code == 1


def test_evolve_type_key_mismatch(tmp_path, capsys):
    cfg = write(tmp_path, "st.json", {"n": 1, "modes": [{"variant": "osc", "omega": 1}],
                                      "alpha": 1.0})
    assert run(["evolve", "verify", "--type", "hyperbolic", "--config", cfg]) == 2
    assert "alpha" in capsys.readouterr().err


def test_evolve_sample(tmp_path, capsys):
    cfg = write(tmp_path, "st.json", {"n": 1, "modes": [{"variant": "osc", "omega": 1}],
                                      "beta": 1.0})
    out = tmp_path / "st.csv"
    assert run(["evolve", "sample", "--type", "hyperbolic", "--config", cfg,
                "--grid", "x=0:1:3,t=0:1:3", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["x", "t", "u"]
    x, t, u = (float(v) for v in rows[-1])
    assert u == pytest.approx(np.cos(x) * np.cos(t), rel=1e-15)


def test_version(capsys):
    with pytest.raises(SystemExit):
        from polyharm.cli import build_parser
        build_parser().parse_args(["--version"])
    assert capsys.readouterr().out.startswith("polyharm 0.1.0+")


def test_usage_error_exit_code(capsys):
    assert run(["nonexistent"]) == 2
    assert run(["verify"]) == 2


def test_missing_config_file(tmp_path, capsys):
    assert run(["build", "--config", str(tmp_path / "missing.json")]) == 2


def test_float_format():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(2.0) == "2.0"
    assert float(format_float(np.pi)) == np.pi
    assert dumps({"a": [1, 2.5], "b": None}) == '{\n  "a": [1, 2.5],\n  "b": null\n}'


def test_parse_grid():
    g = parse_grid("x1=-2:2:41,x2=0:4:41")
    assert g.counts == (41, 41) and g.spacing == (0.1, 0.1) and g.names == ("x1", "x2")
    with pytest.raises(ValueError):
        parse_grid("x1=0:1")
    with pytest.raises(ValueError):
        parse_grid("x1=1:0:3")
