import csv
import io
import json

import pytest

from tadgame import cli
from tadgame.scenario import bundled_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def scen(name):
    return str(bundled_path(name))


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", "--config", scen("example1"))
    assert code == cli.EXIT_OK
    assert json.loads(out)["region"] == "OnBarrier"
    code, out, _ = run(capsys, "classify", "--config", scen("example2"))
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["region"] == "R_c"
    assert doc["barrier_value"] > 0
    code, out, _ = run(capsys, "classify", "--config", scen("defender_closer"))
    assert json.loads(out)["region"] == "R_ed"


def test_solve_outside_region_exits_2(capsys):
    code, out, err = run(capsys, "solve", "--config", scen("defender_closer"))
    assert code == cli.EXIT_SOLVER
    assert out == ""
    assert "R_ed" in err


def test_usage_errors_exit_1(capsys, tmp_path):
    assert run(capsys, "nope")[0] == cli.EXIT_USAGE
    assert run(capsys, "classify")[0] == cli.EXIT_USAGE
    assert run(capsys, "classify", "--config", str(tmp_path / "missing.json"))[0] == cli.EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"T": [0, 0], "A": [1, 0], "D": [2, 0], "alpha": 0.5, "bogus": 1}))
    code, _, err = run(capsys, "classify", "--config", str(bad))
    assert code == cli.EXIT_USAGE
    assert "bogus" in err
    bad.write_text(json.dumps({"T": [0, 0], "A": [1, 0], "D": [2, 0], "alpha": 1.5}))
    assert run(capsys, "classify", "--config", str(bad))[0] == cli.EXIT_USAGE
    bad.write_text("{not json")
    assert run(capsys, "classify", "--config", str(bad))[0] == cli.EXIT_USAGE


def test_solve_matches_oracle(capsys):
    code, out, _ = run(capsys, "solve", "--config", scen("example2"))
    assert code == cli.EXIT_OK
    poly = json.loads(out)
    code, out, _ = run(capsys, "solve", "--config", scen("example2"), "--oracle", "--samples", "200000")
    assert code == cli.EXIT_OK
    orc = json.loads(out)
    assert orc["method"] == "oracle"
    assert abs(poly["value"] - orc["value"]) < 1e-6
    assert abs(poly["hji_residual"]) < 1e-9


def test_simulate_csv_header_and_determinism(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    reports = []
    for p in paths:
        code, out, _ = run(capsys, "simulate", "--config", scen("example2"), "--out", str(p))
        assert code == cli.EXIT_OK
        reports.append(json.loads(out))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    for r in reports:
        r.pop("wall_clock_s")
    assert reports[0] == reports[1]
    rows = list(csv.reader(io.StringIO(paths[0].read_text())))
    assert tuple(rows[0]) == cli.CSV_COLUMNS
    assert len(rows) > 2
    assert all(len(r) == len(cli.CSV_COLUMNS) for r in rows)


def test_simulate_json_round_trip(capsys, tmp_path):
    out_path = tmp_path / "traj.json"
    code, out, _ = run(capsys, "simulate", "--config", scen("example3"), "--format", "json",
                       "--out", str(out_path))
    assert code == cli.EXIT_OK
    report = json.loads(out)
    doc = json.loads(out_path.read_text())
    assert doc["columns"] == list(cli.CSV_COLUMNS)
    n = len(doc["data"]["t"])
    assert all(len(v) == n for v in doc["data"].values())
    assert doc["data"]["t"][-1] == pytest.approx(report["t_final"])
    again = json.loads(json.dumps(report))
    assert again == report
    assert report["events"]


def test_sweep_points_on_barrier(capsys, tmp_path):
    out = tmp_path / "pts.csv"
    code, _, err = run(capsys, "sweep", "--config", scen("sweep_symmetric"), "--out", str(out))
    assert code == cli.EXIT_OK
    assert "barrier points" in err
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ["x", "y"]
    assert len(rows) > 10
    regions = tmp_path / "pts_regions.csv"
    assert regions.exists()
    rrows = list(csv.reader(io.StringIO(regions.read_text())))
    assert rrows[0] == ["x", "y", "region"]
    assert len(rrows) == 81 * 81 + 1


def test_verify_passes_and_zero_tolerance_fails(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "20", "--seed", "3")
    assert code == cli.EXIT_OK
    assert json.loads(out)["passed"] is True
    code, out, _ = run(capsys, "verify", "--samples", "20", "--seed", "3", "--tolerance", "0")
    assert code == cli.EXIT_VERIFY
    assert json.loads(out)["passed"] is False


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "--samples", "10", "--seed", "5")[1]
    b = run(capsys, "verify", "--samples", "10", "--seed", "5")[1]
    assert a == b
