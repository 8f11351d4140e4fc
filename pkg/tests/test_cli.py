import csv
import math

import numpy as np
import pytest

from hypgap import ProblemParams, SolutionProfile, residual

PI = math.pi


def parse_kv(stdout):
    out = {}
    for line in stdout.strip().splitlines():
        if "=" in line:
            key, _, val = line.partition("=")
            out[key] = val
    return out


def test_gap_output_format(cli):
    res = cli("gap", "--n", 3, "--theta1", 1)
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert [ln.split("=")[0] for ln in lines] == [
        "L_star",
        "L1",
        "lambda_trivial",
        "lambda_gap_top",
        "lambda1",
    ]
    kv = parse_kv(res.stdout)
    assert float(kv["lambda_trivial"]) == 0.75
    assert float(kv["lambda_gap_top"]) == pytest.approx(1.0 + PI**2 / 4.0, abs=1e-8)
    assert float(kv["lambda1"]) == pytest.approx(1.0 + PI**2, abs=1e-8)
    # 12 significant digits
    assert len(kv["lambda_gap_top"].replace(".", "").replace("-", "").lstrip("0")) <= 12


def test_gap_theta1_2(cli):
    kv = parse_kv(cli("gap", "--n", 3, "--theta1", 2).stdout)
    assert float(kv["lambda1"]) == pytest.approx(1.0 + PI**2 / 4.0, abs=1e-8)


def test_gap_usage_errors(cli):
    assert cli("gap", "--n", 5, "--theta1", 1).returncode == 2
    assert cli("gap", "--n", 3, "--theta1", 0).returncode == 2
    assert cli("gap", "--n", 3).returncode == 2
    assert cli("gap", "--n", 3, "--theta1", 1, "--bogus", 1).returncode == 2
    assert cli("nonsense").returncode == 2


def test_sweep_csv(cli, tmp_path):
    out_csv = tmp_path / "sweep.csv"
    out_svg = tmp_path / "sweep.svg"
    res = cli(
        "sweep", "--theta1", 1, "--n-min", 2.5, "--n-max", 3.5, "--n-step", 0.25,
        "--out-csv", out_csv, "--out-svg", out_svg, "--jobs", 1,
    )
    assert res.returncode == 0
    text = out_csv.read_text()
    lines = text.strip().splitlines()
    assert lines[0] == "n,theta1,lambda_trivial,lambda_gap_top,lambda1"
    rows = [list(map(float, ln.split(","))) for ln in lines[1:]]
    assert len(rows) == 5
    ns = [r[0] for r in rows]
    assert ns == sorted(ns)
    for r in rows:
        assert r[2] < r[3] < r[4]
    svg = out_svg.read_text()
    assert svg.count("<polyline") == 3
    assert "<polygon" in svg
    assert 'viewBox="0 0 800 600"' in svg
    assert "stroke-dasharray" in svg


def test_sweep_row_matches_gap_bit_for_bit(cli, tmp_path):
    out_csv = tmp_path / "one.csv"
    res = cli("sweep", "--theta1", 1, "--n-min", 3.0, "--n-max", 3.0, "--n-step", 0.1,
              "--out-csv", out_csv, "--jobs", 1)
    assert res.returncode == 0
    row = out_csv.read_text().strip().splitlines()[1].split(",")
    kv = parse_kv(cli("gap", "--n", 3, "--theta1", 1).stdout)
    assert row[2] == kv["lambda_trivial"]
    assert row[3] == kv["lambda_gap_top"]
    assert row[4] == kv["lambda1"]


def test_sweep_parallel_determinism(cli, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--theta1", 1, "--n-min", 2.6, "--n-max", 3.4, "--n-step", 0.2]
    assert cli(*args, "--out-csv", a, "--jobs", 1).returncode == 0
    assert cli(*args, "--out-csv", b, "--jobs", 2).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_solve_solution_roundtrip(cli, tmp_path):
    out_csv = tmp_path / "profile.csv"
    res = cli("solve", "--n", 3, "--theta1", 1, "--lambda", 7, "--out-csv", out_csv)
    assert res.returncode == 0
    kv = parse_kv(res.stdout)
    assert set(kv) == {"u0", "residual", "Q", "S_n"}
    assert float(kv["Q"]) < float(kv["S_n"])
    assert float(kv["S_n"]) == pytest.approx(5.4779040895313319, rel=1e-11)

    with open(out_csv) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        assert header == ["theta", "u", "du"]
        data = np.array([[float(x) for x in row] for row in reader])
    params = ProblemParams(3.0, 1.0)
    prof = SolutionProfile(7.0, float(kv["u0"]), data[:, 0], data[:, 1], data[:, 2], math.nan)
    recomputed = residual(prof, params, 7.0)
    # 17-digit profile columns round-trip exactly; the printed residual is
    # 12 significant digits
    assert abs(recomputed - float(kv["residual"])) <= 1e-12 * max(1.0, recomputed)


def test_solve_no_solution(cli, tmp_path):
    res = cli("solve", "--n", 3, "--theta1", 1, "--lambda", 3.0,
              "--out-csv", tmp_path / "unused.csv")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "no-solution"
    assert lines[1] == "u0 first_zero"
    assert len(lines) >= 22
    assert not (tmp_path / "unused.csv").exists()


def test_solve_rejected_lambda(cli, tmp_path):
    res = cli("solve", "--n", 3, "--theta1", 1, "--lambda", 12,
              "--out-csv", tmp_path / "unused.csv")
    assert res.returncode == 2
    assert "lambda" in res.stderr


def test_verify_passes(cli):
    res = cli("verify", "--n", 3, "--theta1", 1)
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert len(lines) == 11
    for ln in lines:
        name, value, verdict = ln.split()
        float(value)
        assert verdict == "pass"


def test_verify_tolerance_override_failure(cli):
    res = cli("verify", "--n", 3, "--theta1", 1, "--tol", "derivative_consistency=1e-18")
    assert res.returncode == 1
    assert any(ln.endswith("fail") for ln in res.stdout.strip().splitlines())


def test_verify_bad_tolerance_name(cli):
    res = cli("verify", "--n", 3, "--theta1", 1, "--tol", "nope=1")
    assert res.returncode == 2
