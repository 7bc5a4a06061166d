import io
import json
import math

import numpy as np
import pandas as pd
import pytest

from exit_moments.cli import CommandRunner, run
from exit_moments.cli.command_runner import EXIT_MODULE_ERROR, EXIT_OK, EXIT_USAGE


def read_csv(text):
    return pd.read_csv(io.StringIO(text), comment="#")


def test_moments_csv(capsys):
    code = run(["moments", "--profile", "constant:0", "--n", "2", "--r", "1", "--K", "2", "--at", "0", "-q"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.err == ""
    assert captured.out.splitlines()[0] == "# n=2, r=1.0, method=quadrature"
    frame = read_csv(captured.out)
    assert list(frame.columns) == ["t", "u0", "u1", "u2"]
    row = frame.iloc[0]
    assert (row["t"], row["u0"], row["u1"]) == (0.0, 1.0, 0.25)
    assert row["u2"] == pytest.approx(3.0 / 32.0, abs=1e-6)


def test_met_json(capsys):
    code = run(["met", "--profile", "constant:1", "--n", "2", "--r", "1", "--at", "0,0.5", "--format", "json", "-q"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert document["ball"]["n"] == 2
    assert document["E"][0] == pytest.approx(2.0 * math.log(math.cosh(0.5)), abs=1e-7)
    assert document["E"][0] > document["E"][1]


def test_warp_csv(capsys):
    assert run(["warp", "--profile", "constant:1", "--t-max", "2", "-q"]) == EXIT_OK
    frame = read_csv(capsys.readouterr().out)
    assert list(frame.columns) == ["t", "h", "h_prime"]
    assert frame["h"].iloc[-1] == pytest.approx(math.sinh(2.0), rel=1e-11)


def test_bound_json(capsys):
    code = run(["bound", "--profile", "euclidean", "--m", "3", "--l", "1", "--eta", "3", "--r-d", "1", "--K", "2",
                "-q"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert document["theorem1_bound"] == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert document["tower"][1]["bound"] == pytest.approx(2.0 / 36.0, abs=1e-12)


def test_barta_and_profile_output(capsys, tmp_path):
    profile = tmp_path / "barta.csv"
    code = run(["barta", "--m", "2", "--r", "pi/4", "--grid", "256", "--profile-out", str(profile), "-q"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert document["kind"] == "lower_bound"
    assert document["value"] == pytest.approx(4.0, abs=1e-4)
    assert list(read_csv(profile.read_text(encoding="utf-8")).columns) == ["t", "q"]


def test_eigen(capsys):
    assert run(["eigen", "--m", "3", "--r", "atan:sqrt2", "-q"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "shooting"
    assert document["value"] == pytest.approx(6.0, abs=1e-6)


def test_cone_with_given_eigenvalue(capsys):
    assert run(["cone", "--m", "3", "--theta", "atan:sqrt2", "--lambda1", "5.85", "-q"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["corollary"]["verdict"] is True
    assert document["eigenvalue_criterion"]["verdict"] is False
    assert document["eigenvalue_criterion"]["threshold"] == 6


def test_wedge(capsys):
    assert run(["wedge", "--m", "4", "--l", "1", "--k", "0", "--alpha", "1", "-q"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["criterion"] == "wedge"
    assert document["verdict"] is True
    assert document["threshold"] == 2.0


def test_warped_cone_with_supersolution(capsys):
    code = run(["warped-cone", "--l", "2", "--lambda", "4.5", "--r0", "0.1", "--alpha", "0", "--k", "1",
                "--grid", "20001", "--c", "1", "--at", "1", "-q"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert document["satisfiable"] is True
    assert document["c_witness"] == pytest.approx(2.0, rel=1e-6)
    assert document["supersolution"]["u"][0] == pytest.approx(0.875, rel=1e-9)


def test_criteria_batch(capsys, tmp_path):
    path = tmp_path / "cases.json"
    path.write_text(json.dumps([
        {"criterion": "cone", "m": 2, "theta": math.pi / 4.0},
        {"criterion": "theorem2", "m": 2, "l": 1, "b": 4.0, "r_D": 0.5, "max_H": 10.0},
    ]), encoding="utf-8")
    assert run(["criteria", "--input", str(path), "-q"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert [report["verdict"] for report in document] == [True, False]

    assert run(["criteria", "--input", str(path), "--format", "csv", "-q"]) == EXIT_OK
    frame = read_csv(capsys.readouterr().out)
    assert list(frame["criterion_id"]) == ["cone", "theorem2"]


def test_simulate_to_file(capsys, tmp_path):
    output = tmp_path / "sim.json"
    exit_times = tmp_path / "times.bin"
    code = run(["simulate", "--profile", "euclidean", "--n", "2", "--r", "0.5", "--paths", "300", "--dt", "5e-5",
                "--seed", "9", "--exit-times", str(exit_times), "-o", str(output)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.out == ""
    assert "💾" in captured.err
    document = json.loads(output.read_text(encoding="utf-8"))
    assert document["paths_used"] == 300
    assert document["seed"] == 9
    assert np.fromfile(exit_times, dtype="<f8").shape == (300,)


def test_simulate_moment_table_csv(capsys):
    code = run(["simulate", "--profile", "euclidean", "--n", "2", "--r", "0.5", "--paths", "500", "--dt", "5e-5",
                "--seed", "4", "--at", "0,0.25", "--format", "csv", "-q"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.out.splitlines()[0] == "# n=2, r=0.5, method=monte_carlo"
    frame = read_csv(captured.out)
    assert list(frame.columns) == ["t", "u0", "u1", "u2"]
    assert list(frame["t"]) == [0.0, 0.25, 0.5]
    assert frame["u1"].iloc[-1] == 0.0


def test_verify_quick_stage(capsys):
    assert run(["verify", "--quick", "--stages", "predicates", "-q"]) == EXIT_OK
    frame = read_csv(capsys.readouterr().out)
    assert set(frame["stage"]) == {"predicates"}
    assert frame["passed"].all()


@pytest.mark.parametrize("argv", [
    [],
    ["moments", "--profile", "euclidean", "--n", "2", "--K", "1"],
    ["barta", "--m", "3", "--r", "not-an-angle"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(argv) == EXIT_USAGE
    assert "❌" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["met", "--profile", "constant:-1", "--n", "2", "--r", "1"],
    ["moments", "--profile", "euclidean", "--n", "1", "--r", "1", "--K", "1"],
    ["barta", "--m", "3", "--r", "2pi/3"],
    ["cone", "--m", "3", "--theta", "pi/2"],
    ["verify", "--stages", "nonsense"],
    ["warped-cone", "--l", "2", "--lambda", "4.5", "--r0", "0.1"],
])
def test_module_errors(capsys, argv):
    assert run(argv) == EXIT_MODULE_ERROR
    assert "❌" in capsys.readouterr().err


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "moments" in capsys.readouterr().out


def test_config_file_sets_defaults(capsys, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("output:\n  float_digits: 4\n", encoding="utf-8")
    assert CommandRunner().run(["met", "--profile", "euclidean", "--n", "3", "--r", "1", "--at", "0",
                                "--config", str(config), "-q"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "0,0.1667"
