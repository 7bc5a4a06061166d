import json
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from hypothesis import given
from hypothesis import strategies as st

from exit_moments.utils import (
    DEFAULT_CONFIG,
    ConfigLoader,
    ConsoleReporter,
    ResultWriter,
    parse_angle,
    parse_float_list,
    parse_scalar,
)
from exit_moments.utils.errors import (
    BracketFailure,
    ExitMomentsError,
    HorizonTooSmall,
    InvalidInput,
    OutOfRange,
    StepTooLarge,
)
from exit_moments.utils.result_writer import to_builtin

DEFAULTS_YAML = Path(__file__).parent.parent / "config" / "defaults.yaml"


@pytest.mark.parametrize("text, expected", [
    ("0.5", 0.5),
    ("pi", math.pi),
    ("pi/3", math.pi / 3.0),
    ("2pi/3", 2.0 * math.pi / 3.0),
    ("sqrt2", math.sqrt(2.0)),
    ("sqrt(3)", math.sqrt(3.0)),
    ("1e-4", 1e-4),
])
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == pytest.approx(expected, rel=1e-15)


def test_parse_angle_arctan():
    assert parse_angle("atan:sqrt2") == math.atan(math.sqrt(2.0))
    assert parse_angle("atan:2") == math.atan(2.0)
    assert parse_angle("pi/4") == pytest.approx(math.pi / 4.0)


@pytest.mark.parametrize("text", ["abc", "pi/0", "sqrt", ""])
def test_parse_scalar_rejects_garbage(text):
    with pytest.raises(InvalidInput):
        parse_scalar(text)


def test_parse_float_list():
    assert parse_float_list("0, 0.5,1") == [0.0, 0.5, 1.0]
    with pytest.raises(InvalidInput):
        parse_float_list(" , ")


def test_error_hierarchy():
    assert issubclass(OutOfRange, ValueError)
    assert issubclass(StepTooLarge, ValueError)
    assert issubclass(BracketFailure, RuntimeError)
    assert issubclass(HorizonTooSmall, ExitMomentsError)

    error = HorizonTooSmall("仍遞減", partial={"tail_F": 0.1})
    assert error.partial == {"tail_F": 0.1}


def test_defaults_yaml_matches_builtin_defaults():
    assert ConfigLoader(str(DEFAULTS_YAML)).config == DEFAULT_CONFIG


def test_config_file_and_override(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("moments:\n  grid_size: 2048\nsimulation:\n  paths: 10\n", encoding="utf-8")
    loader = ConfigLoader(str(path))
    assert loader.get("moments", "grid_size") == 2048
    assert loader.get("moments", "richardson") is False
    assert loader.get("simulation", "dt") == 1e-4

    loader.override("simulation", "paths", None)
    assert loader.get("simulation", "paths") == 10
    loader.override("simulation", "paths", 20)
    assert loader.get("simulation", "paths") == 20


def test_config_rejects_unknown_section_and_missing_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("plotting:\n  dpi: 300\n", encoding="utf-8")
    with pytest.raises(InvalidInput):
        ConfigLoader(str(path))
    with pytest.raises(InvalidInput):
        ConfigLoader(str(tmp_path / "missing.yaml"))
    with pytest.raises(InvalidInput):
        ConfigLoader().get("moments", "nope")


def test_builtin_defaults_are_not_mutated():
    loader = ConfigLoader()
    loader.override("moments", "grid_size", 17)
    assert DEFAULT_CONFIG["moments"]["grid_size"] == 4096


def test_to_builtin_converts_numpy():
    data = to_builtin({"a": np.float64(0.5), "b": np.arange(3), "c": np.bool_(True), "d": (np.int64(2),)})
    assert data == {"a": 0.5, "b": [0, 1, 2], "c": True, "d": [2]}
    assert type(data["a"]) is float


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_json_keeps_full_precision(value):
    text = ResultWriter().json_text({"value": value})
    assert json.loads(text)["value"] == value


def test_csv_text_header_and_digits():
    frame = pd.DataFrame({"t": [0.0, 0.5], "u1": [0.25, 1.0 / 3.0]})
    text = ResultWriter(float_digits=12).csv_text(frame, ["n=2, r=1.0, method=quadrature"])
    lines = text.splitlines()
    assert lines[0] == "# n=2, r=1.0, method=quadrature"
    assert lines[1] == "t,u1"
    assert lines[3] == "0.5,0.333333333333"
    assert "\r" not in text


def test_emit_to_stdout_and_file(tmp_path, capsys):
    writer = ResultWriter()
    assert writer.save_json({"x": 1}) is None
    assert json.loads(capsys.readouterr().out) == {"x": 1}

    path = writer.save_json({"x": 2}, str(tmp_path / "out" / "report.json"))
    assert json.loads(path.read_text(encoding="utf-8")) == {"x": 2}
    assert ResultWriter.load_json(str(path)) == {"x": 2}


def test_load_json_errors(tmp_path):
    with pytest.raises(InvalidInput):
        ResultWriter.load_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(InvalidInput):
        ResultWriter.load_json(str(broken))


def test_reporter_verbosity(capsys):
    ConsoleReporter(verbosity=0).info("hidden")
    ConsoleReporter(verbosity=1).debug("hidden")
    assert capsys.readouterr().err == ""

    reporter = ConsoleReporter(verbosity=2)
    reporter.step("積分")
    reporter.debug("細節")
    ConsoleReporter(verbosity=0).error("壞了")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.splitlines() == ["🔧 積分", "🐛 細節", "❌ 壞了"]
