import json
import math

import numpy as np
import pandas as pd
import pytest

from selberg.models import ExperimentConfig
from selberg.pipeline import ReportExporter, create_report
from selberg.pipeline.exporter import to_jsonable


@pytest.fixture
def config():
    return ExperimentConfig(command="eval", s="2+1i", m=1)


def test_to_jsonable_converts_numeric_types():
    converted = to_jsonable(
        {
            "z": 1 + 2j,
            "a": np.array([1.5, 2.5]),
            "i": np.int64(3),
            "b": np.bool_(True),
            "big": math.inf,
            "nested": [np.complex128(0.5j)],
        }
    )
    assert converted == {
        "z": [1.0, 2.0],
        "a": [1.5, 2.5],
        "i": 3,
        "b": True,
        "big": "inf",
        "nested": [[0.0, 0.5]],
    }


def test_report_carries_provenance(config):
    report = ReportExporter().build_report(
        config, {"H": 1 + 1j}, seeds=[4], warnings=["note"], summary={"k": 1}
    )
    assert report["tool"] == "selberg-lab"
    assert report["command"] == "eval"
    assert report["config_hash"] == config.config_hash()
    assert report["config"]["s"] == "2+1i"
    assert "threads" not in report["config"]
    assert report["seeds"] == [4]
    assert report["warnings"] == ["note"]
    assert report["results"] == {"H": [1.0, 1.0]}


def test_validation_finds_nan(config):
    exporter = ReportExporter()
    report = exporter.build_report(config, {"values": [1.0, float("nan")]})
    validation = exporter.validate_report(report)
    assert not validation["is_valid"]
    assert validation["issues"] == ["NaN value at $.results.values[1]"]
    with pytest.raises(ValueError):
        create_report(config, {"values": [float("nan")]})


def test_validation_warns_on_empty_results(config):
    exporter = ReportExporter()
    validation = exporter.validate_report(exporter.build_report(config, {}))
    assert validation["is_valid"]
    assert validation["warnings"] == ["Report has no results"]


def test_written_report_is_reproducible(config, tmp_path):
    frame = pd.DataFrame({"tau": [1.0, 2.0], "h0_re": [0.1, 0.2]})
    path = tmp_path / "out" / "report.json"
    csv_path = tmp_path / "rows.csv"
    first = create_report(config, {"H": 0.5 - 1j}, str(path), frame=frame, csv_path=str(csv_path))
    content = path.read_text(encoding="utf-8")
    create_report(config, {"H": 0.5 - 1j}, str(path), frame=frame, csv_path=str(csv_path))
    assert path.read_text(encoding="utf-8") == content
    assert first["written"]["metadata"] == str(tmp_path / "out" / "report.meta.json")
    meta = json.loads((tmp_path / "out" / "report.meta.json").read_text(encoding="utf-8"))
    assert meta["config_hash"] == config.config_hash()
    assert json.loads(content)["results"] == {"H": [0.5, -1.0]}
    assert pd.read_csv(csv_path)["tau"].tolist() == [1.0, 2.0]


def test_csv_without_report(config, tmp_path):
    frame = pd.DataFrame({"seed": [0, 1]})
    report = create_report(config, {"n": 2}, frame=frame, csv_path=str(tmp_path / "only.csv"))
    assert "written" not in report
    assert (tmp_path / "only.csv").exists()
