import pytest
from pydantic import ValidationError

from selberg.models import EvaluatorSettings, ExperimentConfig, flag_name


def test_defaults_and_helpers():
    config = ExperimentConfig(command="eval", s="2.5+0i", m=1)
    assert config.eval_point() == 2.5 + 0j
    assert config.y == [100.0]
    assert config.shift_window() is None
    witness = ExperimentConfig(command="witness", disk="0.85,0,0.02", target="0.2", T=1000)
    assert witness.shift_window() == (1000.0, 2000.0)


def test_list_flags_split():
    config = ExperimentConfig(command="smooth-check", rect="0.8,0,0.9,0.1", X="64,256,1024")
    assert config.X == [64.0, 256.0, 1024.0]


@pytest.mark.parametrize(
    "kwargs, field",
    [
        ({"command": "eval", "s": "2", "m": -1}, "m"),
        ({"command": "eval", "s": "2 + 1i"}, "s"),
        ({"command": "eval", "s": "2", "y": "1"}, "y"),
        ({"command": "eval", "s": "2", "unknown": 1}, "unknown"),
        ({"command": "eval", "s": "2", "log_level": "LOUD"}, "log_level"),
        ({"command": "witness", "disk": "0.85,0,-1", "target": "0.2", "T": 10}, "disk"),
    ],
)
def test_invalid_fields_are_named(kwargs, field):
    with pytest.raises(ValidationError) as excinfo:
        ExperimentConfig(**kwargs)
    assert excinfo.value.errors()[0]["loc"][0] == field


@pytest.mark.parametrize(
    "kwargs",
    [
        {"command": "eval"},
        {"command": "witness", "target": "0.2", "T": 10},
        {"command": "witness", "disk": "0.85,0,0.02", "T": 10},
        {"command": "witness", "disk": "0.85,0,0.02", "target": "0.2"},
        {"command": "fit-phases", "disk": "0.85,0,0.02", "log_target": "1", "m": 1},
        {"command": "sample-q"},
    ],
)
def test_missing_command_inputs(kwargs):
    with pytest.raises(ValidationError):
        ExperimentConfig(**kwargs)


def test_config_hash_ignores_volatile_fields():
    a = ExperimentConfig(command="eval", s="2", threads=1, out="a.json")
    b = ExperimentConfig(command="eval", s="2", threads=8, out="b.json", log_level="debug")
    c = ExperimentConfig(command="eval", s="2", m=1)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()
    assert "threads" not in a.echo()


def test_flag_name():
    assert flag_name("prime_bound") == "--prime-bound"
    assert flag_name("T") == "--T"


def test_evaluator_settings():
    settings = EvaluatorSettings().with_tolerance(1e-6)
    assert settings.tolerance == 1e-6
    assert settings.split_abscissa == 1.5
