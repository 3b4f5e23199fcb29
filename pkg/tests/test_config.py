# tests/test_config.py
"""配置分层合并与验证"""

import pytest

from modules.config.config_manager import ConfigManager, RunConfig, read_yaml
from modules.core.constants import DEFAULT_TOLERANCES, SEED_ENV_VAR
from modules.core.exceptions import ConfigurationError, FileOperationError


def test_defaults():
    config = RunConfig()
    assert config.nbar == 1.0
    assert config.delta == 0.01
    assert config.seed == 1
    assert config.resource_model == "exact"
    assert config.tolerances == DEFAULT_TOLERANCES
    assert config.validate() is config


def test_missing_settings_file_uses_defaults(tmp_path):
    config = ConfigManager(tmp_path / "absent.yaml").build(environ={})
    assert config == RunConfig()


def test_layer_precedence(settings_file, tmp_path):
    extra = tmp_path / "run.yaml"
    extra.write_text("seed: 5\nnbar: 2.0\n", encoding="utf-8")
    manager = ConfigManager(settings_file)

    assert manager.build(environ={}).seed == 1
    assert manager.build(config_file=str(extra), environ={}).seed == 5
    assert manager.build(config_file=str(extra), environ={SEED_ENV_VAR: "7"}).seed == 7
    config = manager.build({"seed": 9, "nbar": None}, config_file=str(extra), environ={SEED_ENV_VAR: "7"})
    assert config.seed == 9
    assert config.nbar == 2.0


def test_blank_seed_variable_is_ignored(settings_file):
    assert ConfigManager(settings_file).build(environ={SEED_ENV_VAR: " "}).seed == 1


def test_non_integer_seed_variable(settings_file):
    with pytest.raises(ConfigurationError):
        ConfigManager(settings_file).build(environ={SEED_ENV_VAR: "abc"})


def test_unknown_key_rejected():
    with pytest.raises(ConfigurationError):
        RunConfig().merged({"api_key": "x"})


@pytest.mark.parametrize("key,value", [
    ("seed", 2.5),
    ("seed", True),
    ("samples", "many"),
    ("delta", "small"),
])
def test_bad_values_rejected(key, value):
    with pytest.raises(ConfigurationError):
        RunConfig().merged({key: value})


def test_string_values_are_coerced():
    config = RunConfig().merged({"seed": "3", "nbar": "0.5", "N": 1e30})
    assert config.seed == 3
    assert config.nbar == 0.5
    assert config.N == "1e+30"


@pytest.mark.parametrize("overrides", [
    {"command": "plot"},
    {"theorem": 3},
    {"figure": "fig9"},
    {"nbar": -1.0},
    {"delta": 1.5},
    {"epsilon": 0.0},
    {"Omega": 1.0},
    {"omega": -0.1},
    {"N": "abc"},
    {"grid_lo": 30.0, "grid_hi": 20.0},
    {"grid_points": 0},
    {"trials": 0},
    {"samples": 0},
    {"iterations": -1},
    {"fmt": "xml"},
    {"resource_model": "fuzzy"},
    {"workers": 0},
])
def test_validate_rejects(overrides):
    with pytest.raises(ConfigurationError):
        RunConfig().merged(overrides).validate()


def test_partial_tolerances_merge():
    config = RunConfig().merged({"tolerances": {"identity": 1e-6}})
    assert config.tolerances.identity == 1e-6
    assert config.tolerances.inequality == DEFAULT_TOLERANCES.inequality


def test_save_and_load(tmp_path):
    config = RunConfig().merged({"command": "verify", "suite": "gentle", "trials": 7, "N": "1e60"})
    path = tmp_path / "nested" / "config.yaml"
    config.save(path)
    assert RunConfig.load(path) == config


def test_read_yaml_errors(tmp_path):
    with pytest.raises(FileOperationError):
        read_yaml(tmp_path / "missing.yaml")
    listing = tmp_path / "list.yaml"
    listing.write_text("- a\n- b\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        read_yaml(listing)
    broken = tmp_path / "broken.yaml"
    broken.write_text("a: [1, 2\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        read_yaml(broken)
    empty = tmp_path / "empty.yaml"
    empty.write_text("", encoding="utf-8")
    assert read_yaml(empty) == {}
