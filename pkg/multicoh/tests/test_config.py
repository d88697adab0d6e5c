"""Tests for configuration loading and environment overrides."""

import json

import pytest

from multicoh.config.loader import ConfigurationError, load_config, save_config
from multicoh.config.models import AppConfig
from multicoh.config.settings import effective_workers


def write_config(tmp_path, data) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestLoadConfig:
    def test_defaults(self):
        config = load_config(None)
        assert config.check.arity_bound == 3
        assert config.check.max_workers == 1
        assert config.check.cross_validate_phi
        assert config.demo.monoid_orders == [2, 3, 4]
        assert config.demo.corpus_size == 50
        assert config.demo.algebra_order == 3
        assert config.logging.level == "WARNING"

    def test_partial_file(self, tmp_path):
        path = write_config(tmp_path, {"_comment": "demo", "demo": {"seed": 9},
                                       "logging": {"level": "debug"}})
        config = load_config(path)
        assert config.demo.seed == 9
        assert config.logging.level == "DEBUG"
        assert config.check.arity_bound == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            load_config(str(tmp_path / "none.json"))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Invalid JSON"):
            load_config(str(path))

    @pytest.mark.parametrize("data,field", [
        ({"check": {"arity_bound": 7}}, "arity_bound"),
        ({"check": {"max_workers": 0}}, "max_workers"),
        ({"demo": {"monoid_orders": [2, 0]}}, "monoid_orders"),
        ({"demo": {"monoid_orders": []}}, "monoid_orders"),
        ({"logging": {"level": "LOUD"}}, "level"),
        ({"server": {}}, "server"),
    ])
    def test_validation_names_the_field(self, tmp_path, data, field):
        with pytest.raises(ConfigurationError) as info:
            load_config(write_config(tmp_path, data))
        assert field in str(info.value)

    def test_save_and_reload(self, tmp_path):
        config = AppConfig()
        config.demo.seed = 4
        path = str(tmp_path / "saved.json")
        save_config(config, path)
        assert load_config(path) == config


class TestWorkers:
    def test_flag_replaces_config(self, monkeypatch):
        monkeypatch.delenv("MULTICOH_THREADS", raising=False)
        assert effective_workers(2, flag=5) == 5

    def test_environment_caps_config(self, monkeypatch):
        monkeypatch.setenv("MULTICOH_THREADS", "8")
        assert effective_workers(2) == 2
        monkeypatch.setenv("MULTICOH_THREADS", "3")
        assert effective_workers(6) == 3

    def test_environment_caps_flag(self, monkeypatch):
        monkeypatch.setenv("MULTICOH_THREADS", "3")
        assert effective_workers(2, flag=5) == 3

    def test_config_value(self, monkeypatch):
        monkeypatch.delenv("MULTICOH_THREADS", raising=False)
        assert effective_workers(2) == 2

    def test_at_least_one(self, monkeypatch):
        monkeypatch.delenv("MULTICOH_THREADS", raising=False)
        assert effective_workers(0, flag=0) == 1

    @pytest.mark.parametrize("value", ["0", "abc"])
    def test_invalid_environment(self, monkeypatch, value):
        monkeypatch.setenv("MULTICOH_THREADS", value)
        with pytest.raises(ConfigurationError, match="threads"):
            effective_workers(2)
