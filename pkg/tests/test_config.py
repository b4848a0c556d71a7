"""
配置載入與執行設定測試
"""

import pytest
import yaml
from pydantic import ValidationError

from src.config.config import get_config, get_suites_config, reload_config
from src.models.run_config import RunConfig


def _write(tmp_path, data) -> str:
    path = tmp_path / "custom.yaml"
    path.write_text(yaml.safe_dump(data, allow_unicode=True), encoding="utf-8")
    return str(path)


class TestLoadConfig:
    def test_load(self, config_file):
        config = reload_config(config_file)
        assert config["engine"]["backend"] == "specialize"
        assert get_config() is config
        assert [s["name"] for s in get_suites_config()] == ["t-count", "cubes"]

    def test_env_override(self, config_file, monkeypatch):
        monkeypatch.setenv("BRAID_BACKEND", "exact")
        monkeypatch.setenv("BRAID_SEED", "42")
        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        config = reload_config(config_file)
        assert config["engine"]["backend"] == "exact"
        assert config["engine"]["seed"] == 42
        assert config["logging"]["level"] == "DEBUG"

    def test_bad_env_integer(self, config_file, monkeypatch):
        monkeypatch.setenv("BRAID_SEED", "many")
        with pytest.raises(ValueError):
            reload_config(config_file)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            reload_config(str(tmp_path / "nope.yaml"))

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError):
            reload_config(str(path))

    @pytest.mark.parametrize(
        "section,key,value",
        [
            ("engine", "backend", "numeric"),
            ("engine", "q0", "1"),
            ("engine", "q0", "0"),
            ("engine", "max_block", -5),
            ("output", "format", "xml"),
            ("logging", "level", "LOUD"),
        ],
    )
    def test_invalid_values(self, tmp_path, base_config, section, key, value):
        base_config[section][key] = value
        with pytest.raises(ValueError):
            reload_config(_write(tmp_path, base_config))

    def test_exact_backend_allows_q0_one(self, tmp_path, base_config):
        base_config["engine"].update({"backend": "exact", "q0": "1"})
        assert reload_config(_write(tmp_path, base_config))["engine"]["backend"] == "exact"

    def test_empty_suites(self, tmp_path, base_config):
        base_config["suites"] = []
        with pytest.raises(ValueError):
            reload_config(_write(tmp_path, base_config))

    def test_suite_without_class(self, tmp_path, base_config):
        del base_config["suites"][0]["suite_class"]
        with pytest.raises(ValueError):
            reload_config(_write(tmp_path, base_config))


class TestRunConfig:
    def test_defaults(self):
        rc = RunConfig()
        assert rc.backend == "specialize"
        assert rc.q0 == "7/5"
        assert rc.make_field().name == "specialize"
        assert rc.report_config() == {"backend": "specialize", "seed": 0, "max_block": 2000, "q0": "7/5"}

    def test_q0_normalized(self):
        assert RunConfig(q0="14/10").q0 == "7/5"

    def test_exact_report_omits_q0(self):
        rc = RunConfig(backend="EXACT")
        assert rc.backend == "exact"
        assert "q0" not in rc.report_config()
        assert rc.make_field().name == "exact"

    @pytest.mark.parametrize(
        "values",
        [
            {"q0": "1"},
            {"q0": "-1"},
            {"q0": "0"},
            {"q0": "abc"},
            {"backend": "numeric"},
            {"format": "xml"},
            {"max_block": 0},
            {"seed": -1},
        ],
    )
    def test_invalid(self, values):
        with pytest.raises(ValidationError):
            RunConfig(**values)
