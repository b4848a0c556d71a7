"""
共用測試夾具
"""

from fractions import Fraction
from typing import Any, Dict, List

import pytest
import yaml

from src.algebra.qscalar import SpecializedField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord
from src.models.run_config import RunConfig

# 大範圍計算在特殊化後端上測試
FAST_FIELD = SpecializedField(Fraction(7, 5))


@pytest.fixture
def fast_field() -> SpecializedField:
    return FAST_FIELD


@pytest.fixture
def run_config() -> RunConfig:
    return RunConfig(use_cache=False, timing=False)


@pytest.fixture
def base_config() -> Dict[str, Any]:
    return {
        "engine": {"backend": "specialize", "q0": "7/5", "seed": 0, "max_block": 2000},
        "output": {"format": "json", "timing": False},
        "cache": {"enabled": False},
        "logging": {"level": "WARNING", "file": None},
        "suites": [
            {
                "name": "t-count",
                "enabled": True,
                "suite_class": "TCountSuite",
                "config": {"l_max": 3, "n_max": 4},
            },
            {
                "name": "cubes",
                "enabled": False,
                "suite_class": "CubesSuite",
                "processor_class": "ExactConfirmationProcessor",
                "config": {"l_max": 2},
            },
        ],
    }


@pytest.fixture
def config_file(tmp_path, base_config) -> str:
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(base_config, allow_unicode=True), encoding="utf-8")
    return str(path)


class CountingSuite(VerificationSuite):
    """測試用套件：記錄 compute 被呼叫的次數

    op "ok" 一律通過；"exact-only" 只有精確後端通過；"boom" 拋出 ValueError。
    """

    name = "counting"

    def validate_config(self) -> None:
        self.calls = 0

    def collect_checks(self) -> List[CheckRecord]:
        return self.run("ok", {"x": 1})

    def compute(self, op: str, params: Dict[str, Any], field) -> List[CheckRecord]:
        self.calls += 1
        if op == "boom":
            raise ValueError("壞掉了")
        passed = op == "ok" or field.name == "exact"
        return [CheckRecord(name="counting", params=params, passed=passed, backend=field.name)]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "BRAID_BACKEND",
        "BRAID_Q0",
        "BRAID_SEED",
        "BRAID_MAX_BLOCK",
        "BRAID_CACHE_DIR",
        "REDIS_URL",
        "LOG_LEVEL",
        "LOG_FILE",
    ):
        monkeypatch.delenv(name, raising=False)
