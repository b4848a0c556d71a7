"""
配置管理模組

負責載入和驗證 YAML 配置檔案以及環境變數。
提供統一的配置存取介面。
"""

import os
from typing import Any, Dict, List, Optional

import yaml

from src.algebra.qscalar import parse_rational

# 全域配置快取
_config_cache: Optional[Dict[str, Any]] = None
_config_path: Optional[str] = None

VALID_BACKENDS = ["exact", "specialize"]
VALID_FORMATS = ["json", "csv", "table"]
VALID_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def load_config(config_path: str = "config.yaml") -> Dict[str, Any]:
    """載入配置檔案

    從 YAML 檔案載入配置，並使用環境變數覆蓋特定設定。
    配置會依路徑快取，避免重複讀取檔案。

    Args:
        config_path: YAML 配置檔案路徑

    Returns:
        配置字典

    Raises:
        FileNotFoundError: 當配置檔案不存在時
        yaml.YAMLError: 當 YAML 格式錯誤時
        ValueError: 當配置驗證失敗時

    Example:
        >>> config = load_config("config.yaml")
        >>> print(config['engine']['backend'])
        'specialize'
    """
    global _config_cache, _config_path

    # 如果已快取且路徑相同，直接返回
    if _config_cache is not None and _config_path == config_path:
        return _config_cache

    # 檢查檔案是否存在
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"配置檔案不存在: {config_path}")

    # 載入 YAML 檔案
    with open(config_path, "r", encoding="utf-8") as f:
        config = yaml.safe_load(f)

    if config is None:
        raise ValueError(f"配置檔案為空: {config_path}")
    if not isinstance(config, dict):
        raise ValueError(f"配置檔案頂層必須是映射: {config_path}")

    # 使用環境變數覆蓋配置
    config = _override_with_env(config)

    # 驗證配置結構
    _validate_config(config)

    # 快取配置
    _config_cache = config
    _config_path = config_path

    return config


def _override_with_env(config: Dict[str, Any]) -> Dict[str, Any]:
    """使用環境變數覆蓋配置

    支援的環境變數：
    - BRAID_BACKEND: 計算後端
    - BRAID_Q0: 特殊化點
    - BRAID_SEED: 隨機種子
    - BRAID_MAX_BLOCK: 權重區塊維度上限
    - BRAID_CACHE_DIR: 結果快取目錄
    - REDIS_URL: Redis 連接 URL
    - LOG_LEVEL: 日誌等級
    - LOG_FILE: 日誌檔案

    Args:
        config: 原始配置字典

    Returns:
        覆蓋後的配置字典

    Raises:
        ValueError: 整數型環境變數格式錯誤
    """
    # 計算引擎配置
    if os.getenv("BRAID_BACKEND"):
        config.setdefault("engine", {})["backend"] = os.getenv("BRAID_BACKEND")
    if os.getenv("BRAID_Q0"):
        config.setdefault("engine", {})["q0"] = os.getenv("BRAID_Q0")
    if os.getenv("BRAID_SEED"):
        config.setdefault("engine", {})["seed"] = _env_int("BRAID_SEED")
    if os.getenv("BRAID_MAX_BLOCK"):
        config.setdefault("engine", {})["max_block"] = _env_int("BRAID_MAX_BLOCK")

    # 快取配置
    if os.getenv("BRAID_CACHE_DIR"):
        config.setdefault("cache", {})["dir"] = os.getenv("BRAID_CACHE_DIR")

    # Redis 配置
    if os.getenv("REDIS_URL"):
        config.setdefault("redis", {})["url"] = os.getenv("REDIS_URL")

    # 日誌配置
    if os.getenv("LOG_LEVEL"):
        config.setdefault("logging", {})["level"] = os.getenv("LOG_LEVEL")
    if os.getenv("LOG_FILE"):
        config.setdefault("logging", {})["file"] = os.getenv("LOG_FILE")

    return config


def _env_int(name: str) -> int:
    value = os.getenv(name, "")
    try:
        return int(value)
    except ValueError as e:
        raise ValueError(f"環境變數 {name} 必須是整數: {value!r}") from e


def _validate_config(config: Dict[str, Any]) -> None:
    """驗證配置的有效性

    Args:
        config: 待驗證的配置字典

    Raises:
        ValueError: 當配置缺少必要項目或格式不正確時
    """
    # 驗證計算引擎配置
    if "engine" not in config:
        raise ValueError("配置缺少 'engine' 區塊")

    engine = config["engine"]
    if "backend" not in engine:
        raise ValueError("計算引擎配置缺少 'backend' 欄位")

    backend = str(engine["backend"]).lower()
    if backend not in VALID_BACKENDS:
        raise ValueError(f"不支援的計算後端: {backend}")

    if "q0" in engine:
        q0 = parse_rational(str(engine["q0"]))
        if not q0:
            raise ValueError("特殊化點 q0 不可為 0")
        if backend == "specialize" and abs(q0) == 1:
            raise ValueError(f"specialize 後端不可使用 q0 = {q0}")

    for key in ("seed", "max_block", "max_degree"):
        if key in engine and engine[key] is not None:
            if not isinstance(engine[key], int) or engine[key] < 0:
                raise ValueError(f"計算引擎配置 '{key}' 必須是非負整數: {engine[key]!r}")

    # 驗證輸出配置
    if "output" in config:
        fmt = str(config["output"].get("format", "json")).lower()
        if fmt not in VALID_FORMATS:
            raise ValueError(f"不支援的輸出格式: {fmt}")

    # 驗證快取配置
    if "cache" in config and config["cache"].get("enabled", True):
        if "dir" not in config["cache"]:
            raise ValueError("快取配置缺少 'dir' 欄位")

    # 驗證日誌配置
    if "logging" in config:
        log_config = config["logging"]
        if "level" in log_config:
            if str(log_config["level"]).upper() not in VALID_LEVELS:
                raise ValueError(f"無效的日誌等級: {log_config['level']}")

    # 驗證驗證套件配置
    if "suites" not in config or not config["suites"]:
        raise ValueError("配置缺少 'suites' 區塊或套件列表為空")

    for idx, suite in enumerate(config["suites"]):
        if "name" not in suite:
            raise ValueError(f"驗證套件 #{idx} 缺少 'name' 欄位")
        if "suite_class" not in suite:
            raise ValueError(f"驗證套件 '{suite.get('name')}' 缺少 'suite_class' 欄位")
        if "config" not in suite:
            raise ValueError(f"驗證套件 '{suite.get('name')}' 缺少 'config' 欄位")


def get_config() -> Dict[str, Any]:
    """獲取當前快取的配置

    Returns:
        配置字典

    Raises:
        RuntimeError: 當配置尚未載入時
    """
    if _config_cache is None:
        raise RuntimeError("配置尚未載入，請先呼叫 load_config()")
    return _config_cache


def reload_config(config_path: str = "config.yaml") -> Dict[str, Any]:
    """重新載入配置檔案

    清除快取並重新載入配置。

    Args:
        config_path: YAML 配置檔案路徑

    Returns:
        新的配置字典
    """
    global _config_cache, _config_path
    _config_cache = None
    _config_path = None
    return load_config(config_path)


def get_suites_config() -> List[Dict[str, Any]]:
    """獲取驗證套件配置列表

    Returns:
        驗證套件配置列表
    """
    return get_config().get("suites", [])
