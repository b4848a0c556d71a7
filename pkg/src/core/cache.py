"""
結果快取模組

以 JSON 檔案保存已完成的計算結果，可選擇同步到 Redis。
快取鍵為 (套件版本, 操作, 參數, 後端, q0) 正規 JSON 的 SHA-256。
"""

import hashlib
import json
import logging
import os
from typing import Any, Dict, Optional

from src import __version__
from src.algebra.qscalar import ScalarField, SpecializedField
from src.core.abstract import ResultCache
from src.core.redis_cache import RedisResultMirror
from src.models.run_config import RunConfig

logger = logging.getLogger(__name__)


def cache_key(op: str, params: Dict[str, Any], field: ScalarField) -> str:
    """計算快取鍵

    Args:
        op: 操作名稱
        params: 操作參數（須可 JSON 序列化）
        field: 計算所用的係數體

    Returns:
        64 字元的十六進位字串
    """
    payload = {
        "version": __version__,
        "op": op,
        "params": params,
        "backend": field.name,
        "q0": str(field.q0) if isinstance(field, SpecializedField) else None,
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class FileResultCache(ResultCache):
    """檔案結果快取

    每個鍵一個 JSON 檔案：<dir>/<key 前兩碼>/<key>.json
    """

    def __init__(self, directory: str, mirror: Optional[RedisResultMirror] = None):
        self.directory = directory
        self.mirror = mirror
        os.makedirs(directory, exist_ok=True)
        logger.debug(f"結果快取目錄: {directory}")

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key[:2], f"{key}.json")

    def get(self, key: str) -> Optional[Any]:
        path = self._path(key)
        if os.path.exists(path):
            try:
                with open(path, "r", encoding="utf-8") as f:
                    return json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"快取檔案損壞，將重新計算: {path} ({e})")
                return None
        if self.mirror is not None:
            value = self.mirror.get(key)
            if value is not None:
                self._write(key, value)
            return value
        return None

    def set(self, key: str, value: Any) -> None:
        self._write(key, value)
        if self.mirror is not None:
            self.mirror.set(key, value)

    def _write(self, key: str, value: Any) -> None:
        path = self._path(key)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = f"{path}.tmp"
        try:
            with open(tmp, "w", encoding="utf-8") as f:
                json.dump(value, f, sort_keys=True, ensure_ascii=False)
            os.replace(tmp, path)
        except OSError as e:
            logger.error(f"寫入快取失敗: {path} ({e})")

    def close(self) -> None:
        if self.mirror is not None:
            self.mirror.close()


class NullResultCache(ResultCache):
    """不保存任何結果（--no-cache）"""

    def get(self, key: str) -> Optional[Any]:
        return None

    def set(self, key: str, value: Any) -> None:
        return None


def create_result_cache(run_config: RunConfig) -> ResultCache:
    """根據執行設定建立結果快取

    Args:
        run_config: 有效的執行設定

    Returns:
        ResultCache 實例
    """
    if not run_config.use_cache:
        logger.info("結果快取已停用")
        return NullResultCache()

    mirror = None
    if run_config.redis_url:
        mirror = RedisResultMirror(run_config.redis_url, namespace=run_config.namespace)
        if not mirror.available:
            mirror = None

    return FileResultCache(run_config.cache_dir, mirror)
