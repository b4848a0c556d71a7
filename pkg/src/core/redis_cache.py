"""
Redis 結果鏡像

將結果快取同步寫入 Redis，讓多台機器共用已完成的計算。
Redis 無法連線時記錄錯誤並降級為不使用鏡像。
"""

import json
import logging
from typing import Any, Optional

import redis

logger = logging.getLogger(__name__)


class RedisResultMirror:
    """結果快取的 Redis 鏡像

    每個結果存成一個字串鍵 `<namespace>:result:<key>`，值為 JSON。
    """

    def __init__(self, redis_url: str, namespace: str = "braidcheck"):
        """初始化鏡像

        Args:
            redis_url: Redis 連接 URL (例如: redis://localhost:6379/0)
            namespace: 命名空間，用於區分不同的專案
        """
        self.redis_url = redis_url
        self.namespace = namespace

        # Redis key 定義
        self.key_prefix = f"{namespace}:result:"

        # Redis 連接
        self.redis_client: Optional[redis.Redis] = None

        # 嘗試連接
        self._connect()

    def _connect(self) -> None:
        """建立 Redis 連接"""
        try:
            self.redis_client = redis.from_url(
                self.redis_url,
                decode_responses=True,  # 自動解碼為字串
                socket_connect_timeout=5,
                socket_timeout=5,
            )
            # 測試連接
            self.redis_client.ping()
            logger.info(f"成功連接到 Redis: {self.redis_url}")

        except redis.ConnectionError as e:
            logger.error(f"連接 Redis 失敗: {e}")
            logger.warning("將在不使用 Redis 鏡像的情況下繼續執行")
            self.redis_client = None

        except Exception as e:
            logger.error(f"Redis 初始化失敗: {e}")
            self.redis_client = None

    @property
    def available(self) -> bool:
        return self.redis_client is not None

    def get(self, key: str) -> Optional[Any]:
        """讀取結果

        Args:
            key: 快取鍵

        Returns:
            解碼後的結果，不存在或失敗時返回 None
        """
        if not self.redis_client:
            return None

        try:
            raw = self.redis_client.get(self.key_prefix + key)
            return json.loads(raw) if raw is not None else None

        except Exception as e:
            logger.error(f"讀取 Redis 結果失敗 ({key[:12]}): {e}")
            return None

    def set(self, key: str, value: Any) -> bool:
        """寫入結果

        Args:
            key: 快取鍵
            value: 可 JSON 序列化的結果

        Returns:
            True 表示寫入成功，False 表示失敗
        """
        if not self.redis_client:
            return False

        try:
            self.redis_client.set(self.key_prefix + key, json.dumps(value, sort_keys=True))
            logger.debug(f"已寫入 Redis 結果: {key[:12]}")
            return True

        except Exception as e:
            logger.error(f"寫入 Redis 結果失敗 ({key[:12]}): {e}")
            return False

    def close(self) -> None:
        """關閉 Redis 連接"""
        if self.redis_client:
            self.redis_client.close()
            logger.info("Redis 連接已關閉")
