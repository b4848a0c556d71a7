"""
抽象基礎類別定義

定義三個核心抽象類別：
1. VerificationSuite - 驗證套件（檢查項目的來源）
2. CheckProcessor - 檢查結果後處理器
3. ResultCache - 計算結果快取
"""

import json
import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

from src.algebra.errors import AlgebraError, ResourceLimit
from src.algebra.qscalar import ScalarField, make_field
from src.models.base import CheckRecord
from src.models.run_config import RunConfig

logger = logging.getLogger(__name__)


class ResultCache(ABC):
    """計算結果快取抽象類別

    值一律為可 JSON 序列化的物件，鍵由 src.core.cache.cache_key 產生。
    """

    @abstractmethod
    def get(self, key: str) -> Optional[Any]:
        """讀取快取

        Args:
            key: 快取鍵

        Returns:
            快取值，不存在時返回 None
        """
        pass

    @abstractmethod
    def set(self, key: str, value: Any) -> None:
        """寫入快取

        Args:
            key: 快取鍵
            value: 可 JSON 序列化的值
        """
        pass

    def close(self) -> None:
        """釋放資源"""


class VerificationSuite(ABC):
    """驗證套件抽象類別

    所有驗證套件必須繼承此類別並實作相關方法。
    失敗是資料而非例外：每項檢查產生一筆 CheckRecord。

    子類別以 collect_checks 決定要跑哪些操作，每個操作透過 run(op, params)
    交給 compute(op, params, field) 計算；run 負責快取、計時與例外記錄，
    並記住每筆結果的來源以便覆核（recheck）。
    """

    #: 套件名稱（對應命令列 verify 的 suite 參數）
    name: str = ""

    def __init__(
        self,
        config: Dict[str, Any],
        run_config: RunConfig,
        cache: Optional[ResultCache] = None,
    ):
        """初始化套件

        Args:
            config: 該套件的配置字典（範圍參數等；backend 可覆蓋全域後端）
            run_config: 有效的執行設定
            cache: 結果快取（可選）
        """
        self.config = config
        self.run_config = run_config
        self.cache = cache
        if config.get("backend"):
            self.field: ScalarField = make_field(config["backend"], run_config.q0_value)
        else:
            self.field = run_config.make_field()
        self._origins: Dict[Tuple[str, str], Tuple[str, Dict[str, Any]]] = {}
        self.validate_config()

    @abstractmethod
    def validate_config(self) -> None:
        """驗證配置的有效性

        Raises:
            ValueError: 當配置缺少必要項目或格式不正確時
        """
        pass

    @abstractmethod
    def collect_checks(self) -> List[CheckRecord]:
        """執行所有檢查

        Returns:
            CheckRecord 列表
        """
        pass

    @abstractmethod
    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        """實際計算單一操作

        Args:
            op: 操作名稱
            params: 操作參數
            field: 係數體

        Returns:
            此操作產生的 CheckRecord 列表
        """
        pass

    def _int(self, key: str, default: int) -> int:
        value = self.config.get(key, default)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ValueError(f"套件 {self.name} 的 '{key}' 必須是非負整數: {value!r}")
        return value

    def run(self, op: str, params: Dict[str, Any], field: Optional[ScalarField] = None) -> List[CheckRecord]:
        """透過結果快取執行一個操作

        每筆記錄的 ms 為產生它的那次計算的耗時。計算中的代數例外記為失敗的檢查；
        ResourceLimit 向上拋出。

        Raises:
            ResourceLimit: 權重區塊超過上限
        """
        from src.core.cache import cache_key

        field = field or self.field
        key = cache_key(op, params, field)
        records: Optional[List[CheckRecord]] = None
        if self.cache is not None:
            hit = self.cache.get(key)
            if hit is not None:
                logger.debug(f"快取命中: {op} {params}")
                records = [CheckRecord(**item) for item in hit]
            else:
                logger.debug(f"快取未命中: {op} {params}")

        if records is None:
            start = time.perf_counter()
            try:
                records = self.compute(op, params, field)
            except ResourceLimit:
                raise
            except (AlgebraError, ArithmeticError, ValueError) as e:
                logger.error(f"{self.name} {op} {params} 計算失敗: {e}")
                records = [
                    CheckRecord(
                        name=f"{self.name}.{op}",
                        params=params,
                        passed=False,
                        error=True,
                        backend=field.name,
                        note=f"{type(e).__name__}: {e}",
                    )
                ]
            ms = int((time.perf_counter() - start) * 1000)
            records = [r.model_copy(update={"ms": ms}) for r in records]
            if self.cache is not None and not any(r.error for r in records):
                self.cache.set(key, [r.model_dump() for r in records])

        for r in records:
            self._origins[(r.name, _params_key(r.params))] = (op, params)
        return records

    def recheck(self, record: CheckRecord, field: ScalarField) -> Optional[CheckRecord]:
        """以另一個係數體重算產生 record 的操作，回傳對應的新記錄

        Returns:
            對應的新記錄，無法追溯來源時返回 None
        """
        origin = self._origins.get((record.name, _params_key(record.params)))
        if origin is None:
            return None
        op, params = origin
        for r in self.run(op, params, field):
            if r.name == record.name and r.params == record.params:
                return r
        return None


def _params_key(params: Dict[str, Any]) -> str:
    return json.dumps(params, sort_keys=True, default=str)


class CheckProcessor(ABC):
    """檢查結果後處理器抽象類別

    用於對套件產生的檢查結果進行後處理，如以精確後端覆核。
    """

    def __init__(self, config: Dict[str, Any]):
        """初始化處理器

        Args:
            config: 處理器配置字典
        """
        self.config = config

    @abstractmethod
    def process_record(self, record: CheckRecord, suite: VerificationSuite) -> CheckRecord:
        """處理單筆檢查結果

        Args:
            record: 套件產生的檢查結果
            suite: 產生此結果的套件（可用於重新計算）

        Returns:
            處理後的檢查結果
        """
        pass
