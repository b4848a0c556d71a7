"""
驗證核心控制器

協調所有模組：依名稱動態載入驗證套件與後處理器、執行檢查、彙整統計並產生報告。
"""

import importlib
import logging
import re
import time
from typing import Any, Dict, List, Optional, Tuple

from src.algebra.errors import ResourceLimit
from src.core.abstract import CheckProcessor, ResultCache, VerificationSuite
from src.core.cache import create_result_cache
from src.core.logger import log_section
from src.models.base import CheckRecord, SuiteStats, VerificationReport
from src.models.run_config import RunConfig

logger = logging.getLogger(__name__)

# 命令列 decompose / hilbert 指令使用的內建套件（不需寫在 config.yaml）
COMMAND_SUITES = {
    "decompose": "DecomposeSuite",
    "hilbert": "HilbertSuite",
}
DEFAULT_PROCESSOR = "ExactConfirmationProcessor"


def _module_name(class_name: str, suffix: str) -> str:
    # HwEmbeddingSuite -> hw_embedding, TCountSuite -> t_count
    base = class_name[: -len(suffix)] if class_name.endswith(suffix) else class_name
    return re.sub(r"(?<!^)(?=[A-Z])", "_", base).lower()


class VerificationController:
    """驗證核心控制器

    負責：
    1. 動態載入驗證套件和後處理器類別
    2. 以共用的結果快取執行各套件
    3. 對檢查結果執行後處理（精確覆核）
    4. 追蹤各套件統計資訊並產生報告
    """

    def __init__(
        self,
        config: Dict[str, Any],
        run_config: RunConfig,
        cache: Optional[ResultCache] = None,
    ):
        """初始化控制器

        Args:
            config: 完整的配置字典
            run_config: 有效的執行設定
            cache: 結果快取，未提供時依 run_config 建立
        """
        self.config = config
        self.run_config = run_config
        self.cache = cache if cache is not None else create_result_cache(run_config)

    def _load_suite_class(self, class_name: str) -> type:
        """動態載入驗證套件類別

        Args:
            class_name: 類別名稱 (例如: MainTheoremSuite)

        Returns:
            驗證套件類別

        Raises:
            ImportError: 當無法載入類別時
        """
        # MainTheoremSuite -> src.workers.suites.main_theorem
        module_path = f"src.workers.suites.{_module_name(class_name, 'Suite')}"

        try:
            module = importlib.import_module(module_path)
            suite_class = getattr(module, class_name)
            logger.debug(f"成功載入驗證套件: {class_name}")
            return suite_class

        except (ImportError, AttributeError) as e:
            logger.error(f"無法載入驗證套件 {class_name}: {e}")
            raise ImportError(f"驗證套件 {class_name} 不存在或無法載入") from e

    def _load_processor_class(self, class_name: str) -> type:
        """動態載入處理器類別

        Args:
            class_name: 類別名稱 (例如: ExactConfirmationProcessor)

        Returns:
            處理器類別

        Raises:
            ImportError: 當無法載入類別時
        """
        # ExactConfirmationProcessor -> src.workers.processors.exact_confirmation
        module_path = f"src.workers.processors.{_module_name(class_name, 'Processor')}"

        try:
            module = importlib.import_module(module_path)
            processor_class = getattr(module, class_name)
            logger.debug(f"成功載入處理器: {class_name}")
            return processor_class

        except (ImportError, AttributeError) as e:
            logger.error(f"無法載入處理器 {class_name}: {e}")
            raise ImportError(f"處理器 {class_name} 不存在或無法載入") from e

    def suite_names(self) -> List[str]:
        """config.yaml 中已啟用的套件名稱"""
        return [s["name"] for s in self.config.get("suites", []) if s.get("enabled", True)]

    def _suite_config(self, name: str) -> Dict[str, Any]:
        for suite in self.config.get("suites", []):
            if suite.get("name") == name:
                return suite
        if name in COMMAND_SUITES:
            return {
                "name": name,
                "suite_class": COMMAND_SUITES[name],
                "processor_class": DEFAULT_PROCESSOR,
                "config": {},
            }
        raise ValueError(f"未知的驗證套件: {name}")

    def run_suite(
        self,
        suite_config: Dict[str, Any],
        overrides: Optional[Dict[str, Any]] = None,
    ) -> Tuple[List[CheckRecord], SuiteStats]:
        """執行單個驗證套件的完整流程

        流程：
        1. 載入並初始化驗證套件（命令列參數覆蓋套件配置）
        2. 執行所有檢查
        3. 如果配置了處理器，執行後處理
        4. 統計結果

        Args:
            suite_config: 套件配置字典
            overrides: 覆蓋套件配置的參數

        Returns:
            (檢查結果列表, 統計資訊)

        Raises:
            ResourceLimit: 權重區塊超過上限
            ValueError: 套件配置無效
            ImportError: 套件或處理器類別無法載入
        """
        suite_name = suite_config.get("name", "unknown")
        log_section(logger, f"開始執行驗證套件: {suite_name}")

        stats = SuiteStats()
        start_time = time.time()

        # 1. 載入並初始化驗證套件
        suite_class = self._load_suite_class(suite_config["suite_class"])
        params = {**suite_config.get("config", {}), **(overrides or {})}
        suite: VerificationSuite = suite_class(params, self.run_config, self.cache)

        # 2. 執行所有檢查
        records = suite.collect_checks()
        logger.info(f"完成 {len(records)} 項檢查")

        # 3. 執行後處理
        if suite_config.get("processor_class"):
            records = self._process_records(
                suite_config["processor_class"],
                suite_config.get("processor_config", {}),
                records,
                suite,
                stats,
            )

        # 4. 統計
        if not self.run_config.timing:
            records = [r.model_copy(update={"ms": 0}) for r in records]
        for record in records:
            stats.add_result(passed=record.passed, error=record.error)
            if not record.passed:
                logger.warning(f"未通過: {record.name} {record.params}")

        stats.processing_time = time.time() - start_time
        logger.info(f"驗證套件 {suite_name} 完成")
        logger.info(f"統計: {stats.get_summary()}")
        logger.info(f"處理時間: {stats.processing_time:.2f} 秒")
        return records, stats

    def _process_records(
        self,
        processor_class_name: str,
        processor_config: Dict[str, Any],
        records: List[CheckRecord],
        suite: VerificationSuite,
        stats: SuiteStats,
    ) -> List[CheckRecord]:
        """執行檢查結果後處理

        Args:
            processor_class_name: 處理器類別名稱
            processor_config: 處理器配置
            records: 待處理檢查結果
            suite: 產生結果的套件
            stats: 統計資訊物件

        Returns:
            處理後的檢查結果列表
        """
        processor_class = self._load_processor_class(processor_class_name)
        processor: CheckProcessor = processor_class(processor_config)

        processed = []
        for record in records:
            try:
                result = processor.process_record(record, suite)
            except ResourceLimit:
                raise
            except Exception as e:
                logger.error(f"後處理 {record.name} {record.params} 失敗: {e}")
                result = record.model_copy(update={"note": f"後處理異常: {e}"})
            if result.confirmed_by:
                stats.confirmed += 1
            processed.append(result)
        return processed

    def verify(
        self,
        name: str,
        overrides: Optional[Dict[str, Any]] = None,
        command: Optional[str] = None,
    ) -> VerificationReport:
        """執行指定套件（或 all）並產生報告

        個別套件的非預期例外記為一筆錯誤檢查後繼續；ResourceLimit 與配置錯誤向上拋出。

        Args:
            name: 套件名稱或 all
            overrides: 覆蓋套件配置的參數
            command: 報告中回顯的指令

        Returns:
            VerificationReport

        Raises:
            ResourceLimit: 權重區塊超過上限
            ValueError: 未知的套件或配置無效
        """
        names = self.suite_names() if name == "all" else [name]
        suite_configs = [self._suite_config(n) for n in names]
        logger.info(f"共有 {len(suite_configs)} 個驗證套件")

        all_records: List[CheckRecord] = []
        all_stats: Dict[str, SuiteStats] = {}
        for suite_config in suite_configs:
            suite_name = suite_config["name"]
            try:
                records, stats = self.run_suite(suite_config, overrides)
            except (ResourceLimit, ValueError, ImportError):
                raise
            except Exception as e:
                logger.error(f"驗證套件 {suite_name} 執行失敗: {e}", exc_info=True)
                records = [
                    CheckRecord(
                        name=suite_name,
                        passed=False,
                        error=True,
                        backend=self.run_config.backend,
                        note=f"{type(e).__name__}: {e}",
                    )
                ]
                stats = SuiteStats()
                stats.add_result(passed=False, error=True)
            all_records.extend(records)
            all_stats[suite_name] = stats

        self._print_summary(all_stats)
        return VerificationReport(
            command=command or f"verify {name}",
            config=self.run_config.report_config(),
            checks=all_records,
        )

    def _print_summary(self, all_stats: Dict[str, SuiteStats]) -> None:
        """輸出總體統計摘要

        Args:
            all_stats: 各套件的統計資訊
        """
        log_section(logger, "驗證統計摘要")

        for suite_name, stats in all_stats.items():
            logger.info(f"套件: {suite_name}")
            logger.info(f"  {stats.get_summary()}")
            if stats.processing_time:
                logger.info(f"  處理時間: {stats.processing_time:.2f} 秒")

        total = sum(s.total_checks for s in all_stats.values())
        passed = sum(s.passed for s in all_stats.values())
        failed = sum(s.failed for s in all_stats.values())
        errors = sum(s.errors for s in all_stats.values())

        logger.info("總計:")
        logger.info(f"  總檢查: {total}, 通過: {passed}, 未通過: {failed}, 錯誤: {errors}")
        logger.info("=" * 60)

    def close(self) -> None:
        """釋放快取資源"""
        if self.cache is not None:
            self.cache.close()
