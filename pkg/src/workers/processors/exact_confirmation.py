"""
精確覆核處理器

specialize 後端的結果若與封閉公式不符，改以精確 ℚ(q) 後端重算；
特殊化點的秩只可能下降，精確結果為準。
"""

import logging
from typing import Any, Dict

from src.algebra.qscalar import EXACT_FIELD
from src.core.abstract import CheckProcessor, VerificationSuite
from src.models.base import CheckRecord

logger = logging.getLogger(__name__)


class ExactConfirmationProcessor(CheckProcessor):
    """未通過的特殊化檢查以精確後端覆核"""

    def __init__(self, config: Dict[str, Any]):
        """初始化處理器

        Args:
            config: 處理器配置，可包含 enabled（預設 true）
        """
        super().__init__(config)
        self.enabled = bool(config.get("enabled", True))

    def process_record(self, record: CheckRecord, suite: VerificationSuite) -> CheckRecord:
        """覆核單筆檢查

        已通過、已是精確後端、或計算例外的記錄原樣返回。

        Args:
            record: 套件產生的檢查結果
            suite: 產生此結果的套件

        Returns:
            覆核後的檢查結果（confirmed_by = exact）
        """
        if not self.enabled or record.passed or record.error or record.backend != "specialize":
            return record

        logger.warning(f"{record.name} {record.params} 在特殊化後端未通過，以精確後端覆核...")
        confirmed = suite.recheck(record, EXACT_FIELD)
        if confirmed is None:
            logger.error(f"無法追溯 {record.name} 的計算來源，保留原結果")
            return record

        status = "通過" if confirmed.passed else "仍未通過"
        logger.info(f"{record.name} {record.params} 精確覆核{status}")
        return confirmed.model_copy(update={"confirmed_by": EXACT_FIELD.name})
