"""
主定理驗證套件

比對 S^n_σ V_ℓ 與 Λ^n_σ V_ℓ 的計算分解與封閉公式。
"""

import logging
from typing import Any, Dict, List

from src.algebra.braided import verify_main_theorem
from src.algebra.qscalar import ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord

logger = logging.getLogger(__name__)


class MainTheoremSuite(VerificationSuite):
    """對 ℓ ∈ [l_min, l_max]、n ≤ n_max 檢查對稱冪與外冪的分解"""

    name = "main-theorem"

    def validate_config(self) -> None:
        self.l_min = self._int("l_min", 1)
        self.l_max = self._int("l_max", 4)
        self.n_max = self._int("n_max", 4)
        if self.l_min < 1 or self.l_max < self.l_min:
            raise ValueError(f"需要 1 ≤ l_min ≤ l_max: {self.l_min}, {self.l_max}")
        if self.n_max < 2:
            raise ValueError(f"n_max 必須 ≥ 2: {self.n_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(self.l_min, self.l_max + 1):
            logger.info(f"主定理: ℓ={ell}, n ≤ {self.n_max}")
            records.extend(self.run("decompositions", {"l": ell, "n_max": self.n_max}))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        return verify_main_theorem(params["l"], params["n_max"], field, self.run_config.max_block)
