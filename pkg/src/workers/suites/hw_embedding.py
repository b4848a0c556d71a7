"""
最高權向量嵌入驗證套件

奇數 ℓ：S²_σ V_ℓ 的最高權向量 u 給出 u⊗v_0^{⊗(n-2)}，被 E 消滅且不在二次理想中。
"""

from typing import Any, Dict, List

from src.algebra.braided import hw_embedding_check
from src.algebra.qscalar import ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord


class HwEmbeddingSuite(VerificationSuite):
    name = "hw-embedding"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 5)
        self.n_max = self._int("n_max", 4)
        if self.n_max < 3:
            raise ValueError(f"n_max 必須 ≥ 3: {self.n_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1, 2):
            for n in range(3, self.n_max + 1):
                records.extend(self.run("hw-embedding", {"l": ell, "n": n}))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        return hw_embedding_check(params["l"], params["n"], field, self.run_config.max_block)
