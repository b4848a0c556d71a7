"""
冪零根驗證套件

奇數 ℓ 時 S_σ(V_ℓ)_n → V_q(1,ℓ)_n 的核為 ⊕_{i=1}^{(ℓ-1)/2} V_{nℓ-4i}。
"""

from typing import Any, Dict, List

from src.algebra.qscalar import ScalarField
from src.algebra.veronese import nilradical_check
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord


class NilradicalSuite(VerificationSuite):
    name = "nilradical"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 5)
        self.n_max = self._int("n_max", 4)
        if self.l_max < 1 or self.n_max < 2:
            raise ValueError(f"需要 l_max ≥ 1 且 n_max ≥ 2: {self.l_max}, {self.n_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1, 2):
            records.extend(self.run("nilradical", {"l": ell, "n_max": self.n_max}))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        return nilradical_check(params["l"], params["n_max"], field, self.run_config.max_block)
