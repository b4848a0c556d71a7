"""
T_{n,ℓ} 計數驗證套件

|T_{n,ℓ}| = binom(ℓ+2, 2) + (n-2)·binom(ℓ+1, 2)
"""

from typing import Any, Dict, List

from src.algebra.poisson import t_count, t_count_formula
from src.algebra.qscalar import CLASSICAL_FIELD, ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord


class TCountSuite(VerificationSuite):
    name = "t-count"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 8)
        self.n_max = self._int("n_max", 8)
        if self.l_max < 1 or self.n_max < 2:
            raise ValueError(f"需要 l_max ≥ 1 且 n_max ≥ 2: {self.l_max}, {self.n_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1):
            records.extend(self.run("t-count", {"l": ell, "n_max": self.n_max}, CLASSICAL_FIELD))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        ell = params["l"]
        records: List[CheckRecord] = []
        for n in range(2, params["n_max"] + 1):
            expected, computed = t_count_formula(ell, n), t_count(ell, n)
            records.append(
                CheckRecord(
                    name="t-count",
                    params={"l": ell, "n": n},
                    expected=expected,
                    computed=computed,
                    passed=computed == expected,
                    source="binom(l+2,2) + (n-2) binom(l+1,2)",
                    backend=field.name,
                )
            )
        return records
