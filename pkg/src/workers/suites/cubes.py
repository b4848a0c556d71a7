"""
對稱立方驗證套件

S³_σ V_ℓ：奇數 ℓ 為 ⊕_{i=0}^{(ℓ-1)/2} V_{3ℓ-4i}，偶數 ℓ 為 ⊕_{i=0}^{⌊3ℓ/4⌋} V_{3ℓ-4i}。
"""

import logging
from typing import Any, Dict, List

from src.algebra.braided import (
    SYM,
    braided_power,
    decomposition_json,
    expected_symmetric_power,
    formula_source,
)
from src.algebra.qscalar import ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord

logger = logging.getLogger(__name__)


class CubesSuite(VerificationSuite):
    name = "cubes"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 5)
        if self.l_max < 1:
            raise ValueError(f"l_max 必須 ≥ 1: {self.l_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1):
            records.extend(self.run("cube", {"l": ell}))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        ell = params["l"]
        power = braided_power(ell, 3, SYM, field, self.run_config.max_block)
        expected = expected_symmetric_power(ell, 3)
        logger.debug(f"S³_σ V{ell} = {power.decomposition}")
        return [
            CheckRecord(
                name="cubes",
                params={"l": ell},
                expected=decomposition_json(expected),
                computed=decomposition_json(power.decomposition),
                passed=power.decomposition == expected,
                source=formula_source(ell, 3, SYM),
                backend=field.name,
            )
        ]
