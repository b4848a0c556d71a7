"""
單一分解套件（decompose 指令）

計算 S^n_σ V_ℓ 或 Λ^n_σ V_ℓ 的分解，附上封閉公式作為預期值。
"""

from typing import Any, Dict, List

from src.algebra.braided import (
    EXT,
    SYM,
    braided_power,
    decomposition_json,
    expected_power,
    formula_source,
)
from src.algebra.qscalar import ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord


class DecomposeSuite(VerificationSuite):
    name = "decompose"

    def validate_config(self) -> None:
        self.ell = self._int("l", 1)
        self.n = self._int("n", 2)
        self.kind = self.config.get("kind", SYM)
        if self.n < 1:
            raise ValueError(f"次數 n 必須 ≥ 1: {self.n}")
        if self.kind not in (SYM, EXT):
            raise ValueError(f"kind 必須是 sym 或 ext: {self.kind!r}")

    def collect_checks(self) -> List[CheckRecord]:
        return self.run("decompose", {"l": self.ell, "n": self.n, "kind": self.kind})

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        ell, n, kind = params["l"], params["n"], params["kind"]
        power = braided_power(ell, n, kind, field, self.run_config.max_block)
        expected = expected_power(ell, n, kind)
        return [
            CheckRecord(
                name="decompose",
                params={"l": ell, "n": n, "kind": kind},
                expected=decomposition_json(expected),
                computed=decomposition_json(power.decomposition),
                passed=power.decomposition == expected,
                source=formula_source(ell, n, kind),
                backend=field.name,
            )
        ]
