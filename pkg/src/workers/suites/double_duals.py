"""
雙重對偶驗證套件

交集法 S^n_σ 與商法 V^{⊗n}/⟨Λ²_σ⟩_n 逐次數一致（外冪同理）、
互補恆等式 dim S^n + dim ⟨Λ²⟩_n = (ℓ+1)^n，以及精確與隨機特殊化後端的秩一致性。
"""

import logging
from typing import Any, Dict, List

from src.algebra.braided import EXT, SYM, backend_agreement, complement_check, graded_algebra_report
from src.algebra.qscalar import EXACT_FIELD, ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord

logger = logging.getLogger(__name__)


class DoubleDualsSuite(VerificationSuite):
    name = "double-duals"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 4)
        self.n_max = self._int("n_max", 5)
        self.agreement_n_max = self._int("agreement_n_max", 3)
        self.trials = self._int("trials", 3)
        if self.l_max < 1 or self.n_max < 2:
            raise ValueError(f"需要 l_max ≥ 1 且 n_max ≥ 2: {self.l_max}, {self.n_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1):
            logger.info(f"雙重對偶: ℓ={ell}, n ≤ {self.n_max}")
            for kind in (SYM, EXT):
                records.extend(self.run("graded", {"l": ell, "kind": kind, "n_max": self.n_max}))
                for n in range(2, self.n_max + 1):
                    records.extend(self.run("complement", {"l": ell, "n": n, "kind": kind}))
                for n in range(2, self.agreement_n_max + 1):
                    params = {
                        "l": ell,
                        "n": n,
                        "kind": kind,
                        "seed": self.run_config.seed,
                        "trials": self.trials,
                    }
                    records.extend(self.run("agreement", params, EXACT_FIELD))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        ell, kind = params["l"], params["kind"]
        max_block = self.run_config.max_block
        if op == "graded":
            report = graded_algebra_report(ell, kind, params["n_max"], field, max_block)
            return [
                CheckRecord(
                    name=f"double-duals.{kind}",
                    params={"l": ell, "n": row.n},
                    expected={"dim": row.dim, "components": row.components.to_json()},
                    computed={"dim": row.quotient_dim, "components": row.quotient_components.to_json()},
                    passed=row.agree,
                    source="intersection of kernels equals tensor algebra modulo the quadratic ideal",
                    backend=field.name,
                )
                for row in report.rows
            ]
        if op == "complement":
            return [complement_check(ell, params["n"], kind, field, max_block)]
        if op == "agreement":
            return [
                backend_agreement(ell, params["n"], kind, params["seed"], params["trials"], max_block)
            ]
        raise ValueError(f"未知的操作: {op}")
