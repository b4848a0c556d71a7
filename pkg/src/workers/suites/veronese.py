"""
量子 Veronese 驗證套件

涵蓋 V_q(n,d) 的 Hilbert 函數與分解、A_q(2,d) 子代數、最高權向量公式、
二次關係與零因子取樣。
"""

import logging
from typing import Any, Dict, List

from src.algebra.qscalar import EXACT_FIELD, ScalarField
from src.algebra.veronese import (
    hwv_formula_check,
    relations_check,
    subalgebra_A_check,
    veronese_hilbert_check,
    zero_divisor_check,
)
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord

logger = logging.getLogger(__name__)

RANKS = (1, 2)


class VeroneseSuite(VerificationSuite):
    """n ∈ {1, 2} 的量子 Veronese 檢查

    hwv 檢查一律以精確後端計算（需要 q → 1 的極限）。
    """

    name = "veronese"

    def validate_config(self) -> None:
        self.d_max = self._int("d_max", 3)
        self.k_max = self._int("k_max", 4)
        self.a_k_max = self._int("a_k_max", 3)
        self.hwv_d_max = self._int("hwv_d_max", 4)
        self.relations_d_max = self._int("relations_d_max", 2)
        self.samples = self._int("samples", 10)
        if self.d_max < 1 or self.k_max < 1:
            raise ValueError(f"需要 d_max ≥ 1 且 k_max ≥ 1: {self.d_max}, {self.k_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for n in RANKS:
            for d in range(1, self.d_max + 1):
                logger.info(f"Veronese Hilbert: n={n}, d={d}, k ≤ {self.k_max}")
                records.extend(self.run("hilbert", {"n": n, "d": d, "k_max": self.k_max}))
        if self.a_k_max >= 2:
            for d in range(1, self.d_max + 1):
                records.extend(self.run("subalgebra-A", {"d": d, "k_max": self.a_k_max}))
        for d in range(1, self.hwv_d_max + 1):
            for m in range(d // 2 + 1):
                records.extend(self.run("hwv", {"d": d, "m": m}, EXACT_FIELD))
        for n in RANKS:
            for d in range(1, self.relations_d_max + 1):
                records.extend(self.run("relations", {"n": n, "d": d}))
        if self.samples:
            for n in RANKS:
                for degree in (1, 2):
                    params = {"n": n, "degree": degree, "samples": self.samples, "seed": self.run_config.seed}
                    records.extend(self.run("zero-divisors", params))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        if op == "hilbert":
            return [
                veronese_hilbert_check(params["n"], params["d"], k, field)
                for k in range(1, params["k_max"] + 1)
            ]
        if op == "subalgebra-A":
            return subalgebra_A_check(params["d"], params["k_max"], field)
        if op == "hwv":
            return [hwv_formula_check(params["d"], params["m"])]
        if op == "relations":
            return [relations_check(params["n"], params["d"], field)]
        if op == "zero-divisors":
            return [
                zero_divisor_check(params["n"], params["degree"], params["samples"], params["seed"], field)
            ]
        raise ValueError(f"未知的操作: {op}")
