"""
Poisson 閉包驗證套件

古典 Poisson 閉包 S(V̄_ℓ)/J 與量子 S_σ(V_ℓ) 逐次數比較維度與模分解；
奇數 ℓ 另檢查 dim (S/J)_n ≤ |T_{n,ℓ}|。
"""

import logging
from typing import Any, Dict, List

from src.algebra.braided import SYM, braided_hilbert
from src.algebra.poisson import generator_jacobiators, poisson_closure_hilbert, t_count
from src.algebra.qscalar import CLASSICAL_FIELD, ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord

logger = logging.getLogger(__name__)


class PoissonClosureSuite(VerificationSuite):
    name = "poisson-closure"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 4)
        self.n_max = self._int("n_max", 5)
        if self.l_max < 1 or self.n_max < 2:
            raise ValueError(f"需要 l_max ≥ 1 且 n_max ≥ 2: {self.l_max}, {self.n_max}")

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1):
            logger.info(f"Poisson 閉包: ℓ={ell}, n ≤ {self.n_max}")
            records.extend(self.run("closure", {"l": ell, "n_max": self.n_max}))
            if ell <= 2:
                records.extend(self.run("jacobiator", {"l": ell}, CLASSICAL_FIELD))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        ell = params["l"]
        if op == "jacobiator":
            nonzero = sum(1 for g in generator_jacobiators(ell) if g)
            return [
                CheckRecord(
                    name="poisson-closure.jacobiator-vanishes",
                    params={"l": ell},
                    expected=0,
                    computed=nonzero,
                    passed=nonzero == 0,
                    source="flat cases: the bracket is Poisson",
                    backend=CLASSICAL_FIELD.name,
                )
            ]

        n_max = params["n_max"]
        closure = poisson_closure_hilbert(ell, n_max)
        quantum = braided_hilbert(ell, n_max, SYM, field, self.run_config.max_block)
        records = []
        for c_row, q_row in zip(closure[1:], quantum[1:]):
            records.append(
                CheckRecord(
                    name="poisson-closure",
                    params={"l": ell, "n": c_row.n},
                    expected=q_row.to_json(),
                    computed=c_row.to_json(),
                    passed=c_row.dim == q_row.dim and c_row.components == q_row.components,
                    source="Poisson closure matches S_sigma(V_l) as a module algebra",
                    backend=field.name,
                )
            )
            if ell % 2 and c_row.n >= 2:
                bound = t_count(ell, c_row.n)
                records.append(
                    CheckRecord(
                        name="poisson-closure.upper-bound",
                        params={"l": ell, "n": c_row.n},
                        expected={"at_most": bound},
                        computed=c_row.dim,
                        passed=c_row.dim <= bound,
                        source="dim of the closure bounded by |T_(n,l)|",
                        backend=CLASSICAL_FIELD.name,
                        note=None if c_row.dim == bound else "bound not attained",
                    )
                )
        return records
