"""
Hilbert 函數套件（hilbert 指令）

target:
- braided: S^n_σ V_ℓ（或 Λ^n_σ）的維度與分解，n = 0..n_max
- poisson: 古典 Poisson 閉包 S(V̄_ℓ)/J 的維度，預期值為量子封閉公式的維度
- veronese: V_q(n,d)_k 的維度，預期值 binom(kd+n, n)
"""

from math import comb
from typing import Any, Dict, List

from src.algebra.braided import EXT, SYM, braided_hilbert, expected_power, expected_symmetric_power
from src.algebra.poisson import poisson_closure_hilbert
from src.algebra.qscalar import CLASSICAL_FIELD, ScalarField
from src.algebra.veronese import expected_veronese, veronese_hilbert_rows
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord

TARGETS = ("braided", "poisson", "veronese")


class HilbertSuite(VerificationSuite):
    name = "hilbert"

    def validate_config(self) -> None:
        self.target = self.config.get("target", "braided")
        if self.target not in TARGETS:
            raise ValueError(f"不支援的 hilbert 目標: {self.target!r}")
        self.ell = self._int("l", 1)
        self.n_max = self._int("n_max", 5)
        self.kind = self.config.get("kind", SYM)
        if self.kind not in (SYM, EXT):
            raise ValueError(f"kind 必須是 sym 或 ext: {self.kind!r}")
        self.n = self._int("n", 2)
        self.d = self._int("d", 2)
        self.k_max = self._int("k_max", 3)
        if self.target == "poisson" and self.n_max < 2:
            raise ValueError(f"poisson 目標需要 n_max ≥ 2: {self.n_max}")
        if self.target == "veronese" and (self.n not in (1, 2) or self.d < 1 or self.k_max < 1):
            raise ValueError(f"veronese 目標需要 n ∈ {{1, 2}}、d ≥ 1、k_max ≥ 1: n={self.n}, d={self.d}")

    def collect_checks(self) -> List[CheckRecord]:
        if self.target == "braided":
            return self.run("braided", {"l": self.ell, "n_max": self.n_max, "kind": self.kind})
        if self.target == "poisson":
            return self.run("poisson", {"l": self.ell, "n_max": self.n_max}, CLASSICAL_FIELD)
        return self.run("veronese", {"n": self.n, "d": self.d, "k_max": self.k_max})

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        records = []
        if op == "braided":
            ell, kind = params["l"], params["kind"]
            for row in braided_hilbert(ell, params["n_max"], kind, field, self.run_config.max_block):
                expected = expected_power(ell, row.n, kind)
                records.append(
                    CheckRecord(
                        name="hilbert.braided",
                        params={"l": ell, "n": row.n, "kind": kind},
                        expected={"dim": expected.dim, "components": expected.to_json()},
                        computed=row.to_json(),
                        passed=row.components == expected,
                        source="closed form decomposition of the braided power",
                        backend=field.name,
                    )
                )
        elif op == "poisson":
            ell = params["l"]
            for row in poisson_closure_hilbert(ell, params["n_max"]):
                expected_dim = expected_symmetric_power(ell, row.n).dim
                records.append(
                    CheckRecord(
                        name="hilbert.poisson",
                        params={"l": ell, "n": row.n},
                        expected=expected_dim,
                        computed=row.to_json(),
                        passed=row.dim == expected_dim,
                        source="Poisson closure has the dimensions of S_sigma(V_l)",
                        backend=field.name,
                    )
                )
        elif op == "veronese":
            n, d = params["n"], params["d"]
            for row in veronese_hilbert_rows(n, d, params["k_max"], field):
                expected = expected_veronese(n, d, row.n)
                records.append(
                    CheckRecord(
                        name="hilbert.veronese",
                        params={"n": n, "d": d, "k": row.n},
                        expected={"dim": comb(row.n * d + n, n), "components": expected.to_json()},
                        computed=row.to_json(),
                        passed=row.dim == comb(row.n * d + n, n) and row.components == expected,
                        source="Veronese component dimension binom(kd+n, n)",
                        backend=field.name,
                    )
                )
        else:
            raise ValueError(f"未知的操作: {op}")
        return records
