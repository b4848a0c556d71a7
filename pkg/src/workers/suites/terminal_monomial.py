"""
終端單項式驗證套件

奇數 ℓ、0 ≤ a < b < c ≤ ℓ：jacobian_map 的字典序最小單項式為 v̄_{a+1} v̄_b v̄_{c-1}，
係數 (ℓ-a)(ℓ-2b)c；且 3 次分量中 Jacobiator 與 jacobian_map 張成同一空間。
"""

from itertools import combinations
from typing import Any, Dict, List

from src.algebra.poisson import degree_three_spans_agree, terminal_monomial_check
from src.algebra.qscalar import CLASSICAL_FIELD, ScalarField
from src.core.abstract import VerificationSuite
from src.models.base import CheckRecord


class TerminalMonomialSuite(VerificationSuite):
    name = "terminal-monomial"

    def validate_config(self) -> None:
        self.l_max = self._int("l_max", 5)

    def collect_checks(self) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for ell in range(1, self.l_max + 1, 2):
            records.extend(self.run("terminal", {"l": ell}, CLASSICAL_FIELD))
        return records

    def compute(self, op: str, params: Dict[str, Any], field: ScalarField) -> List[CheckRecord]:
        ell = params["l"]
        records = []
        for a, b, c in combinations(range(ell + 1), 3):
            result = terminal_monomial_check(ell, a, b, c)
            match = bool(result.pop("match"))
            records.append(
                CheckRecord(
                    name="terminal-monomial",
                    params={"l": ell, "a": a, "b": b, "c": c},
                    expected={
                        "monomial": result["expected_monomial"],
                        "coefficient": result["expected_coefficient"],
                    },
                    computed={"monomial": result["monomial"], "coefficient": result["coefficient"]},
                    passed=match,
                    source="terminal monomial v(a+1) v(b) v(c-1) with coefficient (l-a)(l-2b)c",
                    backend=field.name,
                )
            )
        agree = degree_three_spans_agree(ell)
        records.append(
            CheckRecord(
                name="terminal-monomial.span",
                params={"l": ell},
                expected=True,
                computed=agree,
                passed=agree,
                source="jacobiator and antisymmetrized E^F^H span the same degree-3 space",
                backend=field.name,
            )
        )
        return records
