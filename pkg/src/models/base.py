"""
基礎資料模型

使用 Pydantic 定義驗證流程中的資料模型，確保報告格式一致且可序列化。
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class CheckRecord(BaseModel):
    """單一檢查項目的結果

    所有 VerificationSuite 回傳的檢查都應符合此格式。
    expected 一律附上公式來源標籤（source）。
    """

    name: str = Field(..., description="檢查名稱")
    params: Dict[str, Any] = Field(default_factory=dict, description="參數")
    expected: Any = Field(default=None, description="預期值（封閉公式）")
    computed: Any = Field(default=None, description="計算值")
    passed: bool = Field(..., description="是否通過")
    ms: int = Field(default=0, ge=0, description="耗時（毫秒）")
    source: str = Field(default="", description="預期值的公式來源")
    backend: str = Field(default="", description="計算後端")
    note: Optional[str] = Field(default=None, description="附註（如約定差異）")
    error: bool = Field(default=False, description="計算時是否發生例外")
    confirmed_by: Optional[str] = Field(default=None, description="覆核所用的後端")

    @field_validator("name")
    @classmethod
    def name_not_empty(cls, v: str) -> str:
        """確保名稱不為空"""
        if not v or not v.strip():
            raise ValueError("檢查名稱不能為空")
        return v.strip()

    class Config:
        json_schema_extra = {
            "example": {
                "name": "main-theorem.sym",
                "params": {"l": 3, "n": 4},
                "expected": {"dim": 22, "components": [{"hw": 12, "mult": 1}, {"hw": 8, "mult": 1}]},
                "computed": {"dim": 22, "components": [{"hw": 12, "mult": 1}, {"hw": 8, "mult": 1}]},
                "passed": True,
                "ms": 41,
                "source": "closed form: odd l symmetric power",
            }
        }

    def to_json(self) -> Dict[str, Any]:
        """輸出 JSON 報告格式（pass 為保留字，序列化時改名）"""
        data: Dict[str, Any] = {
            "name": self.name,
            "params": self.params,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
            "ms": self.ms,
        }
        if self.source:
            data["source"] = self.source
        if self.note:
            data["note"] = self.note
        if self.confirmed_by:
            data["confirmed_by"] = self.confirmed_by
        return data


class SuiteStats(BaseModel):
    """驗證套件統計

    用於追蹤各套件的檢查進度與結果。
    """

    total_checks: int = Field(default=0, description="總檢查數")
    passed: int = Field(default=0, description="通過數")
    failed: int = Field(default=0, description="未通過數")
    errors: int = Field(default=0, description="例外數")
    confirmed: int = Field(default=0, description="經精確後端覆核的檢查數")
    processing_time: Optional[float] = Field(default=None, description="處理時間（秒）")

    def add_result(self, passed: bool, error: bool = False) -> None:
        """添加檢查結果

        Args:
            passed: 是否通過
            error: 是否發生例外
        """
        self.total_checks += 1
        if error:
            self.errors += 1
        elif passed:
            self.passed += 1
        else:
            self.failed += 1

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errors == 0

    def get_summary(self) -> str:
        """獲取統計摘要

        Returns:
            統計摘要字串
        """
        return (
            f"總檢查: {self.total_checks}, "
            f"通過: {self.passed}, "
            f"未通過: {self.failed}, "
            f"錯誤: {self.errors}, "
            f"覆核: {self.confirmed}"
        )

    class Config:
        json_schema_extra = {
            "example": {
                "total_checks": 40,
                "passed": 40,
                "failed": 0,
                "errors": 0,
                "confirmed": 0,
                "processing_time": 3.2,
            }
        }


class VerificationReport(BaseModel):
    """完整驗證報告

    JSON 格式：{"command": ..., "config": {...}, "checks": [...]}
    檢查項目依名稱排序，確保相同設定與種子下輸出可重現。
    """

    command: str = Field(..., description="指令回顯")
    config: Dict[str, Any] = Field(default_factory=dict, description="生效的執行設定")
    checks: List[CheckRecord] = Field(default_factory=list, description="檢查項目")

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def sorted_checks(self) -> List[CheckRecord]:
        return sorted(self.checks, key=lambda c: c.name)

    def to_json(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "checks": [c.to_json() for c in self.sorted_checks()],
        }

    def to_csv_rows(self) -> List[List[str]]:
        """CSV 格式：巢狀欄位以緊湊 JSON 字串表示"""
        rows = [["name", "params", "expected", "computed", "pass", "ms"]]
        for c in self.sorted_checks():
            rows.append(
                [
                    c.name,
                    _compact(c.params),
                    _compact(c.expected),
                    _compact(c.computed),
                    str(c.passed).lower(),
                    str(c.ms),
                ]
            )
        return rows

    def to_table(self) -> str:
        """對齊的純文字表格"""
        lines = [f"command: {self.command}"]
        rows = [["name", "params", "pass", "ms", "computed"]]
        for c in self.sorted_checks():
            rows.append([c.name, _compact(c.params), "PASS" if c.passed else "FAIL", str(c.ms), _compact(c.computed)])
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        for r in rows:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r[:4])) + "  " + r[4])
        passed = sum(1 for c in self.checks if c.passed)
        lines.append(f"{passed}/{len(self.checks)} passed")
        return "\n".join(lines)


def _compact(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=str)
