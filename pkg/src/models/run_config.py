"""
執行設定模型

合併 config.yaml、環境變數與命令列旗標後的有效設定。
"""

from fractions import Fraction
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.algebra.qscalar import DEFAULT_Q0, ScalarField, make_field, parse_rational

BACKENDS = ("exact", "specialize")
FORMATS = ("json", "csv", "table")


class RunConfig(BaseModel):
    """經驗證的執行設定

    q0 以 NUM/DEN 字串保存，序列化結果與輸入一致。
    """

    backend: str = Field(default="specialize", description="計算後端: exact 或 specialize")
    q0: str = Field(default=str(DEFAULT_Q0), description="specialize 後端的特殊化點")
    seed: int = Field(default=0, ge=0, description="隨機特殊化點的種子")
    max_block: Optional[int] = Field(default=2000, gt=0, description="權重區塊維度上限")
    max_degree: int = Field(default=6, ge=1, description="未指定時的最大次數")
    format: str = Field(default="json", description="輸出格式: json, csv, table")
    timing: bool = Field(default=True, description="是否記錄耗時（false 時 ms 一律為 0）")
    cache_dir: str = Field(default="./data/cache", description="結果快取目錄")
    use_cache: bool = Field(default=True, description="是否使用結果快取")
    redis_url: Optional[str] = Field(default=None, description="Redis 連接 URL（可選）")
    namespace: str = Field(default="braidcheck", description="Redis 鍵命名空間")

    @field_validator("backend")
    @classmethod
    def valid_backend(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in BACKENDS:
            raise ValueError(f"不支援的計算後端: {v}")
        return v

    @field_validator("format")
    @classmethod
    def valid_format(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in FORMATS:
            raise ValueError(f"不支援的輸出格式: {v}")
        return v

    @field_validator("q0", mode="before")
    @classmethod
    def normalize_q0(cls, v: Any) -> str:
        value = v if isinstance(v, Fraction) else parse_rational(str(v))
        if not value:
            raise ValueError("特殊化點 q0 不可為 0")
        return str(value)

    @model_validator(mode="after")
    def q0_not_classical(self) -> "RunConfig":
        if self.backend == "specialize" and abs(self.q0_value) == 1:
            raise ValueError(f"specialize 後端不可使用 q0 = {self.q0}（退化為古典情形）")
        return self

    class Config:
        json_schema_extra = {
            "example": {
                "backend": "specialize",
                "q0": "7/5",
                "seed": 0,
                "max_block": 2000,
                "max_degree": 6,
                "format": "json",
                "timing": True,
                "cache_dir": "./data/cache",
                "use_cache": True,
            }
        }

    @property
    def q0_value(self) -> Fraction:
        return Fraction(self.q0)

    def make_field(self) -> ScalarField:
        return make_field(self.backend, self.q0_value)

    def report_config(self) -> Dict[str, Any]:
        """報告中回顯的設定（不含路徑與連線資訊）"""
        data: Dict[str, Any] = {"backend": self.backend, "seed": self.seed, "max_block": self.max_block}
        if self.backend == "specialize":
            data["q0"] = self.q0
        return data
