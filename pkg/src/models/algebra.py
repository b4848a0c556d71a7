"""
代數結果資料模型

使用 Pydantic 定義可序列化的計算結果：模分解、分次代數報告、Hilbert 函數列與 Veronese 關係。
"""

from collections import Counter
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from pydantic import BaseModel, Field, field_validator


class DecompositionComponent(BaseModel):
    """單一不可約分量 V_hw 及其重數"""

    hw: int = Field(..., ge=0, description="最高權")
    mult: int = Field(..., gt=0, description="重數")

    class Config:
        frozen = True


class Decomposition(BaseModel):
    """模的同構類型：最高權與重數的多重集合

    components 依最高權遞減排序，重數皆為正。
    """

    components: List[DecompositionComponent] = Field(default_factory=list, description="不可約分量")

    @field_validator("components")
    @classmethod
    def sorted_components(cls, v: List[DecompositionComponent]) -> List[DecompositionComponent]:
        merged: Counter = Counter()
        for comp in v:
            merged[comp.hw] += comp.mult
        return [
            DecompositionComponent(hw=hw, mult=mult)
            for hw, mult in sorted(merged.items(), reverse=True)
            if mult
        ]

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {"components": [{"hw": 12, "mult": 1}, {"hw": 8, "mult": 1}]}
        }

    @classmethod
    def from_highest_weights(cls, weights: Iterable[int]) -> "Decomposition":
        counts = Counter(weights)
        return cls(components=[DecompositionComponent(hw=w, mult=m) for w, m in counts.items()])

    @classmethod
    def from_multiplicities(cls, mults: Mapping[int, int]) -> "Decomposition":
        return cls(
            components=[DecompositionComponent(hw=w, mult=m) for w, m in mults.items() if m]
        )

    @classmethod
    def from_weight_dims(cls, dims: Mapping[int, int]) -> "Decomposition":
        """由權重空間維度以差分求重數：mult(V_w) = dim(w) - dim(w+2)

        Raises:
            ValueError: 差分為負（權重維度不構成 sl2 特徵標）
        """
        mults: Dict[int, int] = {}
        for w in sorted(dims):
            if w < 0:
                continue
            m = dims.get(w, 0) - dims.get(w + 2, 0)
            if m < 0:
                raise ValueError(f"權重 {w} 的重數差分為負: {m}")
            if m:
                mults[w] = m
        return cls.from_multiplicities(mults)

    @property
    def dim(self) -> int:
        return sum(c.mult * (c.hw + 1) for c in self.components)

    def is_zero(self) -> bool:
        return not self.components

    def character(self) -> Dict[int, int]:
        """各權重的維度"""
        chars: Counter = Counter()
        for c in self.components:
            for k in range(c.hw + 1):
                chars[c.hw - 2 * k] += c.mult
        return dict(chars)

    def subtract(self, other: "Decomposition") -> "Decomposition":
        """多重集合差

        Raises:
            ValueError: other 不是 self 的子多重集合
        """
        mults = {c.hw: c.mult for c in self.components}
        for c in other.components:
            remaining = mults.get(c.hw, 0) - c.mult
            if remaining < 0:
                raise ValueError(f"V{c.hw} 的重數不足以相減")
            mults[c.hw] = remaining
        return Decomposition.from_multiplicities(mults)

    def to_json(self) -> List[Dict[str, int]]:
        return [{"hw": c.hw, "mult": c.mult} for c in self.components]

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for c in self.components:
            parts.append(f"V{c.hw}" if c.mult == 1 else f"{c.mult}V{c.hw}")
        return " ⊕ ".join(parts)


class GradedRow(BaseModel):
    """分次代數的單一次數列

    同時記錄交集法（辮化冪）與商法（張量代數模理想）的結果。
    """

    n: int = Field(..., ge=1, description="次數")
    dim: int = Field(..., ge=0, description="交集法維度")
    components: Decomposition = Field(..., description="交集法分解")
    quotient_dim: int = Field(..., ge=0, description="商法維度")
    quotient_components: Decomposition = Field(..., description="商法分解")
    agree: bool = Field(..., description="兩種方法是否一致")

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "dim": self.dim,
            "components": self.components.to_json(),
            "quotient_dim": self.quotient_dim,
            "agree": self.agree,
        }


class GradedReport(BaseModel):
    """S_σ(V_ℓ) 或 Λ_σ(V_ℓ) 的分次報告"""

    l: int = Field(..., ge=0, description="V_ℓ 的最高權 ℓ")
    kind: str = Field(..., description="sym 或 ext")
    backend: str = Field(..., description="計算後端")
    rows: List[GradedRow] = Field(default_factory=list, description="各次數結果")

    @field_validator("kind")
    @classmethod
    def valid_kind(cls, v: str) -> str:
        if v not in ("sym", "ext"):
            raise ValueError(f"無效的種類: {v}")
        return v

    @property
    def all_agree(self) -> bool:
        return all(row.agree for row in self.rows)

    def to_json(self) -> Dict[str, object]:
        return {"l": self.l, "kind": self.kind, "rows": [row.to_json() for row in self.rows]}

    def to_table(self) -> str:
        header = f"{'n':>3}  {'dim':>6}  {'quot':>6}  {'agree':>5}  components"
        lines = [f"l={self.l} kind={self.kind} backend={self.backend}", header]
        for row in self.rows:
            lines.append(
                f"{row.n:>3}  {row.dim:>6}  {row.quotient_dim:>6}  {str(row.agree):>5}  {row.components}"
            )
        return "\n".join(lines)


class HilbertRow(BaseModel):
    """Hilbert 函數的單一列"""

    n: int = Field(..., ge=0, description="次數")
    dim: int = Field(..., ge=0, description="維度")
    components: Optional[Decomposition] = Field(default=None, description="模分解（若可得）")

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"n": self.n, "dim": self.dim}
        if self.components is not None:
            data["components"] = self.components.to_json()
        return data



class VeroneseRelation(BaseModel):
    """Veronese 二次關係 x_I x_J = q^exponent x_K x_L

    exponent 由正規排序（逆序數差）得到；lambda_exponent 為 Λ(I,J) - Λ(K,L)。
    """

    I: Tuple[int, ...] = Field(..., description="左因子的多重索引")
    J: Tuple[int, ...] = Field(..., description="右因子的多重索引")
    K: Tuple[int, ...] = Field(..., description="另一乘積的左因子")
    L: Tuple[int, ...] = Field(..., description="另一乘積的右因子")
    exponent: int = Field(..., description="正規排序給出的 q 指數")
    lambda_exponent: int = Field(..., description="Λ 公式給出的 q 指數")

    class Config:
        frozen = True

    @property
    def agree(self) -> bool:
        return self.exponent == self.lambda_exponent

    def to_csv_row(self) -> List[str]:
        return [
            "".join(map(str, self.I)),
            "".join(map(str, self.J)),
            "".join(map(str, self.K)),
            "".join(map(str, self.L)),
            str(self.exponent),
            str(self.lambda_exponent),
            str(self.agree).lower(),
        ]
