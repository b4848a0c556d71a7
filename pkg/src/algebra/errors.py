"""
代數例外定義

所有計算層錯誤皆繼承 AlgebraError，並同時繼承語意相近的內建例外，
讓呼叫端可以用 ValueError / ArithmeticError 等一般方式捕捉。
"""


class AlgebraError(Exception):
    """代數計算錯誤的基底類別"""


class PoleError(AlgebraError, ArithmeticError):
    """特殊化時分母在 q0 處為零"""


class InexactDivision(AlgebraError, ArithmeticError):
    """Laurent 多項式精確除法出現非零餘式"""


class AmbientMismatch(AlgebraError, ValueError):
    """兩個子空間的外圍維度不一致"""


class FlavorMismatch(AlgebraError, ValueError):
    """量子模與古典模（或不同係數體）混用"""


class MixedModule(AlgebraError, ValueError):
    """不同 ℓ 的古典多項式混用"""


class IndexOrder(AlgebraError, ValueError):
    """索引未依嚴格遞增順序給定"""


class IndexRange(AlgebraError, ValueError):
    """變數索引超出範圍"""


class UnsupportedRank(AlgebraError, ValueError):
    """不支援的秩（Veronese 模結構僅支援 n = 1, 2）"""


class InconsistentModule(AlgebraError):
    """模的兩種重數計算結果不一致，或定義關係不成立"""


class ResourceLimit(AlgebraError, RuntimeError):
    """權重區塊超過設定的上限"""

    def __init__(self, block_dim: int, limit: int, context: str = ""):
        self.block_dim = block_dim
        self.limit = limit
        self.context = context
        detail = f" ({context})" if context else ""
        super().__init__(f"權重區塊維度 {block_dim} 超過上限 {limit}{detail}")
