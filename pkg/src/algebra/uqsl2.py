"""
U_q(sl2) 權重模模組

建構量子與古典 sl2 的有限維權重模、以餘乘法作張量積、權重空間與最高權向量分析，
以及分解為不可約模。

作用慣例：
- 量子: E v_i = [i]_q v_{i-1}, F v_i = [ℓ-i]_q v_{i+1}, K v_i = q^{ℓ-2i} v_i
- 古典: 同一公式在 q = 1 的特殊化（CLASSICAL_FIELD），H 由權重給出
- 餘乘法: Δ(E) = E⊗1 + K⊗E, Δ(F) = F⊗K⁻¹ + 1⊗F
"""

from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.errors import FlavorMismatch, InconsistentModule
from src.algebra.exactla import EchelonBuilder, Matrix, Subspace, kernel, span
from src.algebra.qscalar import CLASSICAL_FIELD, EXACT_FIELD, ScalarField, SpecializedField
from src.models.algebra import Decomposition

SparseVec = Dict[int, Any]
TensorVec = Dict[Tuple[int, ...], Any]

QUANTUM = "quantum"
CLASSICAL = "classical"
GENERATORS = ("E", "F", "K", "Kinv", "H")


def _axpy(target: Dict[Any, Any], key: Any, value: Any) -> None:
    s = target.get(key)
    s = value if s is None else s + value
    if s:
        target[key] = s
    else:
        target.pop(key, None)


class ModuleRep:
    """有限維權重模

    E、F 以稀疏作用表儲存（第 j 個基底向量的像），
    需要稠密矩陣時透過 E_mat / F_mat 取得。

    Attributes:
        flavor: quantum 或 classical
        field: 係數體
        weights: 各基底向量的整數權重
        labels: 基底標籤
    """

    def __init__(
        self,
        flavor: str,
        field: ScalarField,
        weights: Sequence[int],
        e_action: Sequence[Mapping[int, Any]],
        f_action: Sequence[Mapping[int, Any]],
        labels: Optional[Sequence[str]] = None,
        verify: bool = True,
    ):
        if flavor not in (QUANTUM, CLASSICAL):
            raise ValueError(f"無效的模類型: {flavor}")
        if flavor == CLASSICAL and field != CLASSICAL_FIELD:
            raise FlavorMismatch("古典模必須使用 q = 1 的係數體")
        self.flavor = flavor
        self.field = field
        self.weights: Tuple[int, ...] = tuple(weights)
        self._e: Tuple[SparseVec, ...] = tuple({i: c for i, c in col.items() if c} for col in e_action)
        self._f: Tuple[SparseVec, ...] = tuple({i: c for i, c in col.items() if c} for col in f_action)
        self.labels: Tuple[str, ...] = tuple(labels) if labels else tuple(f"b{i}" for i in range(len(self.weights)))
        if not (len(self._e) == len(self._f) == len(self.weights) == len(self.labels)):
            raise InconsistentModule("作用表、權重與標籤長度不一致")
        self._by_weight: Dict[int, List[int]] = {}
        for idx, w in enumerate(self.weights):
            self._by_weight.setdefault(w, []).append(idx)
        if verify:
            self.verify_relations()

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def E_mat(self) -> Matrix:
        return self._dense(self._e)

    @property
    def F_mat(self) -> Matrix:
        return self._dense(self._f)

    @property
    def K_mat(self) -> Matrix:
        return Matrix.diagonal([self.field.q_power(w) for w in self.weights], self.field)

    def _dense(self, action: Sequence[SparseVec]) -> Matrix:
        zero = self.field.zero
        rows = [[zero] * self.dim for _ in range(self.dim)]
        for j, col in enumerate(action):
            for i, c in col.items():
                rows[i][j] = c
        return Matrix._trusted(rows, self.field, self.dim)

    def indices_of_weight(self, w: int) -> List[int]:
        return list(self._by_weight.get(w, []))

    def character(self) -> Dict[int, int]:
        return {w: len(idx) for w, idx in self._by_weight.items()}

    def apply(self, op: str, vec: Mapping[int, Any]) -> SparseVec:
        """對稀疏向量套用生成元

        Args:
            op: E, F, K, Kinv 或 H
            vec: {基底索引: 係數}
        """
        out: SparseVec = {}
        if op in ("E", "F"):
            action = self._e if op == "E" else self._f
            for j, c in vec.items():
                if not c:
                    continue
                for i, a in action[j].items():
                    _axpy(out, i, a * c)
            return out
        if op == "K":
            return {j: self.field.q_power(self.weights[j]) * c for j, c in vec.items() if c}
        if op == "Kinv":
            return {j: self.field.q_power(-self.weights[j]) * c for j, c in vec.items() if c}
        if op == "H":
            return {j: self.weights[j] * c for j, c in vec.items() if c and self.weights[j]}
        raise ValueError(f"未知的生成元: {op}")

    def verify_relations(self) -> None:
        """檢查定義關係

        E 升權重 2、F 降權重 2，且 EF - FE 在權重 w 上作用為 [w]_q
        （古典係數體中 [w] = w，即 [E, F] = H）。

        Raises:
            InconsistentModule: 任一關係不成立
        """
        for j, w in enumerate(self.weights):
            for i in self._e[j]:
                if self.weights[i] != w + 2:
                    raise InconsistentModule(f"E 未將權重 {w} 升至 {w + 2}（{self.labels[j]}）")
            for i in self._f[j]:
                if self.weights[i] != w - 2:
                    raise InconsistentModule(f"F 未將權重 {w} 降至 {w - 2}（{self.labels[j]}）")
        for j, w in enumerate(self.weights):
            ef = self.apply("E", self._f[j])
            fe = self.apply("F", self._e[j])
            comm: SparseVec = dict(ef)
            for i, c in fe.items():
                _axpy(comm, i, -c)
            _axpy(comm, j, -self.field.q_int(w))
            if comm:
                raise InconsistentModule(f"EF - FE ≠ [{w}] 作用於 {self.labels[j]}")

    def __repr__(self) -> str:
        return f"ModuleRep({self.flavor}, dim={self.dim}, field={self.field.key})"


def _default_field(flavor: str, field: Optional[ScalarField]) -> ScalarField:
    if field is not None:
        return field
    return CLASSICAL_FIELD if flavor == CLASSICAL else EXACT_FIELD


def simple_module(ell: int, flavor: str = QUANTUM, field: Optional[ScalarField] = None) -> ModuleRep:
    """單純模 V_ℓ（維度 ℓ+1）

    Args:
        ell: 最高權 ℓ ≥ 0
        flavor: quantum 或 classical
        field: 係數體；預設量子為精確 ℚ(q)，古典為 q = 1

    Example:
        >>> m = simple_module(2)
        >>> str(m.apply("E", {2: 1})[1])
        'q + q^-1'
    """
    if ell < 0:
        raise ValueError(f"最高權必須非負: {ell}")
    field = _default_field(flavor, field)
    e_action = [{i - 1: field.q_int(i)} if i > 0 else {} for i in range(ell + 1)]
    f_action = [{i + 1: field.q_int(ell - i)} if i < ell else {} for i in range(ell + 1)]
    prefix = "v" if flavor == QUANTUM else "vbar"
    return ModuleRep(
        flavor,
        field,
        [ell - 2 * i for i in range(ell + 1)],
        e_action,
        f_action,
        [f"{prefix}{i}" for i in range(ell + 1)],
    )


def tensor(a: ModuleRep, b: ModuleRep) -> ModuleRep:
    """張量積 a ⊗ b，基底 a_i⊗b_j 的索引為 i·dim(b) + j

    Raises:
        FlavorMismatch: 類型或係數體不同
    """
    if a.flavor != b.flavor or a.field != b.field:
        raise FlavorMismatch(f"無法張量 {a} 與 {b}")
    field = a.field
    nb = b.dim
    weights: List[int] = []
    labels: List[str] = []
    e_action: List[SparseVec] = []
    f_action: List[SparseVec] = []
    for i in range(a.dim):
        for j in range(nb):
            weights.append(a.weights[i] + b.weights[j])
            labels.append(f"{a.labels[i]}⊗{b.labels[j]}")
            e_col: SparseVec = {}
            for i2, c in a._e[i].items():
                _axpy(e_col, i2 * nb + j, c)
            k = field.q_power(a.weights[i])
            for j2, c in b._e[j].items():
                _axpy(e_col, i * nb + j2, k * c)
            f_col: SparseVec = {}
            kinv = field.q_power(-b.weights[j])
            for i2, c in a._f[i].items():
                _axpy(f_col, i2 * nb + j, c * kinv)
            for j2, c in b._f[j].items():
                _axpy(f_col, i * nb + j2, c)
            e_action.append(e_col)
            f_action.append(f_col)
    return ModuleRep(a.flavor, field, weights, e_action, f_action, labels)


def tensor_power(m: ModuleRep, n: int) -> ModuleRep:
    if n < 1:
        raise ValueError("張量次方必須 ≥ 1")
    result = m
    for _ in range(n - 1):
        result = tensor(result, m)
    return result


def weight_space(m: ModuleRep, w: int) -> Subspace:
    """權重 w 的座標子空間"""
    zero, one = m.field.zero, m.field.one
    rows = [[one if k == idx else zero for k in range(m.dim)] for idx in m.indices_of_weight(w)]
    return span(rows, m.dim, m.field)


def _operator_block(m: ModuleRep, op: str, source: Sequence[int], target: Sequence[int]) -> Matrix:
    """生成元在權重區塊間的矩陣（行 = source，列 = target）"""
    zero = m.field.zero
    pos = {idx: r for r, idx in enumerate(target)}
    rows = [[zero] * len(source) for _ in target]
    action = m._e if op == "E" else m._f
    for col, j in enumerate(source):
        for i, c in action[j].items():
            if i in pos:
                rows[pos[i]][col] = c
    return Matrix._trusted(rows, m.field, len(source))


def highest_weight_vectors(m: ModuleRep, w: int) -> Subspace:
    """Ker(E) ∩ 權重空間(w)"""
    source = m.indices_of_weight(w)
    target = m.indices_of_weight(w + 2)
    zero = m.field.zero
    if not source:
        return Subspace.zero(m.dim, m.field)
    if not target:
        return weight_space(m, w)
    null = kernel(_operator_block(m, "E", source, target))
    vectors = []
    for coeffs in null.vectors():
        v = [zero] * m.dim
        for c, idx in zip(coeffs, source):
            v[idx] = c
        vectors.append(v)
    return span(vectors, m.dim, m.field)


def decompose(m: ModuleRep) -> Decomposition:
    """分解為不可約模

    重數以兩種方式計算並交叉驗證：
    1. 權重維度差分 dim(w) - dim(w+2)
    2. 最高權向量空間維度

    Raises:
        InconsistentModule: 兩種計算不一致
    """
    chars = m.character()
    mults: Dict[int, int] = {}
    for w in sorted(chars):
        if w < 0:
            continue
        by_weights = chars.get(w, 0) - chars.get(w + 2, 0)
        by_kernel = highest_weight_vectors(m, w).dim
        if by_weights != by_kernel:
            raise InconsistentModule(
                f"權重 {w} 的重數不一致: 差分 {by_weights}，最高權向量 {by_kernel}"
            )
        if by_weights:
            mults[w] = by_weights
    result = Decomposition.from_multiplicities(mults)
    if result.character() != {w: d for w, d in chars.items() if d}:
        raise InconsistentModule("分解的特徵標與模不符")
    return result


def _split_by_weight(m: ModuleRep, vec: Mapping[int, Any]) -> List[SparseVec]:
    parts: Dict[int, SparseVec] = {}
    for idx, c in vec.items():
        if c:
            parts.setdefault(m.weights[idx], {})[idx] = c
    return [parts[w] for w in sorted(parts, reverse=True)]


def submodule_generated(m: ModuleRep, vectors: Iterable[Union[Sequence[Any], Mapping[int, Any]]]) -> Subspace:
    """包含給定向量的最小 E、F、K 穩定子空間

    先拆成權重分量（K 穩定），再反覆套用 E、F 直到不再擴大。
    """
    builder = EchelonBuilder(m.dim, m.field)
    zero = m.field.zero
    queue: List[SparseVec] = []
    for v in vectors:
        sparse = dict(v) if isinstance(v, Mapping) else {i: x for i, x in enumerate(v) if x}
        queue.extend(_split_by_weight(m, sparse))
    while queue:
        vec = queue.pop()
        dense = [vec.get(i, zero) for i in range(m.dim)]
        if not builder.add(dense):
            continue
        for op in ("E", "F"):
            image = m.apply(op, vec)
            if image:
                queue.append(image)
    return builder.to_subspace()


def specialize_module(m: ModuleRep, q0: Any = 1) -> ModuleRep:
    """將量子模的係數在 q = q0 取值；q0 = 1 得到古典模"""
    target = CLASSICAL_FIELD if q0 == 1 else SpecializedField(q0)
    flavor = CLASSICAL if q0 == 1 else QUANTUM
    e_action = [{i: target.coerce(c) for i, c in col.items()} for col in m._e]
    f_action = [{i: target.coerce(c) for i, c in col.items()} for col in m._f]
    return ModuleRep(flavor, target, m.weights, e_action, f_action, m.labels)


# ========================================
# V_ℓ^{⊗n} 上以多重索引表示的作用（不建立整個模）
# ========================================


def tensor_weight(ell: int, index: Sequence[int]) -> int:
    return len(index) * ell - 2 * sum(index)


def apply_tensor_generator(ell: int, field: ScalarField, op: str, vec: Mapping[Tuple[int, ...], Any]) -> TensorVec:
    """在 V_ℓ^{⊗n} 上套用 E 或 F

    E 作用於第 p 個分量時前面各分量乘上 K；F 作用時後面各分量乘上 K⁻¹。

    Args:
        ell: ℓ
        field: 係數體
        op: E 或 F
        vec: {多重索引: 係數}
    """
    out: TensorVec = {}
    for index, c in vec.items():
        if not c:
            continue
        n = len(index)
        for p in range(n):
            i = index[p]
            if op == "E":
                if i == 0:
                    continue
                before = sum(ell - 2 * index[r] for r in range(p))
                coeff = field.q_int(i) * field.q_power(before)
                new_index = index[:p] + (i - 1,) + index[p + 1:]
            elif op == "F":
                if i == ell:
                    continue
                after = sum(ell - 2 * index[r] for r in range(p + 1, n))
                coeff = field.q_int(ell - i) * field.q_power(-after)
                new_index = index[:p] + (i + 1,) + index[p + 1:]
            else:
                raise ValueError(f"只支援 E 或 F: {op}")
            _axpy(out, new_index, coeff * c)
    return out
