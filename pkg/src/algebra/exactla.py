"""
精確線性代數模組

係數體通用（Fraction 或 RatFunc）的稠密線性代數：RREF、秩、核、子空間和與交。
樞軸一律取由左至右第一個非零元素，確保 RREF 輸出可重現。
"""

from typing import Any, Iterable, List, Optional, Sequence, Tuple

from src.algebra.errors import AmbientMismatch
from src.algebra.qscalar import ScalarField

Row = List[Any]


class Matrix:
    """稠密矩陣，元素為單一係數體的精確元素

    Attributes:
        rows: 列數
        cols: 行數
        field: 係數體
    """

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data: Sequence[Sequence[Any]], field: ScalarField, cols: Optional[int] = None):
        self.field = field
        self._data: Tuple[Tuple[Any, ...], ...] = tuple(
            tuple(field.coerce(x) for x in row) for row in data
        )
        self.rows = len(self._data)
        if cols is None:
            cols = len(self._data[0]) if self._data else 0
        self.cols = cols
        for row in self._data:
            if len(row) != cols:
                raise ValueError(f"矩陣列長度不一致: 預期 {cols}，實際 {len(row)}")

    @classmethod
    def _trusted(cls, data: List[Row], field: ScalarField, cols: int) -> "Matrix":
        obj = cls.__new__(cls)
        obj.field = field
        obj._data = tuple(tuple(row) for row in data)
        obj.rows = len(obj._data)
        obj.cols = cols
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int, field: ScalarField) -> "Matrix":
        zero = field.zero
        return cls._trusted([[zero] * cols for _ in range(rows)], field, cols)

    @classmethod
    def identity(cls, n: int, field: ScalarField) -> "Matrix":
        zero, one = field.zero, field.one
        return cls._trusted(
            [[one if i == j else zero for j in range(n)] for i in range(n)], field, n
        )

    @classmethod
    def diagonal(cls, entries: Sequence[Any], field: ScalarField) -> "Matrix":
        n = len(entries)
        zero = field.zero
        return cls._trusted(
            [[field.coerce(entries[i]) if i == j else zero for j in range(n)] for i in range(n)],
            field,
            n,
        )

    def __getitem__(self, idx: Tuple[int, int]) -> Any:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Tuple[Any, ...]:
        return self._data[i]

    def to_rows(self) -> List[Row]:
        return [list(row) for row in self._data]

    def transpose(self) -> "Matrix":
        return Matrix._trusted(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.field,
            self.rows,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix._trusted(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
            self.field,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix._trusted(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
            self.field,
            self.cols,
        )

    def scale(self, c: Any) -> "Matrix":
        return Matrix._trusted([[c * x for x in row] for row in self._data], self.field, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"矩陣維度不相容: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = self.field.zero
        out: List[Row] = []
        for row in self._data:
            acc = [zero] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other._data[k]):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix._trusted(out, self.field, other.cols)

    def apply(self, vector: Sequence[Any]) -> List[Any]:
        """矩陣乘以行向量"""
        zero = self.field.zero
        out = []
        for row in self._data:
            acc = zero
            for a, x in zip(row, vector):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return not any(x for row in self._data for x in row)

    def inverse(self) -> "Matrix":
        """以 [M | I] 的 RREF 求反矩陣

        Raises:
            ValueError: 非方陣或奇異矩陣
        """
        if self.rows != self.cols:
            raise ValueError("只有方陣可以求反")
        n = self.rows
        zero, one = self.field.zero, self.field.one
        aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(self._data)]
        reduced, pivots = _rref_rows(aug, 2 * n, limit_cols=n)
        if len(pivots) < n:
            raise ValueError("矩陣奇異，無法求反")
        return Matrix._trusted([row[n:] for row in reduced[:n]], self.field, n)

    def _check_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("矩陣形狀不一致")

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, field={self.field.key})"


def _rref_rows(
    rows: List[Row], ncols: int, limit_cols: Optional[int] = None
) -> Tuple[List[Row], List[int]]:
    """就地 Gauss-Jordan 消去

    Args:
        rows: 會被修改的列串列
        ncols: 行數
        limit_cols: 只在前 limit_cols 行中找樞軸

    Returns:
        (RREF 列串列, 樞軸行索引)，零列保留在末端
    """
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    search = ncols if limit_cols is None else limit_cols
    for c in range(search):
        if r >= nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        prow = rows[r]
        if prow[c] != 1:
            inv = 1 / prow[c]
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            factor = rows[i][c]
            if not factor:
                continue
            target = list(rows[i])
            for j in nz:
                target[j] = target[j] - factor * prow[j]
            rows[i] = target
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> Tuple[Matrix, int]:
    """簡化列梯形式與秩

    Example:
        >>> reduced, rank = rref(Matrix([[1, 2], [2, 4]], field))
        >>> rank
        1
    """
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return Matrix._trusted(rows, m.field, m.cols), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


class Subspace:
    """外圍座標空間中的子空間，基底以 RREF 儲存（無零列）

    Attributes:
        ambient_dim: 外圍空間維度
        basis: RREF 基底矩陣，每列一個基底向量
        pivot_cols: 嚴格遞增的樞軸行索引
    """

    __slots__ = ("ambient_dim", "field", "basis", "pivot_cols")

    def __init__(self, ambient_dim: int, field: ScalarField, basis: Matrix, pivot_cols: Sequence[int]):
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = basis
        self.pivot_cols = tuple(pivot_cols)

    @classmethod
    def zero(cls, ambient_dim: int, field: ScalarField) -> "Subspace":
        return cls(ambient_dim, field, Matrix._trusted([], field, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int, field: ScalarField) -> "Subspace":
        return cls(ambient_dim, field, Matrix.identity(ambient_dim, field), range(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> List[Tuple[Any, ...]]:
        return [self.basis.row(i) for i in range(self.basis.rows)]

    def reduce(self, vector: Sequence[Any]) -> List[Any]:
        """向量對子空間的標準餘式（消去所有樞軸座標）"""
        if len(vector) != self.ambient_dim:
            raise AmbientMismatch(f"向量長度 {len(vector)} 與外圍維度 {self.ambient_dim} 不符")
        v = [self.field.coerce(x) for x in vector]
        for row_idx, c in enumerate(self.pivot_cols):
            factor = v[c]
            if not factor:
                continue
            brow = self.basis.row(row_idx)
            for j in range(c, self.ambient_dim):
                if brow[j]:
                    v[j] = v[j] - factor * brow[j]
        return v

    def contains(self, vector: Sequence[Any]) -> bool:
        return not any(self.reduce(vector))

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.vectors())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivot_cols == other.pivot_cols
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivot_cols, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(vectors: Iterable[Sequence[Any]], ambient_dim: int, field: ScalarField) -> Subspace:
    """任意向量集合張成的子空間"""
    rows = [[field.coerce(x) for x in v] for v in vectors]
    for row in rows:
        if len(row) != ambient_dim:
            raise AmbientMismatch(f"向量長度 {len(row)} 與外圍維度 {ambient_dim} 不符")
    return _span_trusted(rows, ambient_dim, field)


def _span_trusted(rows: List[Row], ambient_dim: int, field: ScalarField) -> Subspace:
    reduced, pivots = _rref_rows(rows, ambient_dim)
    return Subspace(
        ambient_dim, field, Matrix._trusted(reduced[: len(pivots)], field, ambient_dim), pivots
    )


def kernel(m: Matrix) -> Subspace:
    """右零空間，維度 = cols - rank

    Example:
        >>> kernel(Matrix([[1, 1, 0], [0, 1, 1]], field)).dim
        1
    """
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    field = m.field
    zero, one = field.zero, field.one
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis: List[Row] = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for r, p in enumerate(pivots):
            if rows[r][f]:
                v[p] = -rows[r][f]
        basis.append(v)
    return _span_trusted(basis, m.cols, field)


def left_kernel(m: Matrix) -> Subspace:
    """左零空間 {c : c·M = 0}，外圍維度 = rows"""
    return kernel(m.transpose())


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"外圍維度不一致: {a.ambient_dim} != {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """a + b 的 RREF 基底

    Raises:
        AmbientMismatch: 外圍維度不同
    """
    _check_ambient(a, b)
    return _span_trusted(a.basis.to_rows() + b.basis.to_rows(), a.ambient_dim, a.field)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b，透過堆疊系統 [Aᵀ | -Bᵀ] 的核求得

    Raises:
        AmbientMismatch: 外圍維度不同
    """
    _check_ambient(a, b)
    field = a.field
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, field)
    stacked = [
        [a.basis[i, col] for i in range(a.dim)] + [-b.basis[j, col] for j in range(b.dim)]
        for col in range(a.ambient_dim)
    ]
    null = kernel(Matrix._trusted(stacked, field, a.dim + b.dim))
    zero = field.zero
    vectors: List[Row] = []
    for coeffs in null.vectors():
        v = [zero] * a.ambient_dim
        for i in range(a.dim):
            c = coeffs[i]
            if not c:
                continue
            brow = a.basis.row(i)
            for j in range(a.ambient_dim):
                if brow[j]:
                    v[j] = v[j] + c * brow[j]
        vectors.append(v)
    return _span_trusted(vectors, a.ambient_dim, field)


class EchelonBuilder:
    """逐一加入向量的增量 RREF

    用於子模閉包與理想分量等需要反覆判斷「是否為新向量」的場合。

    Example:
        >>> builder = EchelonBuilder(3, field)
        >>> builder.add([1, 0, 0])
        True
        >>> builder.add([2, 0, 0])
        False
    """

    def __init__(self, ambient_dim: int, field: ScalarField):
        self.ambient_dim = ambient_dim
        self.field = field
        self._rows: List[Row] = []
        self._pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence[Any]) -> Row:
        v = list(vector)
        for row, c in zip(self._rows, self._pivots):
            factor = v[c]
            if not factor:
                continue
            for j in range(c, self.ambient_dim):
                if row[j]:
                    v[j] = v[j] - factor * row[j]
        return v

    def add(self, vector: Sequence[Any]) -> bool:
        """加入向量，回傳是否擴大了子空間"""
        if len(vector) != self.ambient_dim:
            raise AmbientMismatch(f"向量長度 {len(vector)} 與外圍維度 {self.ambient_dim} 不符")
        v = self.reduce(vector)
        pivot = next((j for j, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        v = [x * inv if x else x for x in v]
        for idx, row in enumerate(self._rows):
            factor = row[pivot]
            if factor:
                self._rows[idx] = [a - factor * b if b else a for a, b in zip(row, v)]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < pivot:
            pos += 1
        self._rows.insert(pos, v)
        self._pivots.insert(pos, pivot)
        return True

    def to_subspace(self) -> Subspace:
        return Subspace(
            self.ambient_dim,
            self.field,
            Matrix._trusted([list(r) for r in self._rows], self.field, self.ambient_dim),
            self._pivots,
        )
