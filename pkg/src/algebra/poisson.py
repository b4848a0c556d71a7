"""
古典極限與 Poisson 閉包模組

S(V̄_ℓ) 上由 r⁻ = E⊗F - F⊗E 定義的二次括號、Jacobiator、Jacobian 理想、
Poisson 閉包的 Hilbert 函數，以及 T_{n,ℓ} 單項式組合。

E、F、H 在交換多項式上以導子作用：
E v̄_a = a v̄_{a-1}, F v̄_a = (ℓ-a) v̄_{a+1}, H v̄_a = (ℓ-2a) v̄_a
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from src.algebra.errors import IndexOrder, IndexRange, MixedModule
from src.algebra.exactla import EchelonBuilder
from src.algebra.qscalar import CLASSICAL_FIELD
from src.algebra.uqsl2 import CLASSICAL, ModuleRep
from src.models.algebra import Decomposition, HilbertRow

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Number = Union[int, Fraction]


class ClassicalPoly:
    """S(V̄_ℓ) 中的多項式，以 {指數向量 (k_0..k_ℓ): 係數} 儲存

    Example:
        >>> v = ClassicalPoly.generator
        >>> str(bracket(v(2, 0), v(2, 2)))
        '-4*v1^2'
    """

    __slots__ = ("ell", "_terms")

    def __init__(self, ell: int, terms: Optional[Mapping[Exponents, Number]] = None):
        if ell < 0:
            raise ValueError(f"ℓ 必須非負: {ell}")
        self.ell = ell
        cleaned: Dict[Exponents, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != ell + 1 or any(k < 0 for k in exps):
                raise IndexRange(f"無效的指數向量: {exps}")
            c = Fraction(c)
            if c:
                cleaned[exps] = cleaned.get(exps, 0) + c
        self._terms = {e: c for e, c in cleaned.items() if c}

    @classmethod
    def _raw(cls, ell: int, terms: Dict[Exponents, Fraction]) -> "ClassicalPoly":
        obj = cls.__new__(cls)
        obj.ell = ell
        obj._terms = terms
        return obj

    @classmethod
    def generator(cls, ell: int, a: int) -> "ClassicalPoly":
        if not 0 <= a <= ell:
            raise IndexRange(f"生成元索引 {a} 超出 [0, {ell}]")
        exps = [0] * (ell + 1)
        exps[a] = 1
        return cls._raw(ell, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, ell: int, exps: Exponents, coeff: Number = 1) -> "ClassicalPoly":
        return cls(ell, {tuple(exps): coeff})

    @classmethod
    def one(cls, ell: int) -> "ClassicalPoly":
        return cls._raw(ell, {(0,) * (ell + 1): Fraction(1)})

    @classmethod
    def zero(cls, ell: int) -> "ClassicalPoly":
        return cls._raw(ell, {})

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> List[int]:
        return sorted({sum(e) for e in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weights(self) -> List[int]:
        return sorted({monomial_weight(self.ell, e) for e in self._terms})

    def terminal_monomial(self) -> Tuple[Exponents, Fraction]:
        """字典序（指數向量）最小的單項式與其係數"""
        if not self._terms:
            raise ValueError("零多項式沒有終端單項式")
        least = min(self._terms)
        return least, self._terms[least]

    def _check(self, other: "ClassicalPoly") -> None:
        if self.ell != other.ell:
            raise MixedModule(f"ℓ 不一致: {self.ell} != {other.ell}")

    def __add__(self, other: "ClassicalPoly") -> "ClassicalPoly":
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return ClassicalPoly._raw(self.ell, out)

    def __neg__(self) -> "ClassicalPoly":
        return ClassicalPoly._raw(self.ell, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "ClassicalPoly") -> "ClassicalPoly":
        return self + (-other)

    def __mul__(self, other: Union["ClassicalPoly", Number]) -> "ClassicalPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ClassicalPoly.zero(self.ell)
            return ClassicalPoly._raw(self.ell, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        out: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ClassicalPoly._raw(self.ell, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalPoly):
            return NotImplemented
        return self.ell == other.ell and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ell, frozenset(self._terms.items())))

    def apply(self, op: str) -> "ClassicalPoly":
        """以導子方式套用 E、F 或 H"""
        ell = self.ell
        out: Dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            for a, k in enumerate(exps):
                if not k:
                    continue
                if op == "E":
                    factor, target = a, a - 1
                elif op == "F":
                    factor, target = ell - a, a + 1
                elif op == "H":
                    factor, target = ell - 2 * a, a
                else:
                    raise ValueError(f"未知的生成元: {op}")
                if not factor:
                    continue
                new = list(exps)
                new[a] -= 1
                new[target] += 1
                key = tuple(new)
                out[key] = out.get(key, 0) + c * k * factor
        return ClassicalPoly._raw(ell, {e: c for e, c in out.items() if c})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, reverse=True):
            c = self._terms[exps]
            factors = [f"v{a}" if k == 1 else f"v{a}^{k}" for a, k in enumerate(exps) if k]
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ClassicalPoly(ℓ={self.ell}, {self})"


def monomial_weight(ell: int, exps: Exponents) -> int:
    return sum(k * (ell - 2 * a) for a, k in enumerate(exps))


@lru_cache(maxsize=None)
def monomials(ell: int, n: int) -> Tuple[Exponents, ...]:
    """ℓ+1 個變數的 n 次單項式（指數向量）"""
    return tuple(_exponent_vectors(ell + 1, n))


def _exponent_vectors(nvars: int, n: int) -> Iterator[Exponents]:
    if nvars == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _exponent_vectors(nvars - 1, n - first):
            yield (first,) + rest


def bracket(u: ClassicalPoly, v: ClassicalPoly) -> ClassicalPoly:
    """{u, v} = E(u)F(v) - F(u)E(v)

    E、F 為導子，故此式即為雙導子延拓；不含 ½ 因子。

    Raises:
        MixedModule: ℓ 不同
    """
    u._check(v)
    return u.apply("E") * v.apply("F") - u.apply("F") * v.apply("E")


def jacobiator(u: ClassicalPoly, v: ClassicalPoly, w: ClassicalPoly) -> ClassicalPoly:
    """{u,{v,w}} + {w,{u,v}} + {v,{w,u}}"""
    u._check(v)
    u._check(w)
    return bracket(u, bracket(v, w)) + bracket(w, bracket(u, v)) + bracket(v, bracket(w, u))


def _perm_sign(perm: Tuple[int, ...]) -> int:
    inversions = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def jacobian_map(ell: int, a: int, b: int, c: int) -> ClassicalPoly:
    """完全反對稱化的 E∧F∧H 作用於 v̄_a⊗v̄_b⊗v̄_c，再乘入 S(V̄)_3

    Raises:
        IndexRange: 索引超出 [0, ℓ]
        IndexOrder: 未滿足 a < b < c
    """
    if min(a, b, c) < 0 or max(a, b, c) > ell:
        raise IndexRange(f"索引 ({a}, {b}, {c}) 超出 [0, {ell}]")
    if not a < b < c:
        raise IndexOrder(f"需要 a < b < c: ({a}, {b}, {c})")
    gens = [ClassicalPoly.generator(ell, i) for i in (a, b, c)]
    ops = ("E", "F", "H")
    total = ClassicalPoly.zero(ell)
    for perm in permutations(range(3)):
        term = ClassicalPoly.one(ell)
        for slot, op_idx in enumerate(perm):
            term = term * gens[slot].apply(ops[op_idx])
        total = total + term * _perm_sign(perm)
    return total


def generator_jacobiators(ell: int) -> List[ClassicalPoly]:
    """所有生成元三元組 a < b < c 的 Jacobiator（Jacobiator 對引數完全反對稱）"""
    v = [ClassicalPoly.generator(ell, i) for i in range(ell + 1)]
    return [jacobiator(v[a], v[b], v[c]) for a, b, c in combinations(range(ell + 1), 3)]


def _ideal_weight_ranks(ell: int, n: int, min_weight: Optional[int] = None) -> Dict[int, int]:
    """J_n 在各權重區塊的維度"""
    if n < 3:
        return {}
    gens = [g for g in generator_jacobiators(ell) if g]
    if not gens:
        return {}
    columns: Dict[int, Dict[Exponents, int]] = {}
    for exps in monomials(ell, n):
        w = monomial_weight(ell, exps)
        if min_weight is not None and w < min_weight:
            continue
        block = columns.setdefault(w, {})
        block[exps] = len(block)
    builders = {w: EchelonBuilder(len(block), CLASSICAL_FIELD) for w, block in columns.items()}
    zero = Fraction(0)
    for m in monomials(ell, n - 3):
        mono = ClassicalPoly._raw(ell, {m: Fraction(1)})
        for g in gens:
            product = mono * g
            by_weight: Dict[int, List[Fraction]] = {}
            for exps, c in product._terms.items():
                w = monomial_weight(ell, exps)
                if w not in columns:
                    continue
                row = by_weight.setdefault(w, [zero] * len(columns[w]))
                row[columns[w][exps]] = c
            for w, row in by_weight.items():
                builders[w].add(row)
    return {w: b.dim for w, b in builders.items()}


def jacobian_ideal_dim(ell: int, n: int) -> int:
    """dim span{ m · jacobiator(v̄_a, v̄_b, v̄_c) : deg m = n - 3 }，以 ℚ 上精確秩計算"""
    if n < 3:
        raise ValueError(f"Jacobian 理想從 3 次開始: n={n}")
    return sum(_ideal_weight_ranks(ell, n).values())


def poisson_closure_hilbert(ell: int, n_max: int) -> List[HilbertRow]:
    """dim (S(V̄_ℓ)/J)_n，n = 0..n_max，並附模分解

    J 為 U(sl2) 子模，故商的分解可由 w ≥ 0 的權重維度差分得到。
    """
    if n_max < 2:
        raise ValueError(f"n_max 必須 ≥ 2: {n_max}")
    rows = []
    for n in range(n_max + 1):
        ranks = _ideal_weight_ranks(ell, n, min_weight=0)
        dims: Dict[int, int] = {}
        for exps in monomials(ell, n):
            w = monomial_weight(ell, exps)
            if w >= 0:
                dims[w] = dims.get(w, 0) + 1
        quotient = {w: d - ranks.get(w, 0) for w, d in dims.items()}
        dec = Decomposition.from_weight_dims(quotient)
        rows.append(HilbertRow(n=n, dim=dec.dim, components=dec))
        logger.debug(f"Poisson 閉包 ℓ={ell} n={n}: dim={dec.dim}")
    return rows


def symmetric_power_module(ell: int, n: int) -> ModuleRep:
    """古典 S^n(V̄_ℓ) 作為 U(sl2) 模（基底為單項式）"""
    basis = list(monomials(ell, n))
    pos = {e: i for i, e in enumerate(basis)}
    actions = {}
    for op in ("E", "F"):
        cols = []
        for exps in basis:
            image = ClassicalPoly._raw(ell, {exps: Fraction(1)}).apply(op)
            cols.append({pos[e]: c for e, c in image._terms.items()})
        actions[op] = cols
    return ModuleRep(
        CLASSICAL,
        CLASSICAL_FIELD,
        [monomial_weight(ell, e) for e in basis],
        actions["E"],
        actions["F"],
        [str(ClassicalPoly._raw(ell, {e: Fraction(1)})) for e in basis],
    )


# ========================================
# 終端單項式與 T_{n,ℓ}
# ========================================


def terminal_monomial_check(ell: int, a: int, b: int, c: int) -> Dict[str, object]:
    """jacobian_map 的終端單項式是否為 v̄_{a+1} v̄_b v̄_{c-1}，係數 (ℓ-a)(ℓ-2b)c

    終端 = 指數向量字典序最小。
    """
    image = jacobian_map(ell, a, b, c)
    expected = [0] * (ell + 1)
    for idx in (a + 1, b, c - 1):
        expected[idx] += 1
    expected_coeff = (ell - a) * (ell - 2 * b) * c
    if image.is_zero():
        return {"monomial": None, "coefficient": 0, "expected_monomial": list(expected),
                "expected_coefficient": expected_coeff, "match": False}
    least, coeff = image.terminal_monomial()
    return {
        "monomial": list(least),
        "coefficient": str(coeff),
        "expected_monomial": list(expected),
        "expected_coefficient": expected_coeff,
        "match": least == tuple(expected) and coeff == expected_coeff and coeff != 0,
    }


def degree_three_spans_agree(ell: int) -> bool:
    """Jacobiator 與 jacobian_map 在 S(V̄)_3 中張成同一空間"""
    basis = {e: i for i, e in enumerate(monomials(ell, 3))}
    zero = Fraction(0)

    def builder_for(polys: List[ClassicalPoly]) -> EchelonBuilder:
        builder = EchelonBuilder(len(basis), CLASSICAL_FIELD)
        for p in polys:
            row = [zero] * len(basis)
            for e, c in p._terms.items():
                row[basis[e]] = c
            builder.add(row)
        return builder

    jac = builder_for(generator_jacobiators(ell))
    cmap = builder_for([jacobian_map(ell, a, b, c) for a, b, c in combinations(range(ell + 1), 3)])
    if jac.dim != cmap.dim:
        return False
    for vec in cmap.to_subspace().vectors():
        if jac.add(list(vec)):
            return False
    return True


def t_members(ell: int, n: int) -> List[Exponents]:
    """T_{n,ℓ} = {Σk_j = n, k_0 + k_ℓ ≥ n - 2}

    Raises:
        ValueError: ℓ < 1 或 n < 2
    """
    if ell < 1:
        raise ValueError(f"T_(n,ℓ) 需要 ℓ ≥ 1: {ell}")
    if n < 2:
        raise ValueError(f"T_(n,ℓ) 需要 n ≥ 2: {n}")
    return [e for e in monomials(ell, n) if e[0] + e[ell] >= n - 2]


def t_count(ell: int, n: int) -> int:
    return len(t_members(ell, n))


def t_count_formula(ell: int, n: int) -> int:
    """binom(ℓ+2, 2) + (n-2)·binom(ℓ+1, 2)"""
    return (ell + 2) * (ell + 1) // 2 + (n - 2) * (ell + 1) * ell // 2


def symmetric_dim(ell: int, n: int) -> int:
    """dim S^n(V̄_ℓ) = binom(n+ℓ, ℓ)"""
    return len(monomials(ell, n))
