"""
q 係數運算模組

提供 ℚ(q) 上的精確運算：Laurent 多項式、有理函數體、量子整數與量子二項式，
以及在有理點 q0 的特殊化。

兩種係數體共用 ScalarField 介面：
- RationalFunctionField: 精確 ℚ(q)，所有結果具權威性
- SpecializedField: q ↦ q0 的有理數特殊化，用於快速篩選；q0 = 1 即古典極限
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from src.algebra.errors import InexactDivision, PoleError

Rational = Fraction
Number = Union[int, Fraction]


# ========================================
# 稠密多項式輔助函式（係數串列，索引 = 次方）
# ========================================


def _trim(poly: List[Fraction]) -> List[Fraction]:
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _poly_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """多項式長除法，回傳 (商, 餘式)"""
    rem = list(a)
    if len(rem) < len(b):
        return [], _trim(rem)
    quot = [Fraction(0)] * (len(rem) - len(b) + 1)
    lead = b[-1]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        quot[shift] = c
        for i, bc in enumerate(b):
            if bc:
                rem[shift + i] -= c * bc
        rem.pop()
        _trim(rem)
    return _trim(quot), rem


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """首一最大公因式"""
    x, y = list(a), list(b)
    while y:
        _, r = _poly_divmod(x, y)
        x, y = y, r
    lead = x[-1]
    return [c / lead for c in x]


# ========================================
# Laurent 多項式
# ========================================


class LaurentPoly:
    """ℚ[q, q⁻¹] 中的元素，以稀疏的 {指數: 係數} 儲存

    不儲存零係數；空映射即為零多項式。建立後不可變。

    Example:
        >>> q = LaurentPoly.q()
        >>> str(q * q + 1 + q ** -2)
        'q^2 + 1 + q^-2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Number]] = None):
        cleaned: Dict[int, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                cleaned[int(exp)] = c
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _from_dense(cls, coeffs: List[Fraction], shift: int) -> "LaurentPoly":
        return cls._raw({i + shift: c for i, c in enumerate(coeffs) if c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: Fraction(1)})

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls._raw({1: Fraction(1)})

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value: Number) -> "LaurentPoly":
        return cls({0: value})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(0) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("零多項式沒有次數")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("零多項式沒有賦值")
        return min(self._terms)

    def _dense(self) -> Tuple[List[Fraction], int]:
        low = self.valuation()
        coeffs = [Fraction(0)] * (self.degree() - low + 1)
        for exp, c in self._terms.items():
            coeffs[exp - low] = c
        return coeffs, low

    def shift(self, k: int) -> "LaurentPoly":
        """乘以 q^k"""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """bar 對合 q ↦ q⁻¹"""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def evaluate(self, q0: Number) -> Fraction:
        q0 = Fraction(q0)
        if not q0 and any(e < 0 for e in self._terms):
            raise PoleError("Laurent 多項式在 q = 0 處有極點")
        return sum((c * q0**e for e, c in self._terms.items()), Fraction(0))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """精確除法，有餘式即失敗

        Raises:
            ZeroDivisionError: 除數為零
            InexactDivision: 除不盡
        """
        if other.is_zero():
            raise ZeroDivisionError("Laurent 多項式除以零")
        if self.is_zero():
            return LaurentPoly.zero()
        a, va = self._dense()
        b, vb = other._dense()
        quot, rem = _poly_divmod(a, b)
        if rem:
            raise InexactDivision(f"{self} 無法被 {other} 整除")
        return LaurentPoly._from_dense(quot, va - vb)

    def __add__(self, other: Any) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exp, c in other._terms.items():
            s = result.get(exp, 0) + c
            if s:
                result[exp] = s
            else:
                result.pop(exp, None)
        return LaurentPoly._raw(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        result: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("只有單項式可以取負次方")
            (exp, c), = self._terms.items()
            return LaurentPoly._raw({exp * k: c**k})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, RatFunc):
            return other == self
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and 0 in self._terms:
                self._hash = hash(self._terms[0])
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mag = abs(c)
            if exp == 0:
                body = str(mag)
            else:
                base = "q" if exp == 1 else f"q^{exp}"
                body = base if mag == 1 else f"{mag}*{base}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _as_laurent(value: Any) -> Optional[LaurentPoly]:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    return None


# ========================================
# 有理函數體 ℚ(q)
# ========================================


def _normalize(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """標準形：gcd 約去、分母首一且賦值為 0"""
    if num.is_zero():
        return LaurentPoly.zero(), LaurentPoly.one()
    if den.is_monomial():
        (exp, c), = den._terms.items()
        return LaurentPoly._raw({e - exp: v / c for e, v in num._terms.items()}), LaurentPoly.one()
    n0, a = num._dense()
    d0, b = den._dense()
    g = _poly_gcd(n0, d0)
    if len(g) > 1:
        n0, _ = _poly_divmod(n0, g)
        d0, _ = _poly_divmod(d0, g)
    lead = d0[-1]
    if lead != 1:
        n0 = [c / lead for c in n0]
        d0 = [c / lead for c in d0]
    return LaurentPoly._from_dense(n0, a - b), LaurentPoly._from_dense(d0, 0)


class RatFunc:
    """ℚ(q) 的元素，num/den 皆為 Laurent 多項式並維持標準形

    標準形讓「是否為零」成為結構判斷，也讓雜湊與快取鍵唯一。
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Any = 0, den: Any = None):
        n = _as_laurent(num)
        if n is None:
            raise TypeError(f"無法轉換為 Laurent 多項式: {num!r}")
        d = LaurentPoly.one() if den is None else _as_laurent(den)
        if d is None:
            raise TypeError(f"無法轉換為 Laurent 多項式: {den!r}")
        if d.is_zero():
            raise ZeroDivisionError("有理函數分母為零")
        if d.is_one():
            self.num, self.den = n, d
        else:
            self.num, self.den = _normalize(n, d)
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        if den.is_one() or num.is_zero():
            return cls._raw(num, LaurentPoly.one()) if den.is_one() else cls.zero()
        n, d = _normalize(num, den)
        return cls._raw(n, d)

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls._raw(LaurentPoly.zero(), LaurentPoly.one())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls._raw(LaurentPoly.one(), LaurentPoly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("零沒有乘法反元素")
        return RatFunc._make(self.den, self.num)

    def bar(self) -> "RatFunc":
        return RatFunc._make(self.num.bar(), self.den.bar())

    def __add__(self, other: Any) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return RatFunc._make(self.num + other.num, self.den)
        return RatFunc._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other: Any) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other: Any) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num * other.num, self.den)
        return RatFunc._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "RatFunc":
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._make(self.num**k, self.den**k)

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other: Any) -> bool:
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.num) if self.den.is_one() else hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _as_ratfunc(value: Any) -> Optional[RatFunc]:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction, LaurentPoly)):
        return RatFunc._raw(_as_laurent(value), LaurentPoly.one())
    return None


# ========================================
# 量子整數、量子二項式、特殊化
# ========================================


@lru_cache(maxsize=None)
def q_int(n: int) -> LaurentPoly:
    """量子整數 [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}

    Args:
        n: 任意整數；[0] = 0，[-n] = -[n]

    Example:
        >>> str(q_int(3))
        'q^2 + 1 + q^-2'
    """
    if n == 0:
        return LaurentPoly.zero()
    if n < 0:
        return -q_int(-n)
    return LaurentPoly._raw({n - 1 - 2 * k: Fraction(1) for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    result = LaurentPoly.one()
    for k in range(1, n + 1):
        result = result * q_int(k)
    return result


@lru_cache(maxsize=None)
def q_binomial(m: int, i: int) -> LaurentPoly:
    """量子二項式 [m]! / ([i]! [m-i]!)，以精確除法計算

    i 超出 [0, m] 時回傳 0。
    """
    if i < 0 or i > m:
        return LaurentPoly.zero()
    return q_factorial(m).exact_div(q_factorial(i) * q_factorial(m - i))


def specialize(x: Any, q0: Number) -> Fraction:
    """在 q = q0 處取值

    Args:
        x: RatFunc、LaurentPoly 或有理數
        q0: 非零有理數

    Returns:
        有理數值

    Raises:
        ValueError: q0 = 0
        PoleError: 分母在 q0 處為零
    """
    q0 = Fraction(q0)
    if not q0:
        raise ValueError("特殊化點 q0 不可為 0")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, LaurentPoly):
        return x.evaluate(q0)
    if isinstance(x, RatFunc):
        den = x.den.evaluate(q0)
        if not den:
            raise PoleError(f"{x} 在 q = {q0} 處有極點")
        return x.num.evaluate(q0) / den
    raise TypeError(f"無法特殊化的型別: {type(x).__name__}")


# ========================================
# 係數體抽象
# ========================================


class ScalarField(ABC):
    """係數體介面

    exactla / uqsl2 / braided 只透過此介面取得 q 相關常數，
    元素本身支援 + - * / 與真值判斷（非零即真）。
    """

    exact: bool = False

    @property
    @abstractmethod
    def name(self) -> str:
        """後端名稱（exact / specialize）"""

    @property
    @abstractmethod
    def key(self) -> str:
        """快取鍵用的穩定識別字串"""

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """將整數、有理數或本體元素轉成本體元素"""

    @abstractmethod
    def q_power(self, k: int) -> Any:
        """q^k"""

    @abstractmethod
    def q_int(self, n: int) -> Any:
        """[n]_q"""

    @abstractmethod
    def q_binomial(self, m: int, i: int) -> Any:
        """[m choose i]_q"""

    @abstractmethod
    def to_rational(self, x: Any, q0: Number) -> Fraction:
        """將元素特殊化為有理數"""

    @property
    def zero(self) -> Any:
        return self.coerce(0)

    @property
    def one(self) -> Any:
        return self.coerce(1)

    def render(self, x: Any) -> str:
        return str(x)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ScalarField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.key})"


class RationalFunctionField(ScalarField):
    """精確 ℚ(q)"""

    exact = True

    @property
    def name(self) -> str:
        return "exact"

    @property
    def key(self) -> str:
        return "exact"

    def coerce(self, value: Any) -> RatFunc:
        converted = _as_ratfunc(value)
        if converted is None:
            raise TypeError(f"無法轉換為 ℚ(q) 元素: {value!r}")
        return converted

    def q_power(self, k: int) -> RatFunc:
        return _q_power_exact(k)

    def q_int(self, n: int) -> RatFunc:
        return RatFunc._raw(q_int(n), LaurentPoly.one())

    def q_binomial(self, m: int, i: int) -> RatFunc:
        return RatFunc._raw(q_binomial(m, i), LaurentPoly.one())

    def to_rational(self, x: Any, q0: Number) -> Fraction:
        return specialize(x, q0)


@lru_cache(maxsize=None)
def _q_power_exact(k: int) -> RatFunc:
    return RatFunc._raw(LaurentPoly.monomial(k), LaurentPoly.one())


class SpecializedField(ScalarField):
    """q ↦ q0 的有理數特殊化

    q0 = 1 時 [n]_q = n，即為古典 U(sl2) 的係數體。
    """

    exact = False

    def __init__(self, q0: Number):
        q0 = Fraction(q0)
        if not q0:
            raise ValueError("特殊化點 q0 不可為 0")
        self.q0 = q0

    @property
    def name(self) -> str:
        return "classical" if self.q0 == 1 else "specialize"

    @property
    def key(self) -> str:
        return f"specialize:{self.q0}"

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        return specialize(value, self.q0)

    def q_power(self, k: int) -> Fraction:
        return self.q0**k

    def q_int(self, n: int) -> Fraction:
        return q_int(n).evaluate(self.q0)

    def q_binomial(self, m: int, i: int) -> Fraction:
        return q_binomial(m, i).evaluate(self.q0)

    def to_rational(self, x: Any, q0: Number) -> Fraction:
        if Fraction(q0) != self.q0:
            raise ValueError(f"已特殊化於 q0 = {self.q0}，無法再於 {q0} 取值")
        return Fraction(x)


EXACT_FIELD = RationalFunctionField()
CLASSICAL_FIELD = SpecializedField(1)
DEFAULT_Q0 = Fraction(7, 5)


def make_field(backend: str, q0: Optional[Number] = None) -> ScalarField:
    """依後端名稱建立係數體

    Args:
        backend: exact 或 specialize
        q0: specialize 使用的特殊化點（預設 7/5）

    Raises:
        ValueError: 不支援的後端
    """
    if backend == "exact":
        return EXACT_FIELD
    if backend == "specialize":
        return SpecializedField(DEFAULT_Q0 if q0 is None else q0)
    raise ValueError(f"不支援的計算後端: {backend}")


def parse_rational(text: str) -> Fraction:
    """解析 NUM/DEN 形式的有理數字串"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"無效的有理數: {text!r}") from e
