"""
q 係數與係數體測試
"""

import random
from fractions import Fraction

import pytest

from src.algebra.errors import InexactDivision, PoleError
from src.algebra.qscalar import (
    CLASSICAL_FIELD,
    EXACT_FIELD,
    LaurentPoly,
    RatFunc,
    SpecializedField,
    make_field,
    parse_rational,
    q_binomial,
    q_int,
    specialize,
)

q = LaurentPoly.q()


def _random_ratfunc(rng: random.Random) -> RatFunc:
    num = LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(3)})
    den = LaurentPoly({rng.randint(-2, 2): rng.randint(1, 3) for _ in range(2)})
    return RatFunc(num, den)


class TestLaurentPoly:
    def test_str(self):
        assert str(q * q + 1 + q**-2) == "q^2 + 1 + q^-2"
        assert str(LaurentPoly.zero()) == "0"

    def test_quantum_integers(self):
        assert q_int(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
        assert q_int(0).is_zero()
        assert q_int(-2) == -q_int(2)
        for n in range(6):
            assert q_int(n).bar() == q_int(n)
            assert q_int(n).evaluate(1) == n

    def test_quantum_binomial(self):
        assert q_binomial(2, 1) == q + q**-1
        assert q_binomial(4, 2).evaluate(1) == 6
        assert q_binomial(3, 5).is_zero()

    def test_exact_division(self):
        product = (q + 1) * (q - 1)
        assert product.exact_div(q - 1) == q + 1
        with pytest.raises(InexactDivision):
            (q + 1).exact_div(q - 1)
        with pytest.raises(ZeroDivisionError):
            q.exact_div(LaurentPoly.zero())

    def test_negative_power_requires_monomial(self):
        with pytest.raises(ValueError):
            (q + 1) ** -1


class TestRatFunc:
    def test_normal_form(self):
        f = RatFunc(q + 1, q - 1) * (q - 1)
        assert f == q + 1
        assert RatFunc(q * q - 1, q - 1) == q + 1
        assert hash(RatFunc(q * q - 1, q - 1)) == hash(RatFunc(q + 1))

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc(1, 0)

    def test_field_axioms(self):
        rng = random.Random(7)
        for _ in range(20):
            a, b, c = (_random_ratfunc(rng) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            if a:
                assert a * a.inverse() == 1

    def test_bar_is_involution(self):
        f = RatFunc(q + 2, q**3 - q)
        assert f.bar().bar() == f


class TestSpecialize:
    def test_values(self):
        assert specialize(q_int(2), Fraction(7, 5)) == Fraction(7, 5) + Fraction(5, 7)
        assert specialize(3, 2) == 3

    def test_pole(self):
        with pytest.raises(PoleError):
            specialize(RatFunc(1, q - 1), 1)

    def test_zero_point(self):
        with pytest.raises(ValueError):
            specialize(q, 0)


class TestFields:
    def test_names(self):
        assert EXACT_FIELD.name == "exact"
        assert CLASSICAL_FIELD.name == "classical"
        assert SpecializedField(Fraction(7, 5)).name == "specialize"

    def test_classical_integers(self):
        assert CLASSICAL_FIELD.q_int(5) == 5
        assert CLASSICAL_FIELD.q_binomial(4, 2) == 6

    def test_specialized_field_rejects_zero(self):
        with pytest.raises(ValueError):
            SpecializedField(0)

    def test_make_field(self):
        assert make_field("exact") is EXACT_FIELD
        assert make_field("specialize").q0 == Fraction(7, 5)
        assert make_field("specialize", 3).q0 == 3
        with pytest.raises(ValueError):
            make_field("numeric")

    def test_field_equality_by_key(self):
        assert SpecializedField(Fraction(7, 5)) == SpecializedField(Fraction(14, 10))
        assert SpecializedField(2) != SpecializedField(3)

    def test_parse_rational(self):
        assert parse_rational(" 7/5 ") == Fraction(7, 5)
        assert parse_rational("-3") == -3
        for bad in ("x", "1/0", ""):
            with pytest.raises(ValueError):
                parse_rational(bad)
