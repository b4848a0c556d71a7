"""
古典 Poisson 閉包測試
"""

from math import comb

import pytest

from src.algebra.errors import IndexOrder, IndexRange, MixedModule
from src.algebra.poisson import (
    ClassicalPoly,
    bracket,
    degree_three_spans_agree,
    generator_jacobiators,
    jacobian_ideal_dim,
    jacobian_map,
    jacobiator,
    monomials,
    poisson_closure_hilbert,
    symmetric_dim,
    symmetric_power_module,
    t_count,
    t_count_formula,
    t_members,
    terminal_monomial_check,
)
from src.algebra.uqsl2 import decompose


def v(ell, a):
    return ClassicalPoly.generator(ell, a)


class TestBracket:
    def test_example(self):
        result = bracket(v(2, 0), v(2, 2))
        assert result == ClassicalPoly.monomial(2, (0, 2, 0), -4)
        assert str(result) == "-4*v1^2"

    def test_antisymmetric(self):
        u = v(3, 0) * v(3, 2) + v(3, 1)
        w = v(3, 3) * v(3, 1)
        assert bracket(u, w) == -bracket(w, u)

    def test_leibniz(self):
        u, a, b = v(3, 1), v(3, 0) + v(3, 2), v(3, 3)
        assert bracket(u, a * b) == bracket(u, a) * b + a * bracket(u, b)

    def test_mixed_modules(self):
        with pytest.raises(MixedModule):
            bracket(v(1, 0), v(2, 0))

    def test_generator_range(self):
        with pytest.raises(IndexRange):
            v(2, 3)


class TestJacobian:
    def test_jacobian_map_value(self):
        expected = ClassicalPoly(
            3,
            {
                (1, 1, 1, 0): -9,
                (0, 3, 0, 0): 6,
                (2, 0, 0, 1): 3,
            },
        )
        assert jacobian_map(3, 0, 1, 2) == expected

    def test_jacobian_map_arguments(self):
        with pytest.raises(IndexOrder):
            jacobian_map(3, 1, 0, 2)
        with pytest.raises(IndexRange):
            jacobian_map(3, 0, 1, 4)

    def test_terminal_monomial(self):
        result = terminal_monomial_check(3, 0, 1, 2)
        assert result["monomial"] == [0, 3, 0, 0]
        assert result["coefficient"] == "6"
        assert result["match"]

    @pytest.mark.parametrize("ell", [1, 2])
    def test_jacobiators_vanish_for_small_l(self, ell):
        assert all(j.is_zero() for j in generator_jacobiators(ell))

    def test_jacobiator_nonzero_for_l3(self):
        u, w, x = v(3, 0), v(3, 1), v(3, 2)
        assert not jacobiator(u, w, x).is_zero()
        assert jacobiator(u, w, x).is_homogeneous()

    @pytest.mark.parametrize("ell", [3, 5])
    def test_degree_three_spans(self, ell):
        assert degree_three_spans_agree(ell)

    def test_ideal_dim(self):
        assert jacobian_ideal_dim(3, 3) == 4
        with pytest.raises(ValueError):
            jacobian_ideal_dim(3, 2)


class TestClosure:
    def test_l3_matches_braided_dims(self):
        rows = poisson_closure_hilbert(3, 4)
        assert [r.dim for r in rows] == [1, 4, 10, 16, 22]
        assert str(rows[4].components) == "V12 ⊕ V8"

    def test_l2_is_polynomial_ring(self):
        rows = poisson_closure_hilbert(2, 5)
        assert [r.dim for r in rows] == [comb(n + 2, 2) for n in range(6)]

    def test_needs_degree_two(self):
        with pytest.raises(ValueError):
            poisson_closure_hilbert(3, 1)


class TestTCount:
    @pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_count_matches_formula(self, ell, n):
        assert t_count(ell, n) == t_count_formula(ell, n)

    def test_value(self):
        assert t_count(3, 4) == 22
        assert (0, 0, 0, 4) in t_members(3, 4)
        assert (0, 2, 2, 0) not in t_members(3, 4)

    def test_invalid(self):
        with pytest.raises(ValueError):
            t_members(0, 3)
        with pytest.raises(ValueError):
            t_members(3, 1)


class TestSymmetricPower:
    def test_dims(self):
        assert symmetric_dim(3, 2) == 10
        assert len(monomials(2, 3)) == 10

    def test_module(self):
        assert str(decompose(symmetric_power_module(2, 2))) == "V4 ⊕ V0"
        assert str(decompose(symmetric_power_module(3, 2))) == "V6 ⊕ V2"
