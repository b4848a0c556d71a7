"""
量子 Veronese 測試
"""

import pytest

from src.algebra.errors import IndexRange, UnsupportedRank
from src.algebra.qscalar import EXACT_FIELD
from src.algebra.veronese import (
    SkewPoly,
    expected_nilradical,
    expected_veronese,
    hwv_classical,
    hwv_formula_check,
    lambda_count,
    nilradical_check,
    normal_order,
    relations_check,
    subalgebra_A,
    veronese_component_dim,
    veronese_hilbert,
    veronese_hilbert_check,
    veronese_relations,
    zero_divisor_check,
)


class TestNormalOrder:
    def test_inversion(self):
        assert normal_order((1, 0), 1) == (-1, (1, 1))
        assert normal_order((0, 1), 1) == (0, (1, 1))
        assert normal_order((2, 1, 0), 2) == (-3, (1, 1, 1))

    def test_range(self):
        with pytest.raises(IndexRange):
            normal_order((2,), 1)

    def test_lambda_count(self):
        assert lambda_count((0, 1), (0, 1)) == 1
        assert lambda_count((0, 0), (1, 1)) == 4


class TestSkewPoly:
    def test_q_commutation(self):
        x0 = SkewPoly.generator(2, 0)
        x1 = SkewPoly.generator(2, 1)
        assert x1 * x0 == (x0 * x1).scale(EXACT_FIELD.q_power(-1))

    def test_from_word(self):
        assert SkewPoly.from_word(2, (1, 0)) == SkewPoly.generator(2, 1) * SkewPoly.generator(2, 0)

    def test_mismatched_variables(self):
        with pytest.raises(IndexRange):
            SkewPoly.generator(2, 0) * SkewPoly.generator(3, 0)


class TestRelations:
    @pytest.mark.parametrize("n,d,count", [(1, 1, 1), (1, 2, 5)])
    def test_counts(self, n, d, count):
        assert len(veronese_relations(n, d).relations) == count

    def test_relations_hold(self):
        record = relations_check(2, 2)
        assert record.passed
        assert record.computed["hold"]

    def test_csv_rows(self):
        rows = veronese_relations(1, 1).csv_rows()
        assert rows == [["1", "0", "0", "1", "-1", "-1", "true"]]

    def test_invalid(self):
        with pytest.raises(ValueError):
            veronese_relations(0, 2)


class TestHilbert:
    def test_component_dims(self):
        assert veronese_component_dim(2, 2, 3) == 28
        assert veronese_component_dim(1, 3, 2) == 7
        assert veronese_component_dim(2, 2, 0) == 1

    def test_quantum_plane(self, fast_field):
        dim, dec = veronese_hilbert(1, 2, 2, fast_field)
        assert dim == 5
        assert str(dec) == "V4"

    def test_plane_of_rank_two(self, fast_field):
        record = veronese_hilbert_check(2, 2, 2, fast_field)
        assert record.passed
        assert record.computed["dim"] == 15
        assert record.computed["monomial_count"] == 15

    def test_monomial_count_mismatch_fails(self, fast_field, monkeypatch):
        from src.algebra import veronese as veronese_module

        monkeypatch.setattr(veronese_module, "veronese_component_dim", lambda n, d, k: 14)
        record = veronese_hilbert_check(2, 2, 2, fast_field)
        assert record.computed["dim"] == 15
        assert record.computed["monomial_count"] == 14
        assert not record.passed

    def test_unsupported_rank(self):
        with pytest.raises(UnsupportedRank):
            veronese_hilbert(3, 1, 1)
        with pytest.raises(UnsupportedRank):
            expected_veronese(3, 1, 1)

    def test_expected(self):
        assert str(expected_veronese(2, 1, 2)) == "V4 ⊕ V0"


class TestSubalgebra:
    def test_fills_component(self, fast_field):
        assert subalgebra_A(2, 3, fast_field) == {1: 5, 2: 15, 3: 28}

    def test_hwv_formula(self):
        record = hwv_formula_check(2, 1)
        assert record.passed
        assert record.computed["hw_space_dim"] == 1

    def test_hwv_classical_is_killed(self):
        assert hwv_classical(4, 2).apply("E").is_zero()

    def test_hwv_range(self):
        with pytest.raises(ValueError):
            hwv_formula_check(2, 2)


class TestNilradical:
    def test_expected(self):
        assert str(expected_nilradical(5, 2)) == "V6 ⊕ V2"
        assert expected_nilradical(1, 4).is_zero()

    def test_check(self, fast_field):
        records = nilradical_check(3, 3, fast_field)
        assert [r.params["n"] for r in records] == [2, 3]
        assert all(r.passed for r in records)

    def test_even_l(self, fast_field):
        with pytest.raises(ValueError):
            nilradical_check(2, 3, fast_field)


class TestZeroDivisors:
    def test_no_zero_products(self, fast_field):
        record = zero_divisor_check(2, 2, samples=5, seed=1, field=fast_field)
        assert record.passed
        assert record.params == {"n": 2, "degree": 2, "samples": 5, "seed": 1}
