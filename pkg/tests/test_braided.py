"""
辮化對稱/外冪測試
"""

import pytest

from src.algebra.braided import (
    EXT,
    SYM,
    BraidedQuadraticAlgebra,
    backend_agreement,
    braided_hilbert,
    braided_power,
    build_sigma,
    complement_check,
    expected_exterior_power,
    expected_power,
    expected_symmetric_power,
    formula_source,
    graded_algebra_report,
    hw_embedding_check,
    random_q0s,
    uses_floor_reading,
    verify_main_theorem,
)
from src.algebra.errors import InconsistentModule, ResourceLimit
from src.algebra.qscalar import CLASSICAL_FIELD, EXACT_FIELD
from src.algebra.uqsl2 import decompose


class TestSigma:
    @pytest.mark.parametrize("ell,plus,minus", [(1, 3, 1), (2, 6, 3), (3, 10, 6)])
    def test_eigenspace_dims(self, fast_field, ell, plus, minus):
        sigma = build_sigma(ell, fast_field)
        assert sigma.plus_subspace.dim == plus
        assert sigma.minus_subspace.dim == minus

    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_involution_and_equivariance(self, fast_field, ell):
        sigma = build_sigma(ell, fast_field)
        assert sigma.is_involution()
        assert sigma.is_equivariant()

    def test_exact_sigma(self):
        sigma = build_sigma(1, EXACT_FIELD)
        assert sigma.is_involution()
        assert sigma.is_equivariant()

    def test_classical_sigma_is_flip_on_v1(self):
        sigma = build_sigma(1, CLASSICAL_FIELD)
        assert sigma.apply_pair(0, 1) == (((1, 0), 1),)


class TestBraidedPower:
    @pytest.mark.parametrize(
        "ell,n,kind,expected",
        [
            (3, 4, SYM, "V12 ⊕ V8"),
            (3, 3, SYM, "V9 ⊕ V5"),
            (1, 4, SYM, "V4"),
            (2, 3, SYM, "V6 ⊕ V2"),
            (2, 2, EXT, "V2"),
            (2, 3, EXT, "V0"),
            (2, 4, EXT, "0"),
            (3, 3, EXT, "0"),
            (4, 3, EXT, "V2"),
            (0, 3, SYM, "V0"),
        ],
    )
    def test_decomposition(self, fast_field, ell, n, kind, expected):
        power = braided_power(ell, n, kind, fast_field)
        assert str(power.decomposition) == expected
        assert power.decomposition == expected_power(ell, n, kind)

    def test_methods_agree(self, fast_field):
        a = braided_power(2, 3, SYM, fast_field, method="intersection")
        b = braided_power(2, 3, SYM, fast_field, method="incremental")
        assert a.weight_dims() == b.weight_dims()

    def test_unknown_method(self, fast_field):
        with pytest.raises(ValueError):
            braided_power(1, 2, SYM, fast_field, method="guess")

    def test_unknown_kind(self, fast_field):
        with pytest.raises(ValueError):
            braided_power(1, 2, "alt", fast_field)

    def test_resource_limit(self, fast_field):
        with pytest.raises(ResourceLimit) as info:
            braided_power(3, 2, SYM, fast_field, max_block=3)
        assert info.value.block_dim == 4
        assert info.value.limit == 3

    def test_exact_backend(self):
        assert braided_power(2, 3, SYM, EXACT_FIELD).dim == 10


class TestHilbert:
    def test_even_l(self, fast_field):
        rows = braided_hilbert(2, 4, SYM, fast_field)
        assert [r.dim for r in rows] == [1, 3, 6, 10, 15]
        assert [r.n for r in rows] == [0, 1, 2, 3, 4]

    def test_odd_l_grows_linearly(self, fast_field):
        rows = braided_hilbert(3, 4, SYM, fast_field)
        assert [r.dim for r in rows] == [1, 4, 10, 16, 22]

    def test_exterior(self, fast_field):
        rows = braided_hilbert(2, 4, EXT, fast_field)
        assert [r.dim for r in rows] == [1, 3, 3, 1, 0]


class TestClosedForms:
    def test_symmetric(self):
        assert expected_symmetric_power(2, 6).dim == 28
        assert expected_symmetric_power(3, 3).dim == 16
        assert str(expected_symmetric_power(5, 2)) == "V10 ⊕ V6 ⊕ V2"

    def test_exterior(self):
        assert str(expected_exterior_power(3, 2)) == "V4 ⊕ V0"
        assert expected_exterior_power(5, 3).is_zero()
        assert str(expected_exterior_power(6, 3)) == "V4 ⊕ V0"
        assert expected_exterior_power(0, 2).is_zero()

    def test_floor_reading(self):
        assert uses_floor_reading(2, 3)
        assert not uses_floor_reading(2, 2)
        assert not uses_floor_reading(3, 3)
        assert not uses_floor_reading(2, 1)

    def test_formula_source(self):
        assert formula_source(3, 1, SYM) == "degree one: V_l itself"
        assert formula_source(2, 4, EXT) == "closed form: exterior power vanishes"


class TestReports:
    def test_graded_report_agrees(self, fast_field):
        report = graded_algebra_report(2, SYM, 3, fast_field)
        assert report.all_agree
        assert [row.dim for row in report.rows] == [3, 6, 10]

    def test_graded_report_needs_degree_two(self, fast_field):
        with pytest.raises(ValueError):
            graded_algebra_report(2, SYM, 1, fast_field)

    def test_complement(self, fast_field):
        record = complement_check(2, 3, SYM, fast_field)
        assert record.passed
        assert record.expected == 27

    def test_verify_main_theorem(self, fast_field):
        records = verify_main_theorem(2, 3, fast_field)
        assert len(records) == 5
        assert all(r.passed for r in records)
        floor_notes = [r for r in records if r.note]
        assert [r.params for r in floor_notes] == [{"l": 2, "n": 3}]

    def test_hw_embedding(self, fast_field):
        records = hw_embedding_check(3, 3, fast_field)
        assert len(records) == 2
        assert all(r.passed for r in records)
        with pytest.raises(ValueError):
            hw_embedding_check(2, 3, fast_field)


class TestBackendAgreement:
    def test_random_points_are_reproducible(self):
        points = random_q0s(11, 4)
        assert points == random_q0s(11, 4)
        assert all(abs(p) != 1 for p in points)
        assert len(set(points)) == 4

    def test_agreement(self):
        record = backend_agreement(1, 3, SYM, seed=0, trials=2)
        assert record.passed
        assert record.backend == "exact+specialize"


class TestQuadraticAlgebra:
    def test_flat_l1(self, fast_field):
        alg = BraidedQuadraticAlgebra(1, fast_field)
        assert alg.component_dim(3) == 4
        assert alg.relation_check()

    def test_flat_l2(self, fast_field):
        alg = BraidedQuadraticAlgebra(2, fast_field)
        assert alg.component_dim(3) == 10
        assert str(decompose(alg.component_module(2))) == "V4 ⊕ V0"

    def test_l3_not_flat(self, fast_field):
        with pytest.raises(InconsistentModule):
            BraidedQuadraticAlgebra(3, fast_field)
