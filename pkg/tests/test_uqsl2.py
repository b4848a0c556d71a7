"""
U_q(sl2) 權重模測試
"""

import pytest

from src.algebra.errors import FlavorMismatch, InconsistentModule
from src.algebra.qscalar import CLASSICAL_FIELD, EXACT_FIELD, LaurentPoly
from src.algebra.uqsl2 import (
    CLASSICAL,
    QUANTUM,
    ModuleRep,
    apply_tensor_generator,
    decompose,
    highest_weight_vectors,
    simple_module,
    specialize_module,
    submodule_generated,
    tensor,
    tensor_power,
)
from src.models.algebra import Decomposition

q = LaurentPoly.q()


class TestSimpleModule:
    def test_action(self):
        m = simple_module(2)
        assert m.apply("E", {2: 1}) == {1: q + q**-1}
        assert m.apply("F", {0: 1}) == {1: q + q**-1}
        assert m.apply("E", {0: 1}) == {}
        assert m.weights == (2, 0, -2)

    def test_classical_labels(self):
        m = simple_module(3, CLASSICAL)
        assert m.field == CLASSICAL_FIELD
        assert m.labels[0] == "vbar0"
        assert m.apply("F", {0: 1}) == {1: 3}

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            simple_module(-1)

    def test_inconsistent_relations(self, fast_field):
        with pytest.raises(InconsistentModule):
            ModuleRep(QUANTUM, fast_field, [1, -1], [{}, {0: 1}], [{1: 2}, {}])

    def test_wrong_weight_shift(self, fast_field):
        with pytest.raises(InconsistentModule):
            ModuleRep(QUANTUM, fast_field, [1, -1], [{1: 1}, {}], [{}, {}])

    def test_classical_requires_q_one(self, fast_field):
        with pytest.raises(FlavorMismatch):
            simple_module(1, CLASSICAL, fast_field)


class TestTensor:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            (1, 1, "V2 ⊕ V0"),
            (2, 1, "V3 ⊕ V1"),
            (2, 2, "V4 ⊕ V2 ⊕ V0"),
            (3, 2, "V5 ⊕ V3 ⊕ V1"),
        ],
    )
    def test_clebsch_gordan(self, fast_field, a, b, expected):
        m = tensor(simple_module(a, field=fast_field), simple_module(b, field=fast_field))
        assert str(decompose(m)) == expected

    def test_classical_clebsch_gordan(self):
        m = tensor(simple_module(2, CLASSICAL), simple_module(2, CLASSICAL))
        assert decompose(m) == Decomposition.from_highest_weights([4, 2, 0])

    def test_exact_tensor_cube(self):
        m = tensor_power(simple_module(1), 3)
        assert str(decompose(m)) == "V3 ⊕ 2V1"

    def test_flavor_mismatch(self):
        with pytest.raises(FlavorMismatch):
            tensor(simple_module(1), simple_module(1, CLASSICAL))

    def test_highest_weight_vectors(self, fast_field):
        v = simple_module(1, field=fast_field)
        vv = tensor(v, v)
        assert highest_weight_vectors(vv, 0).dim == 1
        assert highest_weight_vectors(vv, 2).dim == 1
        assert highest_weight_vectors(vv, -2).dim == 0

    def test_submodule_generated(self, fast_field):
        v = simple_module(2, field=fast_field)
        vv = tensor(v, v)
        assert submodule_generated(vv, [{0: 1}]).dim == 5


class TestSpecialize:
    def test_q_one_is_classical(self):
        classical = specialize_module(simple_module(2), 1)
        assert classical.flavor == CLASSICAL
        assert classical.E_mat == simple_module(2, CLASSICAL).E_mat


class TestTensorGenerator:
    def test_coproduct_of_f(self):
        out = apply_tensor_generator(1, EXACT_FIELD, "F", {(0, 0): 1})
        assert out == {(1, 0): q**-1, (0, 1): 1}

    def test_coproduct_of_e(self):
        out = apply_tensor_generator(1, EXACT_FIELD, "E", {(1, 1): 1})
        assert out == {(0, 1): 1, (1, 0): q**-1}

    def test_unknown_generator(self):
        with pytest.raises(ValueError):
            apply_tensor_generator(1, EXACT_FIELD, "K", {(0, 0): 1})


class TestDecomposition:
    def test_from_weight_dims(self):
        dec = Decomposition.from_weight_dims({3: 1, 1: 2, -1: 2, -3: 1})
        assert str(dec) == "V3 ⊕ V1"
        assert dec.dim == 6

    def test_negative_difference(self):
        with pytest.raises(ValueError):
            Decomposition.from_weight_dims({2: 2, 0: 1})

    def test_subtract(self):
        whole = Decomposition.from_highest_weights([4, 2, 0])
        assert str(whole.subtract(Decomposition.from_highest_weights([2]))) == "V4 ⊕ V0"
        with pytest.raises(ValueError):
            whole.subtract(Decomposition.from_highest_weights([6]))

    def test_zero(self):
        assert str(Decomposition()) == "0"
        assert Decomposition().is_zero()
