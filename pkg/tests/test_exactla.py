"""
精確線性代數測試
"""

import pytest

from src.algebra.errors import AmbientMismatch
from src.algebra.exactla import (
    EchelonBuilder,
    Matrix,
    Subspace,
    kernel,
    left_kernel,
    rank,
    rref,
    span,
    subspace_intersection,
    subspace_sum,
)
from src.algebra.qscalar import CLASSICAL_FIELD, EXACT_FIELD, LaurentPoly

F = CLASSICAL_FIELD
q = LaurentPoly.q()


def _vec(*xs):
    return [F.coerce(x) for x in xs]


class TestMatrix:
    def test_rank(self):
        assert rank(Matrix([[1, 2], [2, 4]], F)) == 1
        assert rank(Matrix.identity(4, F)) == 4
        assert rank(Matrix.zeros(2, 3, F)) == 0

    def test_rref_pivots_leftmost(self):
        reduced, r = rref(Matrix([[0, 2, 4], [1, 1, 1]], F))
        assert r == 2
        assert reduced.to_rows() == [[1, 0, -1], [0, 1, 2]]

    def test_inverse(self):
        m = Matrix([[2, 1], [1, 1]], F)
        assert m @ m.inverse() == Matrix.identity(2, F)
        with pytest.raises(ValueError):
            Matrix([[1, 2], [2, 4]], F).inverse()

    def test_ragged_rows(self):
        with pytest.raises(ValueError):
            Matrix([[1, 2], [3]], F)

    def test_exact_rank_over_rational_functions(self):
        m = Matrix([[q, 1], [1, q**-1]], EXACT_FIELD)
        assert rank(m) == 1
        m2 = Matrix([[q, 1], [1, q]], EXACT_FIELD)
        assert rank(m2) == 2


class TestKernels:
    def test_kernel(self):
        m = Matrix([[1, 1, 0], [0, 1, 1]], F)
        null = kernel(m)
        assert null.dim == 1
        for v in null.vectors():
            assert not any(m.apply(v))

    def test_left_kernel(self):
        m = Matrix([[1, 2], [2, 4], [0, 1]], F)
        null = left_kernel(m)
        assert null.ambient_dim == 3
        assert null.dim == 1


class TestSubspace:
    def test_sum_and_intersection(self):
        a = span([[1, 0, 0], [0, 1, 0]], 3, F)
        b = span([[0, 1, 0], [0, 0, 1]], 3, F)
        assert subspace_sum(a, b).dim == 3
        meet = subspace_intersection(a, b)
        assert meet.dim == 1
        assert meet.contains([0, 5, 0])

    def test_reduce_and_contains(self):
        s = span([[1, 1, 0]], 3, F)
        assert s.contains([2, 2, 0])
        assert not s.contains([1, 0, 0])
        assert s.reduce([1, 1, 0]) == [0, 0, 0]

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            subspace_sum(Subspace.full(2, F), Subspace.full(3, F))
        with pytest.raises(AmbientMismatch):
            span([[1, 2]], 3, F)

    def test_is_subspace_of(self):
        small = span([[1, 2, 3]], 3, F)
        assert small.is_subspace_of(Subspace.full(3, F))
        assert Subspace.zero(3, F).is_subspace_of(small)

    def test_canonical_basis(self):
        a = span([[1, 2], [3, 4]], 2, F)
        assert a == Subspace.full(2, F)


class TestEchelonBuilder:
    def test_incremental(self):
        builder = EchelonBuilder(3, F)
        assert builder.add(_vec(1, 0, 0))
        assert not builder.add(_vec(2, 0, 0))
        assert builder.add(_vec(1, 1, 0))
        assert builder.dim == 2
        assert builder.to_subspace() == span([[1, 0, 0], [0, 1, 0]], 3, F)

    def test_length_check(self):
        with pytest.raises(AmbientMismatch):
            EchelonBuilder(2, F).add(_vec(1, 2, 3))
