"""
Tests for exact matrices, Smith normal form and determinantal data.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from admissible_cubes.exceptions import RingMismatchError, ShapeError, ValidationError
from admissible_cubes.linalg import (
    Matrix,
    adjugate,
    column_span_form,
    determinant,
    determinantal_divisor,
    in_column_span,
    kernel,
    kernel_and_solve,
    minors,
    smith_normal_form,
    solve,
)
from admissible_cubes.rings import RingDescriptor

Z = RingDescriptor.integers()


@st.composite
def matrices(draw, ring=Z, max_rows=4, max_cols=4, bound=9):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    values = draw(st.lists(st.integers(-bound, bound), min_size=rows * cols,
                           max_size=rows * cols))
    return Matrix(ring, rows, cols, tuple(ring.element(v) for v in values))


@st.composite
def square_matrices(draw, max_size=4, bound=9):
    n = draw(st.integers(1, max_size))
    values = draw(st.lists(st.integers(-bound, bound), min_size=n * n, max_size=n * n))
    return Matrix(Z, n, n, tuple(values))


class TestMatrix:
    """Construction and arithmetic."""

    def test_from_rows_and_access(self):
        a = Matrix.from_rows(Z, [[1, 2], [3, 4]])
        assert a.shape == (2, 2)
        assert a[1, 0] == 3
        assert a.column(1) == (2, 4)
        assert a.transpose() == Matrix.from_rows(Z, [[1, 3], [2, 4]])

    def test_ragged_rows_rejected(self):
        with pytest.raises(ShapeError):
            Matrix.from_rows(Z, [[1, 2], [3]])

    def test_zero_dimensions(self):
        """``0 x n`` and ``n x 0`` matrices compose to zero matrices."""
        a = Matrix.zeros(Z, 2, 0)
        b = Matrix.zeros(Z, 0, 3)
        assert (a @ b) == Matrix.zeros(Z, 2, 3)

    def test_mixed_rings_rejected(self):
        q = RingDescriptor.rationals()
        with pytest.raises(RingMismatchError):
            Matrix.identity(Z, 2) @ Matrix.identity(q, 2)

    def test_residue_arithmetic_reduces(self):
        ring = RingDescriptor.integers_mod(6)
        a = Matrix.from_rows(ring, [[2, 3]])
        b = Matrix.from_rows(ring, [[3], [2]])
        assert (a @ b)[0, 0] == 0


class TestSmithNormalForm:
    """The transform contract and invariant factors."""

    def test_diagonal_example(self):
        a = Matrix.from_rows(Z, [[2, 0], [0, 3]])
        assert smith_normal_form(a).diagonal == (1, 6)

    def test_rational_invariants_are_zero_or_one(self):
        q = RingDescriptor.rationals()
        a = Matrix.from_rows(q, [["1/2", 1], [1, 2]])
        assert smith_normal_form(a).diagonal == (Fraction(1), Fraction(0))

    def test_residue_invariants_divide_modulus(self):
        ring = RingDescriptor.integers_mod(12)
        a = Matrix.from_rows(ring, [[8]])
        assert smith_normal_form(a).diagonal == (4,)

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_integer_contract(self, a):
        """``U A V = D``, ``U U^-1 = I`` and ``d_1 | d_2 | ...``."""
        snf = smith_normal_form(a)
        assert snf.u @ a @ snf.v == snf.d
        assert snf.u @ snf.u_inv == Matrix.identity(Z, a.rows)
        diagonal = snf.diagonal
        for k in range(len(diagonal) - 1):
            assert Z.divides(diagonal[k], diagonal[k + 1])
        assert all(v >= 0 for v in diagonal)

    @settings(max_examples=40, deadline=None)
    @given(matrices(ring=RingDescriptor.prime_field(5)))
    def test_prime_field_contract(self, a):
        snf = smith_normal_form(a)
        assert snf.u @ a @ snf.v == snf.d
        assert all(v in (0, 1) for v in snf.diagonal)


class TestKernelsAndSolving:
    """Kernels, particular solutions and column spans."""

    def test_kernel_of_row(self):
        a = Matrix.from_rows(Z, [[2, 3]])
        k = kernel(a)
        assert k.cols == 1
        assert (a @ k).is_zero
        assert set(map(abs, k.column(0))) == {3, 2}

    def test_solve_and_unsolvable(self):
        a = Matrix.from_rows(Z, [[4, 6]])
        x = solve(a, Matrix.from_rows(Z, [[2]]))
        assert x is not None and a @ x == Matrix.from_rows(Z, [[2]])
        assert solve(a, Matrix.from_rows(Z, [[1]])) is None

    def test_residue_kernel_includes_torsion(self):
        """Over Z/4, ``2 x = 0`` has the nonzero solution ``x = 2``."""
        ring = RingDescriptor.integers_mod(4)
        a = Matrix.from_rows(ring, [[2]])
        k = kernel(a)
        assert (a @ k).is_zero
        assert any(v != 0 for v in k.entries)

    def test_column_span(self):
        a = Matrix.from_rows(Z, [[4, 6]])
        assert in_column_span(a, Matrix.from_rows(Z, [[2]]))
        assert not in_column_span(a, Matrix.from_rows(Z, [[3]]))
        assert column_span_form(a) == Matrix.from_rows(Z, [[2]])

    def test_right_hand_side_shape_checked(self):
        with pytest.raises(ShapeError):
            kernel_and_solve(Matrix.identity(Z, 2), Matrix.identity(Z, 3))

    @settings(max_examples=40, deadline=None)
    @given(matrices())
    def test_kernel_is_annihilated(self, a):
        assert (a @ kernel(a)).is_zero


class TestDeterminants:
    """Determinants, adjugates and minors."""

    def test_empty_determinant_is_one(self):
        assert determinant(Matrix.zeros(Z, 0, 0)) == 1

    def test_minors_order(self):
        a = Matrix.from_rows(Z, [[1, 2], [3, 4]])
        assert minors(a, 1) == (1, 2, 3, 4)
        assert minors(a, 2) == (-2,)
        with pytest.raises(ValidationError):
            minors(a, 3)

    def test_determinantal_divisor(self):
        a = Matrix.diagonal(Z, [2, 3, 0])
        assert determinantal_divisor(a, 1) == 1
        assert determinantal_divisor(a, 2) == 6
        assert determinantal_divisor(a, 3) == 0
        assert determinantal_divisor(a, 0) == 1

    @settings(max_examples=40, deadline=None)
    @given(square_matrices())
    def test_adjugate_identity(self, a):
        """``adj(X) X = det(X) I``."""
        assert adjugate(a) @ a == Matrix.scalar(Z, a.rows, determinant(a))

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            determinant(Matrix.zeros(Z, 1, 2))


if __name__ == "__main__":
    pytest.main([__file__])
