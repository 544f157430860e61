#!/usr/bin/env python3
"""Unit tests for src/linalg/exact.py exact linear algebra.

Both elimination back ends are covered: int64 numpy arithmetic for primes
below 2^31 and sympy's DomainMatrix for the rationals and larger primes.
"""

from fractions import Fraction

import pytest

from src.kernel.fields import FieldSpec
from src.linalg.exact import (
    ExactMatrix,
    complement_rows,
    kernel_basis,
    left_kernel_basis,
    matmul,
    pivot_columns,
    rank,
    rank_and_kernel,
    rows_from_sparse,
    rref,
    transpose,
)

# Mersenne prime beyond the int64 elimination limit.
LARGE_PRIME = 2**61 - 1

FIELDS = [
    FieldSpec.rationals(),
    FieldSpec.prime_field(101),
    FieldSpec.prime_field(2**31 - 1),
    FieldSpec.prime_field(LARGE_PRIME),
]


def _annihilates(rows: list[list[int]], vector: list, field: FieldSpec) -> bool:
    """Check M * v = 0 in the field."""
    K = field.domain
    for row in rows:
        total = K.zero
        for a, b in zip(row, vector, strict=True):
            total += field.element(a) * field.element(b)
        if total:
            return False
    return True


class TestExactMatrix:
    """Test cases for the ExactMatrix model."""

    def test_from_rows_reduces_entries(self) -> None:
        """Test that entries are reduced into the field."""
        m = ExactMatrix.from_rows([[-1, 7]], FieldSpec.prime_field(7), 2)
        assert m.to_rows() == [[6, 0]]

    def test_shape_is_validated(self, qq: FieldSpec) -> None:
        """Test that the entry count must match the shape."""
        with pytest.raises(ValueError):
            ExactMatrix(field=qq, rows=2, cols=2, entries=[Fraction(1)])

    def test_ragged_rows(self, qq: FieldSpec) -> None:
        """Test that ragged input is refused."""
        with pytest.raises(ValueError):
            ExactMatrix.from_rows([[1, 2], [3]], qq)

    def test_identity_and_zeros(self, qq: FieldSpec) -> None:
        """Test the identity and zero constructors."""
        assert ExactMatrix.identity(2, qq).to_rows() == [[1, 0], [0, 1]]
        assert ExactMatrix.zeros(1, 3, qq).to_rows() == [[0, 0, 0]]

    def test_transpose_and_matmul(self, qq: FieldSpec) -> None:
        """Test transpose and product against hand values."""
        a = ExactMatrix.from_rows([[1, 2], [3, 4]], qq)
        assert transpose(a).to_rows() == [[1, 3], [2, 4]]
        assert matmul(a, ExactMatrix.identity(2, qq)) == a
        assert matmul(a, a).to_rows() == [[7, 10], [15, 22]]

    def test_matmul_shape_mismatch(self, qq: FieldSpec) -> None:
        """Test that incompatible shapes are refused."""
        with pytest.raises(ValueError):
            matmul(ExactMatrix.identity(2, qq), ExactMatrix.identity(3, qq))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.label)
class TestElimination:
    """Test cases shared by both elimination back ends."""

    def test_rank_and_kernel(self, field: FieldSpec) -> None:
        """Test rank + nullity = columns and that kernel vectors annihilate."""
        rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        r, kernel = rank_and_kernel(ExactMatrix.from_rows(rows, field))
        assert r == 2
        assert len(kernel) == 1
        assert _annihilates(rows, kernel[0], field)

    def test_kernel_is_echelon_normal(self, field: FieldSpec) -> None:
        """Test that each kernel vector has a 1 in its free column."""
        kernel = kernel_basis([[1, 2, 3]], 3, field)
        assert [v[1] for v in kernel] == [1, 0]
        assert [v[2] for v in kernel] == [0, 1]
        assert kernel[0][0] == field.to_python(field.element(-2))

    def test_pivot_columns(self, field: FieldSpec) -> None:
        """Test greedy pivot columns."""
        assert pivot_columns([[0, 1, 1], [0, 2, 3]], 3, field) == [1, 2]
        assert pivot_columns([], 3, field) == []

    def test_rref(self, field: FieldSpec) -> None:
        """Test the reduced rows of a small matrix."""
        reduced, pivots = rref([[2, 4], [1, 3]], 2, field)
        assert pivots == [0, 1]
        assert reduced == [[1, 0], [0, 1]]

    def test_left_kernel(self, field: FieldSpec) -> None:
        """Test vectors v with v * M = 0."""
        basis = left_kernel_basis([[1, 2], [2, 4]], 2, field)
        assert len(basis) == 1
        v = basis[0]
        assert v[1] == 1
        assert v[0] == field.to_python(field.element(-2))

    def test_complement_rows(self, field: FieldSpec) -> None:
        """Test that only candidates extending the span are kept."""
        base = [[1, 0, 0]]
        candidates = [[2, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 5]]
        assert complement_rows(base, candidates, 3, field) == [1, 3]

    def test_rows_from_sparse(self, field: FieldSpec) -> None:
        """Test dense rows from sparse vectors, including domain elements."""
        vectors = [{0: 1, 2: field.element(3)}, {1: 1}]
        rows = rows_from_sparse(vectors, 3, field)
        r, _ = rank_and_kernel(ExactMatrix.from_rows([[1, 0, 3], [0, 1, 0]], field))
        assert len(pivot_columns(rows, 3, field)) == r == 2

    def test_rank_of_singular_square(self, field: FieldSpec) -> None:
        """Test rank of a matrix whose determinant vanishes."""
        m = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]], field)
        assert rank(m) == 2


def test_characteristic_changes_rank() -> None:
    """Test that a matrix singular mod p has full rank over the rationals."""
    rows = [[1, 1], [1, 8]]
    assert rank(ExactMatrix.from_rows(rows, FieldSpec.rationals())) == 2
    assert rank(ExactMatrix.from_rows(rows, FieldSpec.prime_field(7))) == 1


def test_rational_kernel_entries_are_fractions(qq: FieldSpec) -> None:
    """Test that rational kernels come back as exact fractions."""
    _, kernel = rank_and_kernel(ExactMatrix.from_rows([[2, 1]], qq))
    assert kernel == [[Fraction(-1, 2), Fraction(1)]]
