"""Exact dense linear algebra over the coefficient fields.

Prime fields with p < 2^31 are eliminated with vectorised int64 numpy
arithmetic (every product of two residues fits in 62 bits). The rationals,
and primes too large for int64 products, go through sympy's
``DomainMatrix``; over the rationals that is fraction-free Gauss-Jordan
after clearing denominators (``rref(method="CD")``).

Every routine is pure and deterministic: pivots are chosen as the first
nonzero entry of each column, and kernel bases come out in reduced
echelon-normal form.
"""

import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from sympy.polys.matrices import DomainMatrix

from src.kernel.fields import FieldSpec, FieldValue

logger = logging.getLogger(__name__)

# Largest characteristic handled by int64 elimination.
NUMPY_PRIME_LIMIT = 2**31

Rows = Sequence[Sequence[Any]] | np.ndarray


class ExactMatrix(BaseModel):
    """Dense row-major matrix over a ``FieldSpec``.

    Attributes:
        field: Coefficient field.
        rows: Number of rows.
        cols: Number of columns.
        entries: ``rows * cols`` field values (``int`` or ``Fraction``).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    field: FieldSpec
    rows: int
    cols: int
    entries: list[int | Fraction]

    @model_validator(mode="after")
    def _check_shape(self) -> "ExactMatrix":
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        return self

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[FieldValue]], field: FieldSpec, cols: int | None = None
    ) -> "ExactMatrix":
        """Build from a list of rows, reducing entries into the field."""
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries: list[int | Fraction] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            entries.extend(field.to_python(field.element(v)) for v in row)
        return cls(field=field, rows=len(rows), cols=ncols, entries=entries)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> "ExactMatrix":
        """The zero matrix."""
        zero = Fraction(0) if not field.is_prime else 0
        return cls(field=field, rows=rows, cols=cols, entries=[zero] * (rows * cols))

    @classmethod
    def identity(cls, size: int, field: FieldSpec) -> "ExactMatrix":
        """The identity matrix."""
        rows = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        return cls.from_rows(rows, field, size)

    def row(self, i: int) -> list[int | Fraction]:
        """Row i as a list."""
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int | Fraction]]:
        """All rows."""
        return [self.row(i) for i in range(self.rows)]


def transpose(m: ExactMatrix) -> ExactMatrix:
    """Transpose of a matrix."""
    entries = [m.entries[i * m.cols + j] for j in range(m.cols) for i in range(m.rows)]
    return ExactMatrix(field=m.field, rows=m.cols, cols=m.rows, entries=entries)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Matrix product over the common field."""
    if a.field != b.field or a.cols != b.rows:
        raise ValueError("incompatible matrices")
    field = a.field
    K = field.domain
    A = [[field.element(v) for v in a.row(i)] for i in range(a.rows)]
    B = [[field.element(v) for v in b.row(i)] for i in range(b.rows)]
    entries = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc = K.zero
            for k in range(a.cols):
                acc += A[i][k] * B[k][j]
            entries.append(field.to_python(acc))
    return ExactMatrix(field=field, rows=a.rows, cols=b.cols, entries=entries)


def _uses_numpy(field: FieldSpec) -> bool:
    return field.is_prime and field.characteristic < NUMPY_PRIME_LIMIT


def _rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an int64 matrix over GF(p)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nonzero = np.flatnonzero(A[r:, c])
        if nonzero.size == 0:
            continue
        pivot_row = r + int(nonzero[0])
        if pivot_row != r:
            A[[r, pivot_row]] = A[[pivot_row, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        column = A[:, c].copy()
        column[r] = 0
        targets = np.flatnonzero(column)
        if targets.size:
            update = np.outer(column[targets], A[r, c:]) % p
            A[targets, c:] = (A[targets, c:] - update) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_domain(rows: Rows, ncols: int, field: FieldSpec) -> tuple[list[list[Any]], list[int]]:
    K = field.domain
    data = [[field.element(v) if not isinstance(v, K.dtype) else v for v in row] for row in rows]
    if not data:
        return [], []
    method = "CD" if not field.is_prime else "auto"
    reduced, pivots = DomainMatrix(data, (len(data), ncols), K).rref(method=method)
    rref_rows = reduced.to_list()[: len(pivots)]
    return rref_rows, list(pivots)


def rref(rows: Rows, ncols: int, field: FieldSpec) -> tuple[list[list[FieldValue]], list[int]]:
    """Reduced row echelon form.

    Args:
        rows: Matrix rows (Python field values, domain elements, or an
            int64 array over a prime field).
        ncols: Number of columns.
        field: Coefficient field.

    Returns:
        The nonzero rows of the RREF as Python field values, and the pivot
        columns.
    """
    if len(rows) == 0 or ncols == 0:
        return [], []
    if _uses_numpy(field):
        p = field.characteristic
        R, pivots = _rref_mod_p(_as_int_array(rows, ncols, field), p)
        return R.tolist(), pivots
    reduced, pivots = _rref_domain(rows, ncols, field)
    return [[field.to_python(v) for v in row] for row in reduced], pivots


def _residue(v: Any, field: FieldSpec) -> int:
    if isinstance(v, Fraction):
        return int(field.to_python(field.element(v)))
    return int(v) % field.characteristic


def _as_int_array(rows: Rows, ncols: int, field: FieldSpec) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        return rows.astype(np.int64, copy=False)
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        arr[i] = [_residue(v, field) for v in row]
    return arr


def rows_from_sparse(
    vectors: Sequence[Mapping[int, Any]], ncols: int, field: FieldSpec
) -> Rows:
    """Dense rows from sparse ``{column: value}`` vectors.

    Values may be Python field values or domain elements. Prime fields below
    2^31 get an int64 array, other fields lists of domain elements.
    """
    if _uses_numpy(field):
        arr = np.zeros((len(vectors), ncols), dtype=np.int64)
        for i, vec in enumerate(vectors):
            for j, v in vec.items():
                arr[i, j] = _residue(v, field)
        return arr
    K = field.domain
    rows = []
    for vec in vectors:
        row = [K.zero] * ncols
        for j, v in vec.items():
            row[j] = v if isinstance(v, K.dtype) else field.element(v)
        rows.append(row)
    return rows


def pivot_columns(rows: Rows, ncols: int, field: FieldSpec) -> list[int]:
    """Pivot columns of the RREF (greedy independent columns, in order)."""
    if len(rows) == 0 or ncols == 0:
        return []
    if _uses_numpy(field):
        _, pivots = _rref_mod_p(_as_int_array(rows, ncols, field), field.characteristic)
        return pivots
    return _rref_domain(rows, ncols, field)[1]


def row_rank(rows: Rows, ncols: int, field: FieldSpec) -> int:
    """Rank of a matrix given by rows."""
    return len(pivot_columns(rows, ncols, field))


def kernel_basis(rows: Rows, ncols: int, field: FieldSpec) -> list[list[FieldValue]]:
    """Right kernel basis in reduced echelon-normal form.

    One vector per free column f: entry f is 1, entry at the i-th pivot
    column is minus the RREF entry (i, f), all others 0.
    """
    reduced, pivots = rref(rows, ncols, field)
    zero: FieldValue = 0 if field.is_prime else Fraction(0)
    one: FieldValue = 1 if field.is_prime else Fraction(1)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for i, c in enumerate(pivots):
            entry = reduced[i][f]
            if entry:
                v[c] = field.to_python(-field.element(entry))
        basis.append(v)
    return basis


def complement_rows(
    base: Rows, candidates: Rows, ncols: int, field: FieldSpec
) -> list[int]:
    """Indices of candidate rows that greedily extend the span of ``base``.

    A candidate is kept when it is independent of ``base`` together with the
    candidates kept before it. Computed as the pivot columns of the
    transposed stacked matrix.
    """
    if len(candidates) == 0:
        return []
    stacked = _stack(base, candidates, ncols, field)
    nbase = len(base)
    pivots = pivot_columns(_transpose_rows(stacked, ncols, field), len(stacked), field)
    return [c - nbase for c in pivots if c >= nbase]


def _stack(base: Rows, candidates: Rows, ncols: int, field: FieldSpec) -> Rows:
    if _uses_numpy(field):
        parts = [_as_int_array(r, ncols, field) for r in (base, candidates) if len(r)]
        return np.vstack(parts)
    return [list(r) for r in base] + [list(r) for r in candidates]


def _transpose_rows(rows: Rows, ncols: int, field: FieldSpec) -> Rows:
    if isinstance(rows, np.ndarray):
        return rows.T.copy()
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def rank_and_kernel(m: ExactMatrix) -> tuple[int, list[list[FieldValue]]]:
    """Rank and a kernel basis of a matrix.

    Args:
        m: The matrix.

    Returns:
        ``(rank, kernel_basis)`` with ``rank + len(kernel_basis) == m.cols``;
        every basis vector is annihilated by ``m`` and is in reduced
        echelon-normal form.

    Examples:
        >>> QQ = FieldSpec.rationals()
        >>> rank_and_kernel(ExactMatrix.identity(2, QQ))
        (2, [])
        >>> r, ker = rank_and_kernel(ExactMatrix.zeros(1, 3, QQ))
        >>> r, len(ker)
        (0, 3)
    """
    rows = m.to_rows()
    basis = kernel_basis(rows, m.cols, m.field)
    rank = m.cols - len(basis)
    logger.debug("rank_and_kernel %dx%d over %s: rank %d", m.rows, m.cols, m.field.label, rank)
    return rank, basis


def rank(m: ExactMatrix) -> int:
    """Rank of a matrix."""
    return row_rank(m.to_rows(), m.cols, m.field)


def left_kernel_basis(rows: Rows, ncols: int, field: FieldSpec) -> list[list[FieldValue]]:
    """Basis of {v : v * M = 0} for the matrix M given by ``rows``.

    Vectors are indexed by the rows of M, in echelon-normal form.
    """
    if len(rows) == 0:
        return []
    return kernel_basis(_transpose_rows(rows, ncols, field), len(rows), field)
