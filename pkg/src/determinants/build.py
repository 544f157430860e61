"""Generic and symmetric determinantal hypersurfaces.

The generic n x n matrix has the n^2 distinct variables x_{i,j} as entries,
numbered row by row (x_{i,j} is x{i*n + j}). The symmetric one puts
x_{j,i} = x_{i,j} and numbers the C(n+1, 2) upper-triangular positions row
by row.
"""

import logging
from enum import Enum
from itertools import combinations

from pydantic import BaseModel, ConfigDict, field_serializer

from src.errors import HypothesisError
from src.kernel.fields import FieldSpec
from src.kernel.polynomial import Polynomial, differentiate

logger = logging.getLogger(__name__)

PolyMatrix = list[list[Polynomial]]


class Flavor(str, Enum):
    """Shape of the determinantal matrix."""

    GENERIC = "generic"
    SYMMETRIC = "symmetric"


class DetInstance(BaseModel):
    """A determinantal hypersurface D = V(det M).

    Attributes:
        n: Matrix size.
        flavor: Generic or symmetric.
        field: Coefficient field.
        num_vars: n^2 (generic) or C(n+1, 2) (symmetric).
        matrix: The n x n matrix of variables.
        F: det(matrix), homogeneous of degree n.
        partials: dF/dx_k for every variable.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    flavor: Flavor
    field: FieldSpec
    num_vars: int
    matrix: PolyMatrix
    F: Polynomial
    partials: list[Polynomial]

    @field_serializer("matrix")
    def _serialize_matrix(self, matrix: PolyMatrix) -> list[list[str]]:
        return [[str(e) for e in row] for row in matrix]

    @field_serializer("F")
    def _serialize_f(self, F: Polynomial) -> str:
        return str(F)

    @field_serializer("partials")
    def _serialize_partials(self, partials: list[Polynomial]) -> list[str]:
        return [str(p) for p in partials]


def variable_positions(n: int, flavor: Flavor) -> list[tuple[int, int]]:
    """Matrix position of each variable, in variable order."""
    if flavor == Flavor.GENERIC:
        return [(i, j) for i in range(n) for j in range(n)]
    return [(i, j) for i in range(n) for j in range(i, n)]


def determinant(matrix: PolyMatrix) -> Polynomial:
    """Determinant by Laplace expansion along rows, memoised on column sets.

    Args:
        matrix: Square matrix of polynomials in one ring.

    Returns:
        The determinant.

    Examples:
        >>> QQ = FieldSpec.rationals()
        >>> x = [Polynomial.variable(k, 4, QQ) for k in range(4)]
        >>> str(determinant([[x[0], x[1]], [x[2], x[3]]]))
        '-x1*x2 + x0*x3'
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError("a nonempty square matrix is required")
    sample = matrix[0][0]
    one = Polynomial.constant(1, sample.num_vars, sample.field)
    memo: dict[tuple[int, ...], Polynomial] = {}

    def expand(cols: tuple[int, ...]) -> Polynomial:
        row = size - len(cols)
        if not cols:
            return one
        if cols in memo:
            return memo[cols]
        total = Polynomial.zero(sample.num_vars, sample.field)
        for k, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero:
                continue
            term = entry * expand(cols[:k] + cols[k + 1 :])
            total = total + term if k % 2 == 0 else total - term
        memo[cols] = total
        return total

    return expand(tuple(range(size)))


def submatrix(matrix: PolyMatrix, rows: tuple[int, ...], cols: tuple[int, ...]) -> PolyMatrix:
    """The submatrix on the given rows and columns."""
    return [[matrix[i][j] for j in cols] for i in rows]


MinorKey = tuple[tuple[int, ...], tuple[int, ...]]


def minors(matrix: PolyMatrix, order: int) -> dict[MinorKey, Polynomial]:
    """All minors of one order, keyed by (row indices, column indices).

    Raises:
        ValueError: If the order is not between 1 and the matrix size.
    """
    size = len(matrix)
    if not 1 <= order <= size:
        raise ValueError(f"minor order {order} out of range 1..{size}")
    return {
        (rows, cols): determinant(submatrix(matrix, rows, cols))
        for rows in combinations(range(size), order)
        for cols in combinations(range(size), order)
    }


def cofactor(matrix: PolyMatrix, i: int, j: int) -> Polynomial:
    """(-1)^(i+j) times the minor deleting row i and column j."""
    size = len(matrix)
    rows = tuple(k for k in range(size) if k != i)
    cols = tuple(k for k in range(size) if k != j)
    if not rows:
        sample = matrix[0][0]
        return Polynomial.constant(1, sample.num_vars, sample.field)
    minor = determinant(submatrix(matrix, rows, cols))
    return minor if (i + j) % 2 == 0 else -minor


def partials_match_minors(inst: DetInstance) -> bool:
    """Check dF/dx_{i,j} against the cofactors of M.

    Generic: dF/dx_{i,j} = C_{i,j}. Symmetric: dF/dx_{i,i} = C_{i,i} and
    dF/dx_{i,j} = 2 C_{i,j} off the diagonal.
    """
    for k, (i, j) in enumerate(variable_positions(inst.n, inst.flavor)):
        expected = cofactor(inst.matrix, i, j)
        if inst.flavor == Flavor.SYMMETRIC and i != j:
            expected = expected * 2
        if inst.partials[k] != expected:
            logger.debug("partial %d differs from its cofactor at (%d, %d)", k, i, j)
            return False
    return True


def build_determinant(n: int, flavor: Flavor, field: FieldSpec) -> DetInstance:
    """Construct the generic or symmetric determinantal hypersurface of size n.

    Args:
        n: Matrix size, at least 2.
        flavor: Generic or symmetric.
        field: Coefficient field; symmetric matrices need characteristic
            other than 2.

    Returns:
        The instance, with the partials checked against the cofactors.

    Raises:
        HypothesisError: If n < 2 or a symmetric matrix is requested in
            characteristic 2.

    Examples:
        >>> inst = build_determinant(2, Flavor.SYMMETRIC, FieldSpec.rationals())
        >>> inst.num_vars, str(inst.F)
        (3, '-x1^2 + x0*x2')
    """
    if n < 2:
        raise HypothesisError(f"matrix size must be at least 2, got {n}")
    if flavor == Flavor.SYMMETRIC and field.characteristic == 2:
        raise HypothesisError("symmetric determinants need characteristic other than 2")
    positions = variable_positions(n, flavor)
    num_vars = len(positions)
    index = {pos: k for k, pos in enumerate(positions)}
    matrix = []
    for i in range(n):
        row = []
        for j in range(n):
            key = (i, j) if flavor == Flavor.GENERIC or i <= j else (j, i)
            row.append(Polynomial.variable(index[key], num_vars, field))
        matrix.append(row)
    F = determinant(matrix)
    inst = DetInstance(
        n=n,
        flavor=flavor,
        field=field,
        num_vars=num_vars,
        matrix=matrix,
        F=F,
        partials=[differentiate(F, k) for k in range(num_vars)],
    )
    if not partials_match_minors(inst):
        raise AssertionError(
            f"partials of the {flavor.value} determinant differ from its cofactors"
        )
    logger.info("built %s determinant n=%d in %d variables", flavor.value, n, num_vars)
    return inst
