"""Fibers of the logarithmic tangent sheaf of the generic determinant.

At a matrix a of rank n-k the fiber of T_D is governed by the linear map
b -> (a*b, b*a): its kernel modulo scalars, the space of b with a*b and b*a
both scalar, has dimension 1 when a is invertible and k^2 otherwise.
Independently, T_D is the cokernel of the third differential phi of the
resolution of the Jacobian ideal, so its fiber at a has dimension
rows(phi) - rank phi(a), which is n^2 + k^2 - 2 for k >= 1.
"""

import logging
from functools import lru_cache

import numpy as np
from pydantic import Field

from src.config import get_settings
from src.determinants.build import Flavor, build_determinant
from src.determinants.sampling import UncertifiedSample, certified_sample
from src.errors import HypothesisError
from src.groebner.resolution import GradedMap, graded_prefix
from src.kernel.fields import FieldSpec
from src.linalg.exact import ExactMatrix, matmul, rank, rank_and_kernel
from src.report import ReportModel

logger = logging.getLogger(__name__)

# Sizes for which the presentation matrix is evaluated.
PRESENTATION_SIZES = (2, 3)


class FiberRankCheck(ReportModel):
    """Kernel dimensions over seeded rank-(n-k) matrices.

    Attributes:
        n: Matrix size.
        k: Corank of the sampled matrices.
        trials: Number of samples.
        seed: Base seed; trial t uses seed + t.
        kernel_dims: Kernel dimension per trial.
        expected: 1 for k = 0, k^2 otherwise.
        fiber_dims: rows(phi) - rank phi(a) per trial, for n in {2, 3}.
        expected_fiber_dim: n^2 + k^2 - 2 for k >= 1, n^2 - 1 for k = 0.
        passed: Every trial matches.
    """

    n: int
    k: int
    trials: int
    seed: int
    kernel_dims: list[int]
    expected: int
    fiber_dims: list[int] | None = None
    expected_fiber_dim: int
    passed: bool = Field(alias="pass")


def _random_matrix(rng: np.random.Generator, n: int, field: FieldSpec) -> ExactMatrix:
    rows = [[field.to_python(field.random_element(rng)) for _ in range(n)] for _ in range(n)]
    return ExactMatrix.from_rows(rows, field, n)


def rank_point(rng: np.random.Generator, n: int, k: int, field: FieldSpec) -> ExactMatrix:
    """P * diag(I_(n-k), 0) * Q with random P and Q, certified to have rank n-k."""
    P = _random_matrix(rng, n, field)
    Q = _random_matrix(rng, n, field)
    projector = ExactMatrix.from_rows(
        [[1 if i == j and i < n - k else 0 for j in range(n)] for i in range(n)], field, n
    )
    a = matmul(matmul(P, projector), Q)
    if rank(a) != n - k:
        raise UncertifiedSample({"rank": rank(a), "expected": n - k})
    return a


def fiber_kernel_dim(a: ExactMatrix) -> int:
    """dim {(b, lambda, mu) : a*b = lambda*I and b*a = mu*I}.

    The unknowns are the n^2 entries of b (row by row) followed by lambda
    and mu; the system has 2n^2 equations.

    Examples:
        >>> QQ = FieldSpec.rationals()
        >>> fiber_kernel_dim(ExactMatrix.identity(2, QQ))
        1
    """
    n = a.rows
    field = a.field
    entries = a.to_rows()
    lam, mu = n * n, n * n + 1
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n + 2)
            for ell in range(n):
                row[ell * n + j] = entries[i][ell]
            if i == j:
                row[lam] = -1
            rows.append(row)
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n + 2)
            for ell in range(n):
                row[i * n + ell] = entries[ell][j]
            if i == j:
                row[mu] = -1
            rows.append(row)
    _, kernel = rank_and_kernel(ExactMatrix.from_rows(rows, field, n * n + 2))
    return len(kernel)


@lru_cache(maxsize=8)
def presentation_matrix(n: int, field: FieldSpec) -> GradedMap:
    """phi: the third differential of the resolution of the generic Jacobian ideal."""
    inst = build_determinant(n, Flavor.GENERIC, field)
    prefix = graded_prefix(inst.partials, {2: n, 3: n + 1})
    return prefix.maps[2]


def expected_kernel_dim(k: int) -> int:
    """1 for an invertible matrix, k^2 for corank k >= 1."""
    return 1 if k == 0 else k * k


def expected_fiber_dim(n: int, k: int) -> int:
    """n^2 + k^2 - 2 on the hypersurface, the rank n^2 - 1 off it."""
    return n * n - 1 if k == 0 else n * n + k * k - 2


def fiber_rank_check(
    n: int,
    k: int,
    trials: int,
    field: FieldSpec | None = None,
    seed: int | None = None,
) -> FiberRankCheck:
    """Check the kernel dimension stratification on seeded matrices of corank k.

    Args:
        n: Matrix size, at least 2.
        k: Corank, 0 <= k <= n-1.
        trials: Number of seeded samples, at least 1.
        field: Coefficient field (default GF(``Settings.prime``)).
        seed: Base seed (default ``Settings.seed``).

    Returns:
        Per-trial kernel dimensions and, for n in {2, 3}, fiber dimensions of
        the cokernel of phi.

    Raises:
        HypothesisError: If k or trials are out of range.
    """
    settings = get_settings()
    field = FieldSpec.prime_field(settings.prime) if field is None else field
    seed = settings.seed if seed is None else seed
    if n < 2:
        raise HypothesisError(f"matrix size must be at least 2, got {n}")
    if not 0 <= k <= n - 1:
        raise HypothesisError(f"corank k={k} out of range 0..{n - 1}")
    if trials < 1:
        raise HypothesisError("at least one trial is required")

    phi = presentation_matrix(n, field) if n in PRESENTATION_SIZES else None
    kernel_dims: list[int] = []
    fiber_dims: list[int] = []
    for t in range(trials):
        a, _ = certified_sample(
            lambda rng: rank_point(rng, n, k, field), seed + t, f"rank-{n - k} matrix"
        )
        kernel_dims.append(fiber_kernel_dim(a))
        if phi is not None:
            point = [v for row in a.to_rows() for v in row]
            fiber_dims.append(phi.shape[0] - rank(phi.evaluate(point)))
    expected = expected_kernel_dim(k)
    expected_fiber = expected_fiber_dim(n, k)
    passed = all(d == expected for d in kernel_dims)
    if phi is not None:
        passed = passed and all(d == expected_fiber for d in fiber_dims)
    logger.info("fiber_rank_check n=%d k=%d: kernels %s fibers %s", n, k, kernel_dims, fiber_dims)
    return FiberRankCheck(
        n=n,
        k=k,
        trials=trials,
        seed=seed,
        kernel_dims=kernel_dims,
        expected=expected,
        fiber_dims=fiber_dims if phi is not None else None,
        expected_fiber_dim=expected_fiber,
        passed=passed,
    )
