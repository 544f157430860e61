"""Semigeneric linear sections M_L = M0 + x0*E_11 of the generic determinant.

M0 is a matrix of linear forms in x1, x2, x3 and M1 its lower-right
(n-1) x (n-1) block. A section is certified when the plane curves det M0 = 0
and det M1 = 0 meet transversally in exactly n(n-1) points:

- (x0, det M0, det M1) defines a 0-dimensional scheme of degree n(n-1);
- adding the 2 x 2 minors of the Jacobian of (det M0, det M1) in x1..x3
  leaves the empty scheme, so every intersection point is reduced.
"""

import logging
from typing import Any

import numpy as np
from pydantic import ConfigDict, field_serializer

from src.config import get_settings
from src.determinants.build import PolyMatrix, determinant, minors
from src.determinants.sampling import UncertifiedSample, certified_sample
from src.errors import HypothesisError
from src.groebner.hilbert import HilbertFn, dim_deg, hilbert_function
from src.groebner.ideal import Ideal, ideal_contains
from src.kernel.fields import FieldSpec
from src.kernel.polynomial import Polynomial, differentiate, monomials_of_degree
from src.report import ReportModel

logger = logging.getLogger(__name__)

SECTION_VARS = 4


class SemigenericCertificate(ReportModel):
    """Checks passed (or failed) by one sampled M0.

    Attributes:
        intersection_dim: Projective dimension of V(x0, det M0, det M1).
        intersection_degree: Its degree.
        expected_degree: n(n-1).
        transversal: Whether the curves meet transversally everywhere.
        passed: All of the above hold.
    """

    intersection_dim: int
    intersection_degree: int
    expected_degree: int
    transversal: bool
    passed: bool


class SemigenericSection(ReportModel):
    """A certified semigeneric matrix.

    Attributes:
        n: Matrix size.
        seed: Sampling seed.
        field: Field label.
        M0: Matrix of linear forms in x1, x2, x3.
        ML: M0 + x0*E_11.
        certificate: The certificate of the accepted sample.
        attempts: Samples drawn, the accepted one included.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    seed: int
    field: str
    M0: PolyMatrix
    ML: PolyMatrix
    certificate: SemigenericCertificate
    attempts: int

    @field_serializer("M0", "ML")
    def _serialize_matrix(self, matrix: PolyMatrix) -> list[list[str]]:
        return [[str(e) for e in row] for row in matrix]


class MinorsIdealCheck(ReportModel):
    """Comparison of I_L with x0*m0^(n-2) + m0^(n-1).

    Attributes:
        n: Matrix size.
        equal: Mutual containment of the two ideals.
        containment: I_L is contained in the right-hand side.
        generator_degree_dim: dim (I_L)_(n-1), n^2 when the minors are independent.
        lhs_hf: Hilbert function of R/I_L.
        rhs_hf: Hilbert function of R/(x0*m0^(n-2) + m0^(n-1)).
    """

    n: int
    equal: bool
    containment: bool
    generator_degree_dim: int
    lhs_hf: HilbertFn
    rhs_hf: HilbertFn


def _linear_form(coefficients: list[Any], field: FieldSpec) -> Polynomial:
    terms = {}
    for k, c in enumerate(coefficients, start=1):
        terms[tuple(1 if v == k else 0 for v in range(SECTION_VARS))] = c
    return Polynomial.from_terms(terms, SECTION_VARS, field)


def _jacobian_minors(f: Polynomial, g: Polynomial) -> list[Polynomial]:
    df = [differentiate(f, v) for v in range(1, SECTION_VARS)]
    dg = [differentiate(g, v) for v in range(1, SECTION_VARS)]
    return [df[a] * dg[b] - df[b] * dg[a] for a, b in ((0, 1), (0, 2), (1, 2))]


def certify_plane_section(M0: PolyMatrix) -> SemigenericCertificate:
    """Certificate for the curves det M0 = 0 and det M1 = 0 in the plane x0 = 0."""
    n = len(M0)
    field = M0[0][0].field
    x0 = Polynomial.variable(0, SECTION_VARS, field)
    f = determinant(M0)
    g = determinant([row[1:] for row in M0[1:]])
    expected = n * (n - 1)
    if f.is_zero or g.is_zero:
        return SemigenericCertificate(
            intersection_dim=SECTION_VARS - 2,
            intersection_degree=0,
            expected_degree=expected,
            transversal=False,
            passed=False,
        )
    s, degree = dim_deg(Ideal([x0, f, g]))
    transversal = False
    if s == 0:
        tangency, _ = dim_deg(Ideal([x0, f, g, *_jacobian_minors(f, g)]))
        transversal = tangency == -1
    return SemigenericCertificate(
        intersection_dim=s,
        intersection_degree=degree,
        expected_degree=expected,
        transversal=transversal,
        passed=s == 0 and degree == expected and transversal,
    )


def semigeneric_section(
    n: int, seed: int | None = None, field: FieldSpec | None = None
) -> SemigenericSection:
    """Sample and certify a semigeneric matrix M_L = M0 + x0*E_11.

    Args:
        n: Matrix size, at least 2.
        seed: Sampling seed (default ``Settings.seed``).
        field: Coefficient field (default GF(``Settings.prime``)); a prime
            field must have p > n(n-1).

    Returns:
        The certified section in k[x0, x1, x2, x3].

    Raises:
        HypothesisError: If n < 2 or the prime is too small.
        GenericityError: If no sample passes within ``Settings.max_retries``.
    """
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    field = FieldSpec.prime_field(settings.prime) if field is None else field
    if n < 2:
        raise HypothesisError(f"matrix size must be at least 2, got {n}")
    if not field.supports_sampling(n * (n - 1)):
        raise HypothesisError(f"{field.label} is too small for n={n}: need p > {n * (n - 1)}")

    def draw(rng: np.random.Generator) -> tuple[PolyMatrix, SemigenericCertificate]:
        M0 = [
            [_linear_form([field.random_element(rng) for _ in range(3)], field) for _ in range(n)]
            for _ in range(n)
        ]
        certificate = certify_plane_section(M0)
        if not certificate.passed:
            logger.debug("semigeneric sample rejected: %s", certificate.to_dict())
            raise UncertifiedSample(certificate)
        return M0, certificate

    (M0, certificate), attempts = certified_sample(draw, seed, f"semigeneric section n={n}")
    x0 = Polynomial.variable(0, SECTION_VARS, field)
    ML = [list(row) for row in M0]
    ML[0][0] = ML[0][0] + x0
    return SemigenericSection(
        n=n,
        seed=seed,
        field=field.label,
        M0=M0,
        ML=ML,
        certificate=certificate,
        attempts=attempts,
    )


def expected_minors_ideal(n: int, field: FieldSpec) -> Ideal:
    """The ideal x0*m0^(n-2) + m0^(n-1), m0 = (x1, x2, x3), in k[x0..x3]."""
    gens = []
    for degree, with_x0 in ((n - 2, True), (n - 1, False)):
        for m in monomials_of_degree(3, degree):
            exps = ((1 if with_x0 else 0),) + m
            gens.append(Polynomial.from_terms({exps: 1}, SECTION_VARS, field))
    return Ideal(gens)


def minors_ideal_check(sec: SemigenericSection) -> MinorsIdealCheck:
    """Compare the ideal of (n-1)-minors of M_L with x0*m0^(n-2) + m0^(n-1).

    Args:
        sec: A certified semigeneric section.

    Returns:
        Equality by mutual membership of Gröbner-reduced generators, the
        unconditional containment separately, and both Hilbert functions.
    """
    n = sec.n
    field = sec.ML[0][0].field
    lhs = Ideal(list(minors(sec.ML, n - 1).values()))
    rhs = expected_minors_ideal(n, field)
    containment = ideal_contains(rhs, lhs)
    equal = containment and ideal_contains(lhs, rhs)
    lhs_hf = hilbert_function(lhs, n)
    rhs_hf = hilbert_function(rhs, n)
    generator_degree_dim = len(monomials_of_degree(SECTION_VARS, n - 1)) - lhs_hf.dim(n - 1)
    if not containment:
        logger.warning("I_L is not contained in x0*m0^(n-2) + m0^(n-1) for n=%d", n)
    return MinorsIdealCheck(
        n=n,
        equal=equal,
        containment=containment,
        generator_degree_dim=generator_degree_dim,
        lhs_hf=lhs_hf,
        rhs_hf=rhs_hf,
    )
