"""Hilbert functions, Hilbert series and dimension/degree of graded quotients.

Everything here is read off the leading-term ideal of a Gröbner basis: R/I
and R/in(I) share their Hilbert function. The Hilbert series numerator (the
K-polynomial) of a monomial ideal comes from the pivot recursion

    K(M) = K(M + (x_i)) + t * K(M : x_i),

ending at ideals with pairwise coprime generators, where
K(M) = prod(1 - t^deg(m)).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb

from sympy.polys.domains import QQ, ZZ
from sympy.polys.rings import PolyElement, ring

from src.errors import NotHomogeneousError
from src.groebner.ideal import Ideal
from src.kernel.polynomial import Exponents, Polynomial, monomials_of_degree
from src.linalg.exact import row_rank, rows_from_sparse
from src.report import ReportModel

logger = logging.getLogger(__name__)

_SERIES_RING, _t = ring("t", ZZ)
_POLY_RING, _s = ring("s", QQ)


class HilbertValue(ReportModel):
    """One value of a Hilbert function."""

    degree: int
    dim: int


class HilbertPolynomialData(ReportModel):
    """Eventual-polynomial descriptor of a Hilbert function.

    Attributes:
        krull_dim: Krull dimension of R/I (-1 for the unit ideal).
        h_vector: Coefficients of the reduced Hilbert series numerator.
        coefficients: Hilbert polynomial coefficients in ascending powers of
            the degree variable, as exact fraction strings.
        regularity_index: The Hilbert function equals the polynomial from
            this degree on.
        degree: Multiplicity of R/I (the h-vector sum).
    """

    krull_dim: int
    h_vector: list[int]
    coefficients: list[str]
    regularity_index: int
    degree: int

    def value(self, s: int) -> Fraction:
        """Evaluate the Hilbert polynomial at ``s``."""
        return sum((Fraction(c) * s**k for k, c in enumerate(self.coefficients)), Fraction(0))


class HilbertFn(ReportModel):
    """Hilbert function values plus the Hilbert polynomial descriptor."""

    values: list[HilbertValue]
    polynomial: HilbertPolynomialData

    def dim(self, degree: int) -> int:
        """Recorded dimension at ``degree``."""
        for v in self.values:
            if v.degree == degree:
                return v.dim
        raise KeyError(f"degree {degree} not computed")

    def dims(self) -> list[int]:
        """Recorded dimensions in degree order."""
        return [v.dim for v in sorted(self.values, key=lambda v: v.degree)]


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b, strict=True))


def minimalize_monomials(gens: list[Exponents]) -> tuple[Exponents, ...]:
    """Minimal generators of the monomial ideal generated by ``gens``."""
    kept: list[Exponents] = []
    for g in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(_divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@lru_cache(maxsize=4096)
def _numerator(gens: tuple[Exponents, ...]) -> PolyElement:
    if not gens:
        return _SERIES_RING.one
    if any(sum(g) == 0 for g in gens):
        return _SERIES_RING.zero
    nvars = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(nvars)]
    pivot = max(range(nvars), key=lambda i: counts[i])
    if counts[pivot] <= 1:
        result = _SERIES_RING.one
        for g in gens:
            result *= 1 - _t ** sum(g)
        return result
    unit = tuple(1 if k == pivot else 0 for k in range(nvars))
    plus = minimalize_monomials([g for g in gens if g[pivot] == 0] + [unit])
    shifted = [tuple(e - 1 if k == pivot and e else e for k, e in enumerate(g)) for g in gens]
    return _numerator(plus) + _t * _numerator(minimalize_monomials(shifted))


def monomial_k_polynomial(gens: list[Exponents]) -> list[int]:
    """K-polynomial of a monomial ideal, ascending coefficients in t."""
    numerator = _numerator(minimalize_monomials(gens)) if gens else _SERIES_RING.one
    return _coefficients(numerator)


def _coefficients(f: PolyElement) -> list[int]:
    if not f:
        return []
    terms = dict(f.iterterms())
    return [int(terms.get((k,), 0)) for k in range(f.degree() + 1)]


def k_polynomial(i: Ideal) -> list[int]:
    """Numerator of the Hilbert series of R/i over (1 - t)^n.

    Args:
        i: A homogeneous ideal.

    Returns:
        Ascending integer coefficients; ``[]`` for the unit ideal.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> from src.kernel.fields import FieldSpec
        >>> k_polynomial(Ideal(parse_polynomials(["x0", "x1"], 2, FieldSpec.rationals())))
        [1, -2, 1]
    """
    return monomial_k_polynomial(list(i.leading_monomials))


def hilbert_series_data(i: Ideal) -> tuple[list[int], int]:
    """Reduced numerator (h-vector) and Krull dimension of R/i.

    The unit ideal gives ``([], -1)``.
    """
    numerator = k_polynomial(i)
    if not numerator:
        return [], -1
    h = _SERIES_RING.from_dict({(k,): c for k, c in enumerate(numerator)})
    krull = i.num_vars
    while krull > 0 and sum(h.coeffs()) == 0:
        h = h.exquo(1 - _t)
        krull -= 1
    return _coefficients(h), krull


def krull_dim(i: Ideal) -> int:
    """Krull dimension of R/i (-1 for the unit ideal)."""
    return hilbert_series_data(i)[1]


def _hilbert_polynomial(h: list[int], krull: int) -> tuple[list[str], int]:
    if krull <= 0:
        return [], max(0, len(h))
    poly = _POLY_RING.zero
    denominator = 1
    for k in range(1, krull):
        denominator *= k
    for shift, coeff in enumerate(h):
        if not coeff:
            continue
        term = _POLY_RING.one
        for k in range(1, krull):
            term *= _s - shift + k
        poly += term * coeff
    poly = poly * QQ(1, denominator)
    terms = dict(poly.iterterms())
    coefficients = []
    for k in range(krull):
        c = terms.get((k,), QQ.zero)
        coefficients.append(str(Fraction(int(c.numerator), int(c.denominator))))
    regularity = max(0, len(h) - krull)
    return coefficients, regularity


def hilbert_polynomial_data(i: Ideal) -> HilbertPolynomialData:
    """Hilbert polynomial descriptor of R/i."""
    h, krull = hilbert_series_data(i)
    coefficients, regularity = _hilbert_polynomial(h, krull)
    return HilbertPolynomialData(
        krull_dim=krull,
        h_vector=h,
        coefficients=coefficients,
        regularity_index=regularity,
        degree=sum(h),
    )


def dim_deg(i: Ideal) -> tuple[int, int]:
    """Projective dimension and degree of V(i).

    Args:
        i: A homogeneous ideal.

    Returns:
        ``(projDim, degree)`` with projDim = Krull dimension - 1 and degree the
        multiplicity of R/i. An empty variety (unit or irrelevant-primary
        ideal) gives ``(-1, 0)``.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> from src.kernel.fields import FieldSpec
        >>> dim_deg(Ideal(parse_polynomials(["x0", "x1"], 3, FieldSpec.rationals())))
        (0, 1)
    """
    _require_homogeneous(i)
    h, krull = hilbert_series_data(i)
    if krull <= 0:
        return -1, 0
    return krull - 1, sum(h)


def series_coefficients(numerator: list[int], num_vars: int, max_degree: int) -> list[int]:
    """Expand numerator / (1 - t)^num_vars up to ``max_degree``."""
    values = []
    for t in range(max_degree + 1):
        total = 0
        for k, c in enumerate(numerator):
            if c and k <= t:
                total += c * comb(t - k + num_vars - 1, num_vars - 1)
        values.append(total)
    return values


def hilbert_function(i: Ideal, max_degree: int) -> HilbertFn:
    """Hilbert function of R/i in degrees 0..max_degree.

    Counts standard monomials, i.e. monomials outside the leading-term ideal,
    through the Hilbert series of in(i).

    Args:
        i: A homogeneous ideal.
        max_degree: Largest degree computed.

    Returns:
        Values for 0 <= t <= max_degree with the Hilbert polynomial data.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> from src.kernel.fields import FieldSpec
        >>> QQ_ = FieldSpec.rationals()
        >>> hilbert_function(Ideal([], 4, QQ_), 3).dims()
        [1, 4, 10, 20]
    """
    _require_homogeneous(i)
    values = series_coefficients(k_polynomial(i), i.num_vars, max_degree)
    return HilbertFn(
        values=[HilbertValue(degree=t, dim=v) for t, v in enumerate(values)],
        polynomial=hilbert_polynomial_data(i),
    )


def standard_monomials(i: Ideal, degree: int) -> list[Exponents]:
    """Monomials of one degree outside the leading-term ideal, descending grevlex."""
    leads = i.leading_monomials
    return [
        m
        for m in monomials_of_degree(i.num_vars, degree)
        if not any(_divides(g, m) for g in leads)
    ]


def graded_piece_vectors(
    gens: list[Polynomial], degree: int
) -> tuple[list[dict[int, object]], dict[Exponents, int]]:
    """Spanning set of the degree-``degree`` piece of the ideal generated by ``gens``.

    Returns the sparse coefficient vectors of every product m*g with
    deg(m) + deg(g) = degree, together with the monomial index of R_degree.
    """
    num_vars = gens[0].num_vars
    index = {m: k for k, m in enumerate(monomials_of_degree(num_vars, degree))}
    vectors: list[dict[int, object]] = []
    for g in gens:
        if g.is_zero:
            continue
        e = g.total_degree
        for m in monomials_of_degree(num_vars, degree - e):
            vec = {}
            for exps, c in g.rep.iterterms():
                vec[index[tuple(a + b for a, b in zip(m, exps, strict=True))]] = c
            vectors.append(vec)
    return vectors, index


def hilbert_function_dense(i: Ideal, max_degree: int) -> list[int]:
    """Hilbert function of R/i by graded linear algebra.

    dim (R/i)_t = dim R_t - rank of the matrix of all products m*g of degree t.
    Independent of Gröbner bases; used to cross-check :func:`hilbert_function`.
    """
    _require_homogeneous(i)
    gens = [g for g in i.generators if not g.is_zero]
    values = []
    for t in range(max_degree + 1):
        total = comb(t + i.num_vars - 1, i.num_vars - 1)
        if not gens:
            values.append(total)
            continue
        vectors, index = graded_piece_vectors(gens, t)
        rows = rows_from_sparse(vectors, len(index), i.field)
        rank = row_rank(rows, len(index), i.field) if vectors else 0
        values.append(total - rank)
    logger.debug("hilbert_function_dense: %s", values)
    return values


def _require_homogeneous(i: Ideal) -> None:
    if not i.is_homogeneous:
        raise NotHomogeneousError("a homogeneous ideal is required")
