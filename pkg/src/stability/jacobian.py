"""Jacobian data of a hypersurface and the graded pieces of its syzygies.

The sections of T_D(t) are the degree-t syzygies of the partials of F.
They are computed here by plain graded linear algebra on the map
(R_t)^(N+1) -> R_(t+d-1), (a_i) -> sum a_i * dF/dx_i; Gröbner bases are only
used for the singular locus (dimension, degree, saturation).
"""

import logging

from src.errors import HypothesisError, NotHomogeneousError
from src.groebner.hilbert import dim_deg, hilbert_function, standard_monomials
from src.groebner.ideal import Ideal, irrelevant_ideal, normal_form, saturate
from src.kernel.fields import FieldValue
from src.kernel.polynomial import Exponents, Polynomial, differentiate, monomials_of_degree
from src.linalg.exact import Rows, left_kernel_basis, row_rank, rows_from_sparse
from src.stability.report import HypersurfaceData

logger = logging.getLogger(__name__)


def jacobian_data(F: Polynomial) -> HypersurfaceData:
    """Partials, Jacobian ideal and singular locus of D = V(F).

    Args:
        F: Homogeneous form of degree at least 2.

    Returns:
        The hypersurface data; ``sing_deg`` is filled when the singular locus
        is finite and nonempty.

    Raises:
        NotHomogeneousError: If F is not homogeneous.
        HypothesisError: If F is constant, linear, or all its partials vanish
            in the coefficient field's characteristic.

    Examples:
        >>> from src.kernel.parser import parse_polynomial
        >>> from src.kernel.fields import FieldSpec
        >>> F = parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, FieldSpec.rationals())
        >>> h = jacobian_data(F)
        >>> h.d, h.ambient_dim, h.sing_dim
        (2, 3, -1)
    """
    if F.is_zero or not F.is_homogeneous:
        raise NotHomogeneousError("F must be a nonzero homogeneous form")
    d = F.total_degree
    if d < 2:
        raise HypothesisError(f"F must have degree at least 2, got {d}")
    partials = [differentiate(F, i) for i in range(F.num_vars)]
    if all(p.is_zero for p in partials):
        raise HypothesisError(
            f"all partials of F vanish in characteristic {F.field.characteristic}"
        )
    ideal = Ideal(partials)
    sing_dim, _ = dim_deg(ideal)
    data = HypersurfaceData(
        F=F,
        d=d,
        ambient_dim=F.num_vars - 1,
        partials=partials,
        jacobian_ideal=ideal,
        sing_dim=sing_dim,
    )
    if sing_dim == 0:
        _, degree = dim_deg(saturated_jacobian(data))
        data.sing_deg = degree
    logger.debug(
        "jacobian_data: d=%d N=%d s=%d singDeg=%s", d, data.ambient_dim, sing_dim, data.sing_deg
    )
    return data


def saturated_jacobian(h: HypersurfaceData) -> Ideal:
    """The saturation of the Jacobian ideal by the irrelevant ideal (cached)."""
    if h._saturation is None:
        h._saturation = saturate(h.jacobian_ideal, irrelevant_ideal(h.num_vars, h.F.field))
    return h._saturation


def _syzygy_rows(h: HypersurfaceData, t: int) -> tuple[Rows, int, tuple[Exponents, ...]]:
    n = h.num_vars
    source = monomials_of_degree(n, t)
    index = {m: k for k, m in enumerate(monomials_of_degree(n, t + h.d - 1))}
    vectors = []
    for p in h.partials:
        terms = list(p.rep.iterterms())
        for m in source:
            vectors.append(
                {index[tuple(a + b for a, b in zip(m, e, strict=True))]: c for e, c in terms}
            )
    return rows_from_sparse(vectors, len(index), h.F.field), len(index), source


def log_sections_dim(h: HypersurfaceData, t: int) -> int:
    """Dimension of the degree-t syzygies of the partials.

    Args:
        h: Hypersurface data.
        t: Twist; negative twists give 0.

    Returns:
        dim ker((R_t)^(N+1) -> R_(t+d-1)).

    Examples:
        >>> from src.kernel.parser import parse_polynomial
        >>> from src.kernel.fields import FieldSpec
        >>> F = parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, FieldSpec.rationals())
        >>> h = jacobian_data(F)
        >>> log_sections_dim(h, 0)
        0
    """
    if t < 0:
        return 0
    rows, ncols, source = _syzygy_rows(h, t)
    nrows = len(source) * h.num_vars
    return nrows - row_rank(rows, ncols, h.F.field)


def syzygy_witnesses(h: HypersurfaceData, t: int) -> list[list[Polynomial]]:
    """A basis of the degree-t syzygies, as vectors (a_0, ..., a_N)."""
    if t < 0:
        return []
    rows, ncols, source = _syzygy_rows(h, t)
    n = h.num_vars
    field = h.F.field
    witnesses = []
    for vec in left_kernel_basis(rows, ncols, field):
        components = []
        for i in range(n):
            chunk = vec[i * len(source) : (i + 1) * len(source)]
            components.append(
                Polynomial.from_terms(
                    {m: c for m, c in zip(source, chunk, strict=True) if c}, n, field
                )
            )
        witnesses.append(components)
    return witnesses


def min_syzygy_degree(h: HypersurfaceData) -> int:
    """Smallest t with a nonzero degree-t syzygy of the partials.

    The Koszul syzygies dF/dx_j * e_i - dF/dx_i * e_j live in degree d-1, so
    the search stops there.

    Raises:
        HypothesisError: If fewer than two partials are nonzero.
    """
    if sum(1 for p in h.partials if not p.is_zero) < 2:
        raise HypothesisError("at least two nonzero partials are required")
    for t in range(h.d):
        if log_sections_dim(h, t) > 0:
            return t
    raise AssertionError("the Koszul syzygies were not found in degree d-1")


def _partial_rows(h: HypersurfaceData) -> tuple[Rows, int]:
    index = {m: k for k, m in enumerate(monomials_of_degree(h.num_vars, h.d - 1))}
    vectors = [{index[e]: c for e, c in p.rep.iterterms()} for p in h.partials]
    return rows_from_sparse(vectors, len(index), h.F.field), len(index)


def trivial_summand_count(h: HypersurfaceData) -> int:
    """Number of trivial summands O split off T_D by dependent partials.

    Returns:
        (N+1) minus the dimension of the span of the partials in R_(d-1).

    Examples:
        >>> from src.kernel.parser import parse_polynomial
        >>> from src.kernel.fields import FieldSpec
        >>> F = parse_polynomial("x0^2 + x1^2", 4, FieldSpec.rationals())
        >>> trivial_summand_count(jacobian_data(F))
        2
    """
    rows, ncols = _partial_rows(h)
    return h.num_vars - row_rank(rows, ncols, h.F.field)


def partial_dependencies(h: HypersurfaceData) -> list[list[FieldValue]]:
    """Linear relations sum c_i * dF/dx_i = 0 among the partials."""
    rows, ncols = _partial_rows(h)
    return left_kernel_basis(rows, ncols, h.F.field)


def _require_singular(h: HypersurfaceData) -> None:
    if h.sing_dim < 0:
        raise HypothesisError("identification requires D singular")


def saturation_quotient_dim(h: HypersurfaceData, t: int) -> int:
    """dim (J^sat / J)_t, the degree-t piece of H^1_* of the logarithmic tangent sheaf.

    Raises:
        HypothesisError: If D is smooth.
    """
    _require_singular(h)
    if t < 0:
        return 0
    jacobian = hilbert_function(h.jacobian_ideal, t).dim(t)
    saturated = hilbert_function(saturated_jacobian(h), t).dim(t)
    return jacobian - saturated


def saturation_quotient_table(h: HypersurfaceData, t_max: int) -> dict[int, int]:
    """``{t: dim (J^sat/J)_t}`` for 0 <= t <= t_max."""
    _require_singular(h)
    jacobian = hilbert_function(h.jacobian_ideal, t_max).dims()
    saturated = hilbert_function(saturated_jacobian(h), t_max).dims()
    return {t: a - b for t, (a, b) in enumerate(zip(jacobian, saturated, strict=True))}


def mult_map_rank(h: HypersurfaceData, g: Polynomial, t_from: int) -> int:
    """Rank of multiplication by g from (J^sat/J)_t_from to (J^sat/J)_(t_from + deg g).

    The source is spanned by the classes of the products m*s, s in the
    Gröbner basis of J^sat; the image is read off in the standard-monomial
    basis of R/J through normal forms.

    Args:
        h: Hypersurface data of a singular D.
        g: Homogeneous multiplier (zero gives rank 0).
        t_from: Source degree.

    Returns:
        The rank.

    Raises:
        HypothesisError: If D is smooth.
        NotHomogeneousError: If g is not homogeneous.
    """
    _require_singular(h)
    if g.is_zero or t_from < 0:
        return 0
    if not g.is_homogeneous:
        raise NotHomogeneousError("the multiplier must be homogeneous")
    t_to = t_from + g.total_degree
    jacobian = h.jacobian_ideal
    coset_basis = standard_monomials(jacobian, t_to)
    index = {m: k for k, m in enumerate(coset_basis)}
    vectors = []
    for s in saturated_jacobian(h).groebner:
        for m in monomials_of_degree(h.num_vars, t_from - s.total_degree):
            product = Polynomial.from_terms({m: 1}, h.num_vars, h.F.field) * s * g
            remainder = normal_form(product, jacobian)
            if not remainder.is_zero:
                vectors.append({index[e]: c for e, c in remainder.rep.iterterms()})
    if not vectors:
        return 0
    rank = row_rank(rows_from_sparse(vectors, len(index), h.F.field), len(index), h.F.field)
    logger.debug("mult_map_rank: %d products, rank %d", len(vectors), rank)
    return rank


def plessis_wall_bound(h: HypersurfaceData, r: int) -> int:
    """(d - r - 1)(d - 1)^(N - 1), a lower bound for the total Tjurina number."""
    return (h.d - r - 1) * (h.d - 1) ** (h.ambient_dim - 1)
