"""Artinian reductions of Jacobian ideals and their Lefschetz maps.

A linear section sends each variable of the determinantal ring to a linear
form in a few variables; restricting the partials (the signed submaximal
minors) gives the ideal I_L and the graded algebra A = k[y]/I_L.

For the generic determinant the section lives in four variables and the map
under test is multiplication by a quadric from A_(n-3) to A_(n-1), both of
dimension C(n, 3). For the symmetric determinant a plane section (three
variables) must kill A_t for every t >= n-1.
"""

import logging
from enum import Enum
from math import comb

import numpy as np
from pydantic import Field

from src.config import get_settings
from src.determinants.build import DetInstance, Flavor, variable_positions
from src.determinants.sampling import (
    UncertifiedSample,
    certified_sample,
    random_form,
    random_linear_forms,
)
from src.determinants.semigeneric import SECTION_VARS, semigeneric_section
from src.errors import HypothesisError
from src.groebner.hilbert import dim_deg, hilbert_function, standard_monomials
from src.groebner.ideal import Ideal, normal_form
from src.kernel.polynomial import Polynomial
from src.linalg.exact import row_rank, rows_from_sparse
from src.report import ReportModel

logger = logging.getLogger(__name__)

PLANE_VARS = 3
# Seeds per random sweep; one degenerate seed is tolerated.
SWEEP_SEEDS = 10


class SectionChoice(str, Enum):
    """How the four-variable section of the generic determinant is chosen."""

    SEMIGENERIC = "semigeneric"
    RANDOM = "random"


class LefschetzCheck(ReportModel):
    """Multiplication map A_(n-3) -> A_(n-1) on an Artinian reduction.

    Attributes:
        n: Matrix size.
        choice: Semigeneric section with h = x0, or a random section with a
            random quadric.
        seed: Sampling seed.
        multiplier: The quadric multiplied by.
        hf: dim A_t for 0 <= t <= n-1.
        dim_from: dim A_(n-3).
        dim_to: dim A_(n-1).
        expected_dim: C(n, 3).
        rank: Rank of the multiplication map.
        iso: Both dimensions equal C(n, 3) and the map has full rank.
        low_degrees_free: dim A_t = dim k[y]_t for t <= n-2.
        attempts: Sections drawn.
    """

    n: int
    choice: SectionChoice
    seed: int
    multiplier: str
    hf: list[int]
    dim_from: int
    dim_to: int
    expected_dim: int
    rank: int
    iso: bool
    low_degrees_free: bool
    attempts: int


class LefschetzSweep(ReportModel):
    """Random Lefschetz checks over consecutive seeds."""

    n: int
    seeds: list[int]
    iso_count: int
    required: int
    results: list[LefschetzCheck]
    passed: bool = Field(alias="pass")


class RestrictionCheck(ReportModel):
    """Vanishing of the restricted algebra in high degrees.

    Attributes:
        n: Matrix size.
        flavor: Generic or symmetric.
        seed: Sampling seed.
        hf: Hilbert function of the reduction.
        vanishes_from: First degree with A_t = 0 (None if not reached).
        lefschetz: The Lefschetz check a generic instance reduces to.
        passed: Symmetric: A_t = 0 for t >= n-1. Generic: the Lefschetz
            map is an isomorphism.
        attempts: Sections drawn.
    """

    n: int
    flavor: Flavor
    seed: int
    hf: list[int]
    vanishes_from: int | None = None
    lefschetz: LefschetzCheck | None = None
    passed: bool = Field(alias="pass")
    attempts: int


def restrict(inst: DetInstance, images: list[Polynomial]) -> Ideal:
    """The ideal of the partials after substituting one image per variable."""
    return Ideal([p.substitute(images) for p in inst.partials])


def multiplication_rank(ideal: Ideal, g: Polynomial, degree_from: int) -> int:
    """Rank of multiplication by g from (R/ideal)_degree_from.

    Both graded pieces use the standard-monomial basis of the leading-term
    ideal; images are read off through normal forms.
    """
    source = standard_monomials(ideal, degree_from)
    target = standard_monomials(ideal, degree_from + g.total_degree)
    if not source or not target:
        return 0
    index = {m: k for k, m in enumerate(target)}
    vectors = []
    for m in source:
        product = Polynomial.from_terms({m: 1}, ideal.num_vars, ideal.field) * g
        remainder = normal_form(product, ideal)
        vectors.append({index[e]: c for e, c in remainder.rep.iterterms()})
    return row_rank(rows_from_sparse(vectors, len(index), ideal.field), len(index), ideal.field)


def _require_generic(inst: DetInstance) -> None:
    if inst.flavor != Flavor.GENERIC or inst.n < 3:
        raise HypothesisError("the Lefschetz check needs a generic determinant with n >= 3")


def artinian_lefschetz_check(
    inst: DetInstance, choice: SectionChoice, seed: int | None = None
) -> LefschetzCheck:
    """Multiplication by a quadric between the middle pieces of an Artinian reduction.

    Args:
        inst: Generic determinant, n >= 3.
        choice: ``SEMIGENERIC`` restricts to M_L = M0 + x0*E_11 and multiplies
            by x0^2; ``RANDOM`` restricts to random linear forms in four
            variables and multiplies by a random quadric, resampling
            sections that are not Artinian.
        seed: Sampling seed (default ``Settings.seed``).

    Returns:
        Dimensions, rank and whether the map is an isomorphism.

    Raises:
        HypothesisError: For symmetric instances or n < 3.
        GenericityError: If no Artinian random section is found.
    """
    _require_generic(inst)
    seed = get_settings().seed if seed is None else seed
    n = inst.n
    field = inst.field

    if choice == SectionChoice.SEMIGENERIC:
        section = semigeneric_section(n, seed, field)
        images = [section.ML[i][j] for i, j in variable_positions(n, Flavor.GENERIC)]
        ideal = restrict(inst, images)
        x0 = Polynomial.variable(0, SECTION_VARS, field)
        multiplier = x0 * x0
        attempts = section.attempts
    else:

        def draw(rng: np.random.Generator) -> tuple[Ideal, Polynomial]:
            forms = random_linear_forms(rng, inst.num_vars, SECTION_VARS, field)
            candidate = restrict(inst, forms)
            g = random_form(rng, SECTION_VARS, 2, field)
            s, _ = dim_deg(candidate)
            if s != -1:
                raise UncertifiedSample({"projDim": s})
            return candidate, g

        (ideal, multiplier), attempts = certified_sample(draw, seed, f"Artinian section n={n}")

    hf = hilbert_function(ideal, n - 1).dims()
    expected = comb(n, 3)
    rank = multiplication_rank(ideal, multiplier, n - 3)
    free_dims = [comb(t + SECTION_VARS - 1, SECTION_VARS - 1) for t in range(n - 1)]
    low_degrees_free = hf[: n - 1] == free_dims
    check = LefschetzCheck(
        n=n,
        choice=choice,
        seed=seed,
        multiplier=str(multiplier),
        hf=hf,
        dim_from=hf[n - 3],
        dim_to=hf[n - 1],
        expected_dim=expected,
        rank=rank,
        iso=hf[n - 3] == expected and hf[n - 1] == expected and rank == expected,
        low_degrees_free=low_degrees_free,
        attempts=attempts,
    )
    logger.info(
        "lefschetz %s n=%d: %d -> %d, rank %d", choice.value, n, check.dim_from, check.dim_to, rank
    )
    return check


def lefschetz_sweep(
    inst: DetInstance, seed: int | None = None, count: int = SWEEP_SEEDS
) -> LefschetzSweep:
    """Random Lefschetz checks at seeds seed, seed+1, ..., seed+count-1.

    Passes when at most one seed fails to give an isomorphism (at least nine
    of ten by default).
    """
    base = get_settings().seed if seed is None else seed
    seeds = [base + k for k in range(count)]
    results = [artinian_lefschetz_check(inst, SectionChoice.RANDOM, s) for s in seeds]
    iso_count = sum(r.iso for r in results)
    required = max(count - 1, 1)
    return LefschetzSweep(
        n=inst.n,
        seeds=seeds,
        iso_count=iso_count,
        required=required,
        results=results,
        passed=iso_count >= required,
    )


def restriction_vanishing(inst: DetInstance, seed: int | None = None) -> RestrictionCheck:
    """Vanishing of the cohomology of T_D restricted to a general linear section.

    Symmetric: restrict to a random symmetric matrix of linear forms in
    three variables; the Artinian reduction must vanish from degree n-1 on.
    Generic: the check is the random Lefschetz isomorphism.

    Args:
        inst: A determinantal instance.
        seed: Sampling seed (default ``Settings.seed``).

    Returns:
        The Hilbert function, the first vanishing degree and the verdict.

    Raises:
        GenericityError: If no Artinian plane section is found.
    """
    seed = get_settings().seed if seed is None else seed
    n = inst.n
    if inst.flavor == Flavor.GENERIC:
        lefschetz = artinian_lefschetz_check(inst, SectionChoice.RANDOM, seed)
        return RestrictionCheck(
            n=n,
            flavor=inst.flavor,
            seed=seed,
            hf=lefschetz.hf,
            lefschetz=lefschetz,
            passed=lefschetz.iso,
            attempts=lefschetz.attempts,
        )

    def draw(rng: np.random.Generator) -> Ideal:
        forms = random_linear_forms(rng, inst.num_vars, PLANE_VARS, inst.field)
        candidate = restrict(inst, forms)
        s, _ = dim_deg(candidate)
        if s != -1:
            raise UncertifiedSample({"projDim": s})
        return candidate

    ideal, attempts = certified_sample(draw, seed, f"plane section n={n}")
    hf = hilbert_function(ideal, n).dims()
    vanishes_from = next((t for t, v in enumerate(hf) if v == 0), None)
    passed = vanishes_from is not None and vanishes_from <= n - 1
    logger.info("restriction_vanishing symmetric n=%d: hf=%s", n, hf)
    return RestrictionCheck(
        n=n,
        flavor=inst.flavor,
        seed=seed,
        hf=hf,
        vanishes_from=vanishes_from,
        passed=passed,
        attempts=attempts,
    )
