"""Syzygies and minimal graded free resolutions.

The engine works degree by degree with exact linear algebra. For a graded
map d: F_i -> F_{i-1} between free modules, the kernel in degree D is the
null space of the matrix of d on (F_i)_D; its new minimal generators are the
kernel vectors independent of R_1 * ker(d)_{D-1}. Choosing minimal
generators at every step makes the resolution minimal: no differential has
a nonzero constant entry.

Before resolving, the ideal can be cut down by a seeded sequence of linear
forms. The cut is kept only when the K-polynomial is unchanged, which
certifies the forms as a regular sequence on R/I and leaves the Betti table
unchanged. When the cut reaches an Artinian algebra with socle degree s,
the generators of F_i lie in degrees <= s + i and the computation is exact.
Otherwise the engine caps degrees and certifies completeness by comparing
the alternating sum of the Betti table with the K-polynomial.
"""

import logging
from collections.abc import Callable, Mapping, Sequence
from itertools import combinations
from math import comb
from typing import Any

import numpy as np
from pydantic import ConfigDict, field_serializer, model_validator

from src.config import get_settings
from src.errors import DegreeBoundExceeded, NotHomogeneousError
from src.groebner.hilbert import graded_piece_vectors, hilbert_series_data, k_polynomial
from src.groebner.ideal import Ideal
from src.kernel.fields import FieldSpec
from src.kernel.polynomial import Exponents, Polynomial, evaluate_element, monomials_of_degree
from src.linalg.exact import ExactMatrix, complement_rows, left_kernel_basis, rows_from_sparse
from src.report import ReportModel

logger = logging.getLogger(__name__)

Terms = list[tuple[Exponents, Any]]


class BettiEntry(ReportModel):
    """Rank of the free summand R(twist) in homological position ``index``."""

    index: int
    twist: int
    rank: int


class BettiTable(ReportModel):
    """Ranks and twists of a graded free resolution.

    Twists are written as in R(twist), so a generator of degree a sits at
    twist -a.
    """

    entries: list[BettiEntry]

    @model_validator(mode="after")
    def _normalize(self) -> "BettiTable":
        for e in self.entries:
            if e.index < 0 or e.rank < 0:
                raise ValueError("Betti entries need index >= 0 and rank >= 0")
        self.entries = sorted(
            (e for e in self.entries if e.rank), key=lambda e: (e.index, -e.twist)
        )
        return self

    @classmethod
    def from_counts(cls, counts: Mapping[tuple[int, int], int]) -> "BettiTable":
        """Build from ``{(index, twist): rank}``."""
        return cls(
            entries=[BettiEntry(index=i, twist=t, rank=r) for (i, t), r in counts.items()]
        )

    def counts(self) -> dict[tuple[int, int], int]:
        """``{(index, twist): rank}`` for the nonzero entries."""
        return {(e.index, e.twist): e.rank for e in self.entries}

    def rank(self, index: int, twist: int) -> int:
        """Rank at one position (zero when absent)."""
        return self.counts().get((index, twist), 0)

    def ranks_at(self, index: int) -> dict[int, int]:
        """``{twist: rank}`` in one homological position."""
        return {e.twist: e.rank for e in self.entries if e.index == index}

    def total_ranks(self) -> list[int]:
        """Total rank per homological position."""
        length = self.length()
        return [sum(self.ranks_at(i).values()) for i in range(length + 1)]

    def length(self) -> int:
        """Largest homological index with a nonzero entry (-1 if empty)."""
        return max((e.index for e in self.entries), default=-1)

    def reindexed(self, start: int, twist_shift: int = 0) -> "BettiTable":
        """Drop positions below ``start``, renumber from 0 and shift twists."""
        return BettiTable(
            entries=[
                BettiEntry(index=e.index - start, twist=e.twist + twist_shift, rank=e.rank)
                for e in self.entries
                if e.index >= start
            ]
        )

    def k_polynomial(self) -> list[int]:
        """Alternating sum sum (-1)^i rank t^(-twist), ascending in t."""
        top = max((-e.twist for e in self.entries), default=-1)
        coefficients = [0] * (top + 1)
        for e in self.entries:
            coefficients[-e.twist] += (-1) ** e.index * e.rank
        return _trim(coefficients)


def _trim(coefficients: list[int]) -> list[int]:
    while coefficients and coefficients[-1] == 0:
        coefficients = coefficients[:-1]
    return coefficients


class GradedMap(ReportModel):
    """A matrix of polynomials between graded free modules.

    Row i corresponds to the target summand R(target_twists[i]), column j to
    the source summand R(source_twists[j]); entry (i, j) is zero or
    homogeneous of degree target_twists[i] - source_twists[j].
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    source_twists: list[int]
    target_twists: list[int]
    entries: list[list[Polynomial]]

    @model_validator(mode="after")
    def _check_degrees(self) -> "GradedMap":
        if len(self.entries) != len(self.target_twists):
            raise ValueError("one row per target summand is required")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.source_twists):
                raise ValueError("one column per source summand is required")
            for j, entry in enumerate(row):
                if entry.is_zero:
                    continue
                expected = self.target_twists[i] - self.source_twists[j]
                if not entry.is_homogeneous or entry.total_degree != expected:
                    raise ValueError(
                        f"entry ({i}, {j}) = {entry} is not homogeneous of degree {expected}"
                    )
        return self

    @field_serializer("entries")
    def _serialize_entries(self, entries: list[list[Polynomial]]) -> list[list[str]]:
        return [[str(e) for e in row] for row in entries]

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, columns)."""
        return len(self.target_twists), len(self.source_twists)

    def column(self, j: int) -> list[Polynomial]:
        """Column j as a vector of polynomials."""
        return [row[j] for row in self.entries]

    def compose(self, other: "GradedMap") -> list[list[Polynomial]]:
        """Matrix product self * other (apply ``other`` first)."""
        if self.source_twists != other.target_twists:
            raise ValueError("maps are not composable")
        rows, inner = self.shape
        cols = other.shape[1]
        result = []
        for i in range(rows):
            result_row = []
            for j in range(cols):
                acc = self.entries[i][0] * other.entries[0][j] if inner else None
                for k in range(1, inner):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                result_row.append(acc)
            result.append(result_row)
        return result

    def has_unit_entry(self) -> bool:
        """Whether some entry is a nonzero constant."""
        return any(not e.is_zero and e.total_degree == 0 for row in self.entries for e in row)

    def evaluate(self, point: Sequence[Any]) -> ExactMatrix:
        """Scalar matrix of the map at a point."""
        if not self.entries or not self.source_twists:
            raise ValueError("cannot evaluate an empty map")
        field = self.entries[0][0].field
        rows = [[field.to_python(evaluate_element(e, point)) for e in row] for row in self.entries]
        return ExactMatrix.from_rows(rows, field, len(self.source_twists))


class Resolution(ReportModel):
    """A minimal graded free resolution of R/I.

    Attributes:
        betti: The Betti table, with F_0 = R at index 0.
        maps: Differentials d_1, d_2, ... with d_i: F_i -> F_{i-1}.
        num_vars: Variables of the ring the maps live in (smaller than the
            original ring after a regular-sequence cut).
        cut: Number of linear forms cut.
        complete: Whether the table is certified to be the whole resolution.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    betti: BettiTable
    maps: list[GradedMap]
    num_vars: int
    cut: int = 0
    complete: bool


class _FreeMap:
    """Images of the basis of a free module F_i in F_{i-1}, as term lists."""

    def __init__(
        self,
        source_degrees: list[int],
        target_degrees: list[int],
        images: list[dict[int, Terms]],
        num_vars: int,
        field: FieldSpec,
    ) -> None:
        self.source_degrees = source_degrees
        self.target_degrees = target_degrees
        self.images = images
        self.num_vars = num_vars
        self.field = field

    def source_basis(self, degree: int) -> list[tuple[int, Exponents]]:
        return [
            (j, m)
            for j, a in enumerate(self.source_degrees)
            for m in monomials_of_degree(self.num_vars, degree - a)
        ]

    def target_index(self, degree: int) -> dict[tuple[int, Exponents], int]:
        basis = [
            (k, m)
            for k, b in enumerate(self.target_degrees)
            for m in monomials_of_degree(self.num_vars, degree - b)
        ]
        return {key: idx for idx, key in enumerate(basis)}

    def matrix_rows(self, degree: int) -> tuple[list[tuple[int, Exponents]], Any, int]:
        """Rows = images of the degree-``degree`` basis of the source."""
        basis = self.source_basis(degree)
        index = self.target_index(degree)
        vectors = []
        for j, m in basis:
            vec: dict[int, Any] = {}
            for k, terms in self.images[j].items():
                for exps, c in terms:
                    vec[index[(k, _shift(m, exps))]] = c
            vectors.append(vec)
        return basis, rows_from_sparse(vectors, len(index), self.field), len(index)

    def to_graded_map(self) -> GradedMap:
        ring_zero = Polynomial.zero(self.num_vars, self.field)
        entries = []
        for k in range(len(self.target_degrees)):
            row = []
            for j in range(len(self.source_degrees)):
                terms = self.images[j].get(k)
                row.append(
                    Polynomial.from_terms(dict(terms), self.num_vars, self.field)
                    if terms
                    else ring_zero
                )
            entries.append(row)
        return GradedMap(
            source_twists=[-a for a in self.source_degrees],
            target_twists=[-b for b in self.target_degrees],
            entries=entries,
        )


def _shift(m: Exponents, e: Exponents) -> Exponents:
    return tuple(a + b for a, b in zip(m, e, strict=True))


def _kernel_generators(fmap: _FreeMap, max_degree: int) -> tuple[list[int], list[dict[int, Terms]]]:
    """Minimal generators of ker(fmap) in degrees up to ``max_degree``."""
    field = fmap.field
    K = field.domain
    degrees: list[int] = []
    images: list[dict[int, Terms]] = []
    if not fmap.source_degrees:
        return degrees, images
    previous: list[list[Any]] = []
    previous_basis: list[tuple[int, Exponents]] = []
    for degree in range(min(fmap.source_degrees), max_degree + 1):
        basis, rows, ncols = fmap.matrix_rows(degree)
        kernel = left_kernel_basis(rows, ncols, field) if basis else []
        logger.debug(
            "kernel in degree %d: %d x %d matrix, dim %d", degree, len(basis), ncols, len(kernel)
        )
        if kernel:
            position = {key: idx for idx, key in enumerate(basis)}
            base_vectors = []
            for vec in previous:
                for var in range(fmap.num_vars):
                    bump = tuple(1 if k == var else 0 for k in range(fmap.num_vars))
                    base_vectors.append(
                        {
                            position[(j, _shift(m, bump))]: c
                            for (j, m), c in zip(previous_basis, vec, strict=True)
                            if c
                        }
                    )
            base = rows_from_sparse(base_vectors, len(basis), field)
            for pick in complement_rows(base, kernel, len(basis), field):
                generator: dict[int, Terms] = {}
                for (j, m), c in zip(basis, kernel[pick], strict=True):
                    if c:
                        generator.setdefault(j, []).append((m, field.element(c)))
                degrees.append(degree)
                images.append(generator)
        previous, previous_basis = kernel, basis
    return degrees, images


def _ideal_map(gens: Sequence[Polynomial]) -> _FreeMap:
    images = [{0: list(g.rep.iterterms())} for g in gens]
    return _FreeMap(
        [g.total_degree for g in gens], [0], images, gens[0].num_vars, gens[0].field
    )


def _check_generators(gens: Sequence[Polynomial]) -> None:
    if not gens:
        raise ValueError("at least one generator is required")
    for g in gens:
        if g.is_zero:
            raise ValueError("zero generators have no degree")
        if not g.is_homogeneous:
            raise NotHomogeneousError(f"generator {g} is not homogeneous")


def minimal_generators(gens: Sequence[Polynomial]) -> list[Polynomial]:
    """A minimal homogeneous generating set chosen greedily from ``gens``."""
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        return []
    _check_generators(nonzero)
    field = nonzero[0].field
    kept: list[Polynomial] = []
    for degree in sorted({g.total_degree for g in nonzero}):
        candidates = [g for g in nonzero if g.total_degree == degree]
        lower = [g for g in kept if g.total_degree < degree]
        index = {m: k for k, m in enumerate(monomials_of_degree(candidates[0].num_vars, degree))}
        base_vectors = graded_piece_vectors(lower, degree)[0] if lower else []
        candidate_vectors = [{index[m]: c for m, c in g.rep.iterterms()} for g in candidates]
        base = rows_from_sparse(base_vectors, len(index), field)
        picks = complement_rows(
            base, rows_from_sparse(candidate_vectors, len(index), field), len(index), field
        )
        kept.extend(candidates[p] for p in picks)
    return kept


def syzygy_degree_bound(gens: Sequence[Polynomial]) -> int:
    """Degree bound for the generators of the first syzygy module.

    Syzygies of a Gröbner basis are generated by the pairwise S-pair
    relations, in the degrees of the lcms of leading monomials; the
    relations expressing the original generators through the basis live in
    the generator degrees.
    """
    basis = Ideal(gens).groebner
    lcm_degrees = [
        sum(max(a, b) for a, b in zip(f.leading_monomial, g.leading_monomial, strict=True))
        for f, g in combinations(basis, 2)
    ]
    return max(lcm_degrees + [g.total_degree for g in gens])


def syzygies(gens: Sequence[Polynomial]) -> GradedMap:
    """Minimal generators of the first syzygy module of ``gens``.

    Args:
        gens: Nonzero homogeneous generators.

    Returns:
        A GradedMap with one row per generator (target twist -deg g_i) and one
        column per syzygy; the row vector of generators times the matrix is 0.

    Raises:
        NotHomogeneousError: If a generator is not homogeneous.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> QQ = FieldSpec.rationals()
        >>> m = syzygies(parse_polynomials(["x0", "x1"], 2, QQ))
        >>> m.source_twists, [str(e) for e in m.column(0)]
        ([-2], ['-x1', 'x0'])
    """
    _check_generators(gens)
    fmap = _ideal_map(gens)
    degrees, images = _kernel_generators(fmap, syzygy_degree_bound(gens))
    field = gens[0].field
    return _FreeMap(degrees, fmap.source_degrees, images, gens[0].num_vars, field).to_graded_map()


def _random_linear_form(rng: np.random.Generator, num_vars: int, field: FieldSpec) -> Polynomial:
    terms = {
        tuple(1 if k == i else 0 for k in range(num_vars)): field.random_element(rng)
        for i in range(num_vars)
    }
    return Polynomial.from_terms(terms, num_vars, field)


def regular_sequence_cut(
    gens: Sequence[Polynomial], seed: int | None = None
) -> tuple[list[Polynomial], int]:
    """Cut R/I by as many seeded linear forms as keep the K-polynomial.

    The last c variables are replaced by random linear forms in the first
    n - c, for c from the Krull dimension down. The first c that leaves the
    K-polynomial unchanged is used.

    Args:
        gens: Homogeneous generators of I.
        seed: Sampling seed (defaults to ``Settings.seed``).

    Returns:
        The images of the generators in k[x0..x{n-c-1}] and c (0 when no cut
        is certified).
    """
    num_vars = gens[0].num_vars
    field = gens[0].field
    ideal = Ideal(gens)
    target = k_polynomial(ideal)
    _, krull = hilbert_series_data(ideal)
    rng = np.random.default_rng(get_settings().seed if seed is None else seed)
    for c in range(min(krull, num_vars - 1), 0, -1):
        kept = num_vars - c
        images = [Polynomial.variable(k, kept, field) for k in range(kept)]
        images += [_random_linear_form(rng, kept, field) for _ in range(c)]
        cut_gens = [g.substitute(images) for g in gens]
        if any(not g.is_zero for g in cut_gens) and k_polynomial(Ideal(cut_gens)) == target:
            logger.debug("regular sequence of %d linear forms certified", c)
            return [g for g in cut_gens if not g.is_zero], c
        logger.debug("cut by %d linear forms changes the K-polynomial", c)
    return list(gens), 0


def _betti_from_steps(steps: list[list[int]]) -> BettiTable:
    counts: dict[tuple[int, int], int] = {(0, 0): 1}
    for i, degrees in enumerate(steps, start=1):
        for a in degrees:
            counts[(i, -a)] = counts.get((i, -a), 0) + 1
    return BettiTable.from_counts(counts)


def _resolve_steps(
    working: list[Polynomial], steps_limit: int, cap_for: Callable[[int], int]
) -> tuple[list[GradedMap], list[list[int]], bool]:
    """Differentials and generator degrees of F_1..F_steps_limit.

    The flag reports whether the resolution ended (a zero kernel, or the
    last step allowed by the syzygy theorem).
    """
    num_vars = working[0].num_vars
    field = working[0].field
    fmap = _ideal_map(working)
    maps = [fmap.to_graded_map()]
    steps = [fmap.source_degrees]
    terminated = False
    while len(steps) < steps_limit:
        index = len(steps) + 1
        degrees, images = _kernel_generators(fmap, cap_for(index))
        if not degrees:
            terminated = True
            break
        fmap = _FreeMap(degrees, fmap.source_degrees, images, num_vars, field)
        maps.append(fmap.to_graded_map())
        steps.append(degrees)
        logger.info("F_%d: %d generators in degrees %s", index, len(degrees), sorted(set(degrees)))
    if len(steps) == num_vars and not terminated:
        terminated = True
    return maps, steps, terminated


def graded_prefix(gens: Sequence[Polynomial], caps: Mapping[int, int]) -> Resolution:
    """The first steps of the minimal resolution, up to fixed degree caps.

    Only graded linear algebra is used: no Gröbner basis, no cut. F_i is
    computed for 2 <= i <= max(caps) with generators of degree at most
    ``caps[i]``; the result is flagged incomplete.

    Args:
        gens: Homogeneous generators of I.
        caps: ``{index: degree cap}`` for every index from 2 on.

    Returns:
        The truncated resolution in the ring of ``gens``.
    """
    if not caps:
        raise ValueError("at least one degree cap is required")
    working = minimal_generators(gens)
    if not working:
        raise ValueError("the zero ideal has the trivial resolution R")
    top = max(caps)
    fallback = max(caps.values())
    maps, steps, _ = _resolve_steps(working, top, lambda index: caps.get(index, fallback))
    return Resolution(
        betti=_betti_from_steps(steps),
        maps=maps,
        num_vars=working[0].num_vars,
        complete=False,
    )


def resolve(
    gens: Sequence[Polynomial],
    max_steps: int | None = None,
    max_degree: int | Mapping[int, int] | None = None,
    reduce: bool = True,
    seed: int | None = None,
) -> Resolution:
    """Minimal graded free resolution of R/I with its differentials.

    Args:
        gens: Homogeneous generators of I (zero and redundant ones allowed).
        max_steps: Last homological index computed (default: number of
            variables, enough by Hilbert's syzygy theorem).
        max_degree: Degree cap, either uniform or ``{index: cap}`` per
            homological index. Without it the engine uses the Artinian bound
            when available and ``2n + Settings.degree_slack`` otherwise.
        reduce: Cut by a certified regular sequence of linear forms first.
        seed: Seed for the linear forms.

    Returns:
        The resolution. Its maps live in the cut ring when ``reduce`` cut.

    Raises:
        NotHomogeneousError: If a generator is not homogeneous.
        DegreeBoundExceeded: If the computed table is not certified complete
            under the engine's own degree cap.
    """
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        raise ValueError("the zero ideal has the trivial resolution R")
    _check_generators(nonzero)
    original = Ideal(nonzero)
    target_k = k_polynomial(original)
    cut = 0
    working = nonzero
    if reduce:
        working, cut = regular_sequence_cut(nonzero, seed)
    working = minimal_generators(working)
    num_vars = working[0].num_vars
    steps_limit = num_vars if max_steps is None else max_steps

    h, krull = hilbert_series_data(Ideal(working))
    settings = get_settings()
    socle = max(len(h) - 1, 0)
    if max_degree is not None:
        caps = dict(max_degree) if isinstance(max_degree, Mapping) else None
        uniform = max_degree if isinstance(max_degree, int) else None
    elif krull <= 0:
        caps, uniform = None, None
        logger.debug("Artinian cut: socle degree %d", socle)
    else:
        caps, uniform = None, 2 * num_vars + settings.degree_slack

    def cap_for(index: int) -> int:
        if caps is not None:
            return caps.get(index, max(caps.values()))
        if uniform is not None:
            return uniform
        return socle + index

    maps, steps, terminated = _resolve_steps(working, steps_limit, cap_for)
    betti = _betti_from_steps(steps)
    complete = terminated and betti.k_polynomial() == _trim(list(target_k))
    if terminated and not complete and max_degree is None:
        raise DegreeBoundExceeded(
            "Betti table does not match the K-polynomial", cap_for(len(steps) + 1), len(steps)
        )
    return Resolution(betti=betti, maps=maps, num_vars=num_vars, cut=cut, complete=complete)


def minimal_free_resolution(gens: Sequence[Polynomial], max_steps: int) -> BettiTable:
    """Betti table of the minimal free resolution of R/(gens).

    Args:
        gens: Homogeneous generators.
        max_steps: Last homological index computed (at least 1).

    Returns:
        The Betti table, F_0 = R included.

    Raises:
        NotHomogeneousError: On non-homogeneous input.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> QQ = FieldSpec.rationals()
        >>> gens = parse_polynomials(["x0", "x1", "x2", "x3"], 4, QQ)
        >>> minimal_free_resolution(gens, 4).total_ranks()
        [1, 4, 6, 4, 1]
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    return resolve(gens, max_steps=max_steps).betti


def betti_hilbert_function(table: BettiTable, num_vars: int, t: int) -> int:
    """Hilbert function of the resolved module from its Betti table.

    The alternating sum of dim R(twist)_t over the table.
    """
    total = 0
    for e in table.entries:
        shifted = t + e.twist
        if shifted >= 0:
            total += (-1) ** e.index * e.rank * comb(shifted + num_vars - 1, num_vars - 1)
    return total
