"""Equivariant support of the principal-parts bundle on P^1 x P^1.

The support of E_n is the grid of weights (-n+2k, -n+2t), 0 <= k, t <= n,
with the top corner (n, n) removed. Arrows lower one coordinate by 2.
Subrepresentations are supported on order ideals of this poset, which are
encoded by per-column height profiles: column k holds the weights with
a = -n+2k, and a profile is a nonincreasing sequence of column heights.
"""

import logging
from collections.abc import Iterable, Iterator
from functools import lru_cache
from itertools import product

from pydantic import ConfigDict, field_serializer, model_validator

from src.config import get_settings
from src.errors import HypothesisError, ScaleError
from src.report import ReportModel

logger = logging.getLogger(__name__)

Vertex = tuple[int, int]
Profile = tuple[int, ...]


class QuiverSupport(ReportModel):
    """Vertices of the grading quiver of E_n.

    Attributes:
        n: Index of the bundle, at least 1.
        vertices: Weights (a, b), sorted.
        vertex_rank: Rank of every V_lambda (1 for the principal-parts bundle).
    """

    model_config = ConfigDict(frozen=True)

    n: int
    vertices: tuple[Vertex, ...]
    vertex_rank: int = 1

    @property
    def c1(self) -> int:
        """First Chern class sum over all vertices, -2n."""
        return self.vertex_rank * sum(a + b for a, b in self.vertices)

    @property
    def rank(self) -> int:
        """(n+1)^2 - 1."""
        return self.vertex_rank * len(self.vertices)

    def weight(self, k: int, t: int) -> Vertex:
        """The vertex in column k, row t."""
        return (-self.n + 2 * k, -self.n + 2 * t)

    def is_vertex(self, v: Vertex) -> bool:
        """Whether v is a vertex."""
        return v in self._vertex_set()

    def arrows(self) -> list[tuple[Vertex, Vertex]]:
        """Arrows (a, b) -> (a-2, b) and (a, b) -> (a, b-2) between vertices."""
        vertex_set = self._vertex_set()
        out = []
        for a, b in self.vertices:
            for target in ((a - 2, b), (a, b - 2)):
                if target in vertex_set:
                    out.append(((a, b), target))
        return out

    def _vertex_set(self) -> frozenset[Vertex]:
        return _vertex_set(self.n)


@lru_cache(maxsize=32)
def _vertex_set(n: int) -> frozenset[Vertex]:
    return frozenset(build_support(n).vertices)


@lru_cache(maxsize=32)
def build_support(n: int) -> QuiverSupport:
    """The support of E_n.

    Args:
        n: Index, at least 1.

    Returns:
        (n+1)^2 - 1 vertices with c1 = -2n.

    Raises:
        HypothesisError: If n < 1.

    Examples:
        >>> q = build_support(1)
        >>> q.vertices, q.c1, q.rank
        (((-1, -1), (-1, 1), (1, -1)), -2, 3)
    """
    if n < 1:
        raise HypothesisError(f"quiver index must be at least 1, got {n}")
    vertices = sorted(
        (-n + 2 * k, -n + 2 * t) for k in range(n + 1) for t in range(n + 1) if (k, t) != (n, n)
    )
    return QuiverSupport(n=n, vertices=tuple(vertices))


def closure_violation(
    support: QuiverSupport, members: Iterable[Vertex]
) -> tuple[Vertex, Vertex] | None:
    """First (member, missing vertex below it) pair, or None if downward closed.

    Checking the two covering arrows of every member suffices.
    """
    member_set = set(members)
    for a, b in sorted(member_set):
        for below in ((a - 2, b), (a, b - 2)):
            if support.is_vertex(below) and below not in member_set:
                return (a, b), below
    return None


class Subrep(ReportModel):
    """Support of a subrepresentation: a downward-closed vertex set.

    Attributes:
        n: Index of the ambient support.
        members: The vertices.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    members: frozenset[Vertex]

    @model_validator(mode="after")
    def _check_closed(self) -> "Subrep":
        support = build_support(self.n)
        for v in self.members:
            if not support.is_vertex(v):
                raise ValueError(f"{v} is not a vertex of the support for n={self.n}")
        violation = closure_violation(support, self.members)
        if violation is not None:
            member, below = violation
            raise ValueError(f"not downward closed: {member} is a member but {below} is not")
        return self

    @field_serializer("members")
    def _serialize_members(self, members: frozenset[Vertex]) -> list[list[int]]:
        return [list(v) for v in sorted(members)]

    @property
    def support(self) -> QuiverSupport:
        """The ambient support."""
        return build_support(self.n)

    def profile(self) -> Profile:
        """Column heights, nonincreasing."""
        heights = [0] * (self.n + 1)
        for a, _ in self.members:
            heights[(a + self.n) // 2] += 1
        return tuple(heights)

    @classmethod
    def from_profile(cls, n: int, heights: Profile) -> "Subrep":
        """The order ideal with the given column heights (trusted input)."""
        support = build_support(n)
        members = frozenset(
            support.weight(k, t) for k, h in enumerate(heights) for t in range(h)
        )
        return cls.model_construct(n=n, members=members)

    def reflected(self) -> "Subrep":
        """Image under (a, b) -> (b, a)."""
        return Subrep(n=self.n, members=frozenset((b, a) for a, b in self.members))


class SlopeRecord(ReportModel):
    """c1, rank and King slope mu_E of a subrepresentation."""

    c1: int
    rk: int
    mu: int


class SlopeConstants(ReportModel):
    """The (c1, rank) of E that mu_E is measured against."""

    c1: int
    rank: int


def king_slope(s: Subrep, constants: SlopeConstants | None = None) -> SlopeRecord:
    """mu_E(E') = c1(E) * rk(E') - rk(E) * c1(E').

    Args:
        s: A subrepresentation support.
        constants: (c1, rank) of E; defaults to the exact data of the
            ambient support.

    Returns:
        c1(E'), rk(E') and the slope.

    Examples:
        >>> king_slope(Subrep(n=3, members=frozenset({(-3, -3)}))).mu
        84
    """
    support = s.support
    if constants is None:
        constants = SlopeConstants(c1=support.c1, rank=support.rank)
    c1 = support.vertex_rank * sum(a + b for a, b in s.members)
    rk = support.vertex_rank * len(s.members)
    return SlopeRecord(c1=c1, rk=rk, mu=constants.c1 * rk - constants.rank * c1)


def boundary(s: Subrep) -> list[Vertex]:
    """Maximal vertices of the subrep, sorted."""
    members = s.members
    return sorted(
        (a, b) for a, b in members if (a + 2, b) not in members and (a, b + 2) not in members
    )


def subrep_from_boundary(n: int, vertices: Iterable[Vertex]) -> Subrep:
    """Downward closure of the given vertices.

    Raises:
        HypothesisError: If a vertex is not in the support.
    """
    support = build_support(n)
    tops = list(vertices)
    for v in tops:
        if not support.is_vertex(v):
            raise HypothesisError(f"{v} is not a vertex of the support for n={n}")
    members = frozenset(
        (a, b) for a, b in support.vertices if any(a <= x and b <= y for x, y in tops)
    )
    return Subrep(n=n, members=members)


def iter_profiles(n: int, first: int | None = None) -> Iterator[Profile]:
    """Nonincreasing column-height profiles in lexicographic order.

    Args:
        n: Support index.
        first: Restrict to profiles whose first column has this height.
    """
    caps = [n + 1] * n + [n]
    heights = [0] * (n + 1)

    def fill(k: int, bound: int) -> Iterator[Profile]:
        if k == n + 1:
            yield tuple(heights)
            return
        for h in range(min(bound, caps[k]) + 1):
            heights[k] = h
            yield from fill(k + 1, h)

    if first is None:
        yield from fill(0, n + 1)
        return
    heights[0] = first
    yield from fill(1, first)


def check_scale(n: int) -> None:
    limit = get_settings().quiver_max_n
    if n > limit:
        raise ScaleError(f"quiver index n={n} exceeds the enumeration limit {limit}")


def enumerate_subreps(q: QuiverSupport) -> Iterator[Subrep]:
    """Every downward-closed vertex set exactly once, empty and full included.

    Raises:
        ScaleError: If n exceeds ``Settings.quiver_max_n``.
    """
    check_scale(q.n)
    for heights in iter_profiles(q.n):
        yield Subrep.from_profile(q.n, heights)


def count_order_ideals(n: int) -> int:
    """Number of order ideals of the grid-minus-top poset, C(2n+2, n+1) - 1.

    Counts nonincreasing height sequences by a memoised recursion on
    (column, height bound) without enumerating them.

    Examples:
        >>> count_order_ideals(1), count_order_ideals(10)
        (5, 705431)
    """

    @lru_cache(maxsize=None)
    def count(k: int, bound: int) -> int:
        if k == n + 1:
            return 1
        cap = n if k == n else n + 1
        return sum(count(k + 1, h) for h in range(min(bound, cap) + 1))

    return count(0, n + 1)


def powerset_order_ideals(q: QuiverSupport) -> list[frozenset[Vertex]]:
    """All downward-closed subsets by filtering the powerset (small n only)."""
    vertices = q.vertices
    ideals = []
    for mask in product((False, True), repeat=len(vertices)):
        subset = frozenset(v for v, keep in zip(vertices, mask, strict=True) if keep)
        if closure_violation(q, subset) is None:
            ideals.append(subset)
    return ideals
