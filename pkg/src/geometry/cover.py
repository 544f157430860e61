"""Integer classes (x, y) of a rank-one sheaf on the double cover.

The class x*l + y*h must satisfy x*C(n,2) + y*n = C(n,2) with y >= 0 and
y >= (1-n)*x. Then y = (n-1)(1-x)/2, and the two inequalities confine x to
{-1, 0, 1}. The x = 0 class is integral only for odd n; it is the locally
free class and is reported, flagged, next to the two nontrivial ones.
"""

import logging
from fractions import Fraction
from math import comb

from pydantic import Field

from src.errors import HypothesisError
from src.report import ReportModel

logger = logging.getLogger(__name__)

X_RANGE = (-1, 0, 1)


class CoverCandidate(ReportModel):
    """One admissible x with its y.

    Attributes:
        x: Coefficient of l.
        y: (n-1)(1-x)/2 when integral, else None.
        parity_admissible: (n-1)(1-x) is even.
        nontrivial: x != 0.
        locally_free_class: x == 0.
    """

    x: int
    y: int | None
    parity_admissible: bool
    nontrivial: bool
    locally_free_class: bool


class CoverSolutionSet(ReportModel):
    """Every integer solution, and the verdict on the nontrivial ones.

    Attributes:
        n: Degree, at least 3.
        candidates: Each x in the bounded range, integral or not.
        solutions: The integral candidates.
        nontrivial: (x, y) with x != 0.
        passed: The nontrivial solutions are exactly (1, 0) and (-1, n-1).
    """

    n: int
    candidates: list[CoverCandidate]
    solutions: list[CoverCandidate]
    nontrivial: list[tuple[int, int]]
    passed: bool = Field(alias="pass")


def _satisfies(n: int, x: int, y: int) -> bool:
    return y >= 0 and y >= (1 - n) * x and x * comb(n, 2) + y * n == comb(n, 2)


def cover_solutions(n: int) -> CoverSolutionSet:
    """All integer solutions of the class system for degree n.

    Raises:
        HypothesisError: If n < 3.

    Examples:
        >>> cover_solutions(4).nontrivial
        [(-1, 3), (1, 0)]
        >>> [c.x for c in cover_solutions(3).solutions]
        [-1, 0, 1]
    """
    if n < 3:
        raise HypothesisError(f"the cover system needs n >= 3, got {n}")
    candidates = []
    for x in X_RANGE:
        y = Fraction((n - 1) * (1 - x), 2)
        integral = y.denominator == 1
        if integral and not _satisfies(n, x, int(y)):
            raise AssertionError(f"({x}, {y}) fails the system for n={n}")
        candidates.append(
            CoverCandidate(
                x=x,
                y=int(y) if integral else None,
                parity_admissible=integral,
                nontrivial=x != 0,
                locally_free_class=x == 0,
            )
        )
    solutions = [c for c in candidates if c.y is not None]
    nontrivial = [(c.x, c.y) for c in solutions if c.nontrivial and c.y is not None]
    passed = nontrivial == [(-1, n - 1), (1, 0)]
    if not passed:
        logger.warning("n=%d: nontrivial cover classes %s", n, nontrivial)
    return CoverSolutionSet(
        n=n,
        candidates=candidates,
        solutions=solutions,
        nontrivial=nontrivial,
        passed=passed,
    )


def bounded_range_is_exhaustive(n: int, radius: int) -> bool:
    """Every solution with |x| <= radius already lies in the bounded range."""
    for x in range(-radius, radius + 1):
        numerator = (n - 1) * (1 - x)
        if numerator % 2 == 0 and _satisfies(n, x, numerator // 2) and x not in X_RANGE:
            return False
    return True
