"""Line-bundle cohomology on T = P(O(1) + O) over P^2 and Euler characteristics.

With h the tautological class and l the pullback of a line, pushing
O_T(i*h + j*l) down to P^2 gives:

- i >= 0: the direct image is the sum of O(j+u) for 0 <= u <= i;
- i = -1: everything vanishes;
- i <= -2: only R^1 survives, the sum of O(j+u) for i+1 <= u <= -1,
  so h^k on T is a sum of h^(k-1) on P^2.

The surface S is cut out in T by the sequence

    0 -> O_T((1-n)l - h) + O_T(l - h) -> O_T(l) + O_T -> O_S(h) -> 0,

so its twisted Euler characteristics are alternating sums over T.
"""

import logging
from math import comb

from pydantic import Field

from src.report import ReportModel

logger = logging.getLogger(__name__)

T_DIM = 3


class CohomVector(ReportModel):
    """Dimensions h^k for 0 <= k <= 3.

    Attributes:
        i: Coefficient of h.
        j: Coefficient of l.
        dims: h^0 .. h^3.
        chi: Alternating sum.
        single_degree: At most one h^k is nonzero.
    """

    i: int
    j: int
    dims: list[int] = Field(min_length=T_DIM + 1, max_length=T_DIM + 1)
    chi: int
    single_degree: bool


def p2_cohomology(m: int) -> tuple[int, int, int]:
    """(h^0, h^1, h^2) of O(m) on P^2.

    Examples:
        >>> p2_cohomology(1), p2_cohomology(-3), p2_cohomology(-4)
        ((3, 0, 0), (0, 0, 1), (0, 0, 3))
    """
    h0 = comb(m + 2, 2) if m >= 0 else 0
    h2 = comb(-m - 1, 2) if m <= -3 else 0
    return h0, 0, h2


def _pushforward_twists(i: int, j: int) -> tuple[list[int], int]:
    """Twists m of the P^2 summands and the cohomological shift (0 or 1)."""
    if i >= 0:
        return [j + u for u in range(i + 1)], 0
    if i == -1:
        return [], 0
    return [j + u for u in range(i + 1, 0)], 1


def cohom_t(i: int, j: int) -> CohomVector:
    """Cohomology of O_T(i*h + j*l).

    Examples:
        >>> cohom_t(1, 0).dims
        [4, 0, 0, 0]
        >>> cohom_t(-1, 5).dims
        [0, 0, 0, 0]
    """
    twists, shift = _pushforward_twists(i, j)
    dims = [0] * (T_DIM + 1)
    signs = set()
    for m in twists:
        for k, h in enumerate(p2_cohomology(m)):
            dims[k + shift] += h
        if m >= 0:
            signs.add(1)
        elif m <= -3:
            signs.add(-1)
    chi = sum((-1) ** k * h for k, h in enumerate(dims))
    single_degree = sum(1 for h in dims if h) <= 1
    if len(signs) <= 1 and not single_degree:
        logger.warning("O_T(%d h + %d l): summands of one sign but cohomology %s", i, j, dims)
    return CohomVector(i=i, j=j, dims=dims, chi=chi, single_degree=single_degree)


def euler_char_t(i: int, j: int) -> int:
    """chi(O_T(i*h + j*l))."""
    return cohom_t(i, j).chi


class EulerSReport(ReportModel):
    """chi(O_S(h + i*h + j*l)) with the four T-terms of the twisted sequence."""

    n: int
    i: int
    j: int
    middle: list[int]
    left: list[int]
    chi: int


def euler_s_h_twist(n: int, i: int, j: int) -> int:
    """chi(O_S((1+i)*h + j*l)) for the surface of degree-n data.

    Examples:
        >>> euler_s_h_twist(2, -1, 0), euler_s_h_twist(3, 0, 0)
        (1, 4)
    """
    return euler_s_report(n, i, j).chi


def euler_s_report(n: int, i: int, j: int) -> EulerSReport:
    """The alternating sum behind ``euler_s_h_twist``, term by term."""
    middle = [euler_char_t(i, j + 1), euler_char_t(i, j)]
    left = [euler_char_t(i - 1, j + 1 - n), euler_char_t(i - 1, j + 1)]
    chi = sum(middle) - sum(left)
    logger.debug("chi_S n=%d (%d, %d): %s - %s = %d", n, i, j, middle, left, chi)
    return EulerSReport(n=n, i=i, j=j, middle=middle, left=left, chi=chi)
