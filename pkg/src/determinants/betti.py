"""Betti tables of logarithmic tangent sheaves of determinantal hypersurfaces.

T_D is the sheafified module of syzygies of the partials, so its minimal
resolution is the tail of the resolution of R/J from F_2 on. Two twist
conventions are recorded:

- module: twists of the syzygy module of the partials (F_2 -> Syz(J));
- sheaf: the partials have degree d-1, so T_D carries the module twists
  shifted by d-1 = n-1 (its generators sit in degree 1).

Expected tables are the classical resolutions of submaximal minors:
Gulliksen-Negard for the generic matrix and Goto-Jozefiak-Tachibana for the
symmetric one.
"""

import logging
from math import comb

from src.determinants.build import DetInstance, Flavor
from src.errors import ScaleError
from src.groebner.resolution import BettiTable, graded_prefix, resolve
from src.report import ReportModel

logger = logging.getLogger(__name__)

# Largest n whose full resolution is computed.
MAX_RESOLUTION_N = 3


class ResolutionCheck(ReportModel):
    """Computed against expected Betti tables of T_D.

    Attributes:
        n: Matrix size.
        flavor: Generic or symmetric.
        computed: Module-convention table from the resolution engine.
        expected: Module-convention table in closed form.
        sheaf_computed: ``computed`` in the sheaf convention.
        sheaf_expected: ``expected`` in the sheaf convention.
        match: Exact equality of the tables.
        cut: Linear forms cut before resolving.
    """

    n: int
    flavor: Flavor
    computed: BettiTable
    expected: BettiTable
    sheaf_computed: BettiTable
    sheaf_expected: BettiTable
    match: bool
    cut: int


class GradedPrefixCheck(ReportModel):
    """First two Betti ranks of T_D read from graded kernels.

    Attributes:
        n: Matrix size.
        generators: Minimal syzygies of the partials in degree n.
        relations: Minimal relations among them in degree n+1.
        expected_generators: 2(n^2 - 1).
        expected_relations: n^2.
        match: Both counts agree.
    """

    n: int
    generators: int
    relations: int
    expected_generators: int
    expected_relations: int
    match: bool


def expected_table(n: int, flavor: Flavor) -> BettiTable:
    """Closed-form Betti table of the syzygy module of the partials.

    Generic: 2(n^2-1) R(-n), n^2 R(-n-1), R(-2n). Symmetric: (n^2-1) R(-n),
    C(n,2) R(-n-1).

    Examples:
        >>> expected_table(2, Flavor.GENERIC).counts()
        {(0, -2): 6, (1, -3): 4, (2, -4): 1}
    """
    if flavor == Flavor.GENERIC:
        counts = {(0, -n): 2 * (n * n - 1), (1, -n - 1): n * n, (2, -2 * n): 1}
    else:
        counts = {(0, -n): n * n - 1, (1, -n - 1): comb(n, 2)}
    return BettiTable.from_counts(counts)


def sheaf_table(table: BettiTable, n: int) -> BettiTable:
    """Shift module twists by d - 1 = n - 1."""
    return table.reindexed(0, n - 1)


def resolution_check(inst: DetInstance) -> ResolutionCheck:
    """Resolve the partials of det M and compare with the classical table.

    Args:
        inst: A determinantal instance with n <= 3.

    Returns:
        Both tables in both twist conventions and whether they agree.

    Raises:
        ScaleError: If n > 3.
        DegreeBoundExceeded: If the engine cannot certify its table.
    """
    if inst.n > MAX_RESOLUTION_N:
        raise ScaleError(
            f"full resolution for n={inst.n} is beyond desk scale; "
            f"use graded_prefix_check (n <= {MAX_RESOLUTION_N} resolved fully)"
        )
    resolution = resolve(inst.partials)
    computed = resolution.betti.reindexed(2)
    expected = expected_table(inst.n, inst.flavor)
    match = computed == expected
    logger.info(
        "resolution_check %s n=%d: computed %s, match=%s",
        inst.flavor.value,
        inst.n,
        computed.counts(),
        match,
    )
    return ResolutionCheck(
        n=inst.n,
        flavor=inst.flavor,
        computed=computed,
        expected=expected,
        sheaf_computed=sheaf_table(computed, inst.n),
        sheaf_expected=sheaf_table(expected, inst.n),
        match=match,
        cut=resolution.cut,
    )


def graded_prefix_check(inst: DetInstance) -> GradedPrefixCheck:
    """Count the first two steps of the generic resolution without resolving fully.

    Syzygies of the partials are generated in degree n and their relations
    in degree n+1, so kernels up to those degrees give the first two ranks
    of T_D. Used for n = 4, where the full resolution is out of reach.

    Raises:
        ValueError: For symmetric instances.
    """
    if inst.flavor != Flavor.GENERIC:
        raise ValueError("the graded prefix check is for generic determinants")
    n = inst.n
    prefix = graded_prefix(inst.partials, {2: n, 3: n + 1})
    generators = prefix.betti.rank(2, -n)
    relations = prefix.betti.rank(3, -n - 1)
    expected_generators = 2 * (n * n - 1)
    expected_relations = n * n
    return GradedPrefixCheck(
        n=n,
        generators=generators,
        relations=relations,
        expected_generators=expected_generators,
        expected_relations=expected_relations,
        match=(generators, relations) == (expected_generators, expected_relations),
    )
