"""Exhaustive (semi)stability scan of the grading quiver of E_n.

The scan walks every order ideal of the support by its column-height
profile, keeping running totals so each subrep costs O(1), and records the
smallest King slope over proper nonempty subreps. The profile space is
partitioned by first-column height; partitions can run in a process pool
and are reduced deterministically (smallest mu, then lexicographically
smallest profile).

Besides the exact support data, two fixed-constant evaluations are scanned:
c1 = -2n with rank n^2 - 1 over the support of E_n, and the same constants
over the support of E_(n-1), whose rank is n^2 - 1. They are reported next
to the exact verdict; disagreements are recorded, not resolved.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import NamedTuple

from pydantic import Field
from tqdm import tqdm

from src.config import get_settings
from src.errors import HypothesisError
from src.quiver.support import (
    Profile,
    SlopeConstants,
    Subrep,
    Vertex,
    boundary,
    build_support,
    check_scale,
    count_order_ideals,
    iter_profiles,
)
from src.report import ReportModel

logger = logging.getLogger(__name__)


class SlopeConvention(str, Enum):
    """Which (support, c1, rank) data the slope is measured against."""

    EXACT = "exact"
    FIXED_CONSTANTS = "fixed-constants"
    FIXED_CONSTANTS_SHIFTED = "fixed-constants-shifted"


class PartitionResult(NamedTuple):
    """Scan result of one first-column height."""

    count: int
    min_mu: int | None
    argmin: Profile | None


class ScanReport(ReportModel):
    """Minimum King slope over the proper nonempty subreps.

    Attributes:
        n: Bundle index.
        convention: Slope data used.
        support_index: Index of the support that was scanned.
        constants: (c1, rank) of E used in mu.
        count: Order ideals scanned, empty and full included.
        expected_count: Independent order-ideal count.
        min_mu: Smallest slope over proper nonempty subreps.
        argmin_profile: Column heights of the minimiser.
        argmin_boundary: Maximal vertices of the minimiser.
        strictly_stable: min_mu > 0.
    """

    n: int
    convention: SlopeConvention
    support_index: int
    constants: SlopeConstants
    count: int
    expected_count: int
    min_mu: int
    argmin_profile: list[int]
    argmin_boundary: list[Vertex]
    strictly_stable: bool


class QuiverReport(ReportModel):
    """Exact-support verdict plus the fixed-constant evaluations.

    Attributes:
        n: Bundle index.
        count: Order ideals scanned.
        min_mu: Exact-support minimum slope.
        argmin_boundary: Boundary vertices of the exact minimiser.
        strictly_stable: Exact-support verdict.
        count_matches: Scan count equals the independent counter.
        secondary: Fixed-constant scans.
        conventions_agree: Every secondary verdict equals the exact one.
        passed: Exact support is strictly stable and the count matches.
    """

    n: int
    count: int
    min_mu: int
    argmin_boundary: list[Vertex]
    strictly_stable: bool
    count_matches: bool
    secondary: list[ScanReport] = Field(default_factory=list)
    conventions_agree: bool
    passed: bool = Field(alias="pass")


def slope_constants(n: int, convention: SlopeConvention) -> tuple[int, SlopeConstants]:
    """Support index and (c1, rank) for a convention.

    Raises:
        HypothesisError: For the shifted convention at n = 1 (empty support).
    """
    if convention == SlopeConvention.EXACT:
        support = build_support(n)
        return n, SlopeConstants(c1=support.c1, rank=support.rank)
    fixed = SlopeConstants(c1=-2 * n, rank=n * n - 1)
    if convention == SlopeConvention.FIXED_CONSTANTS:
        return n, fixed
    if n < 2:
        raise HypothesisError("the shifted support needs n >= 2")
    return n - 1, fixed


def _column_sums(m: int) -> list[list[int]]:
    """sums[k][h]: sum of a+b over the lowest h vertices of column k."""
    sums = []
    for k in range(m + 1):
        a = -m + 2 * k
        sums.append([h * (a - m) + h * (h - 1) for h in range(m + 2)])
    return sums


def _scan_partition(m: int, c1_e: int, rank_e: int, first: int) -> PartitionResult:
    """Scan the profiles of support m whose first column has the given height."""
    sums = _column_sums(m)
    total = (m + 1) ** 2 - 1
    count = 0
    best: tuple[int, Profile] | None = None
    for heights in iter_profiles(m, first):
        count += 1
        size = sum(heights)
        if size == 0 or size == total:
            continue
        c1 = sum(sums[k][h] for k, h in enumerate(heights))
        mu = c1_e * size - rank_e * c1
        if best is None or (mu, heights) < best:
            best = (mu, heights)
    if best is None:
        return PartitionResult(count, None, None)
    return PartitionResult(count, best[0], best[1])


def _reduce(results: list[PartitionResult]) -> PartitionResult:
    count = sum(r.count for r in results)
    candidates = [(r.min_mu, r.argmin) for r in results if r.min_mu is not None]
    if not candidates:
        return PartitionResult(count, None, None)
    mu, profile = min(candidates)
    return PartitionResult(count, mu, profile)


def semistability_scan(
    n: int,
    convention: SlopeConvention = SlopeConvention.EXACT,
    workers: int | None = None,
    progress: bool = False,
) -> ScanReport:
    """Exhaustive minimum of mu_E over proper nonempty subreps.

    Args:
        n: Bundle index, 1 <= n <= ``Settings.quiver_max_n``.
        convention: Slope data (exact support by default).
        workers: Process-pool size (default ``Settings.workers``); 1 scans
            in-process.
        progress: Show a tqdm bar over the partitions on stderr.

    Returns:
        Count, minimum slope, minimiser and the stability verdict.

    Raises:
        HypothesisError: If n < 1, or n = 1 with the shifted convention.
        ScaleError: If n exceeds the enumeration limit.

    Examples:
        >>> report = semistability_scan(1)
        >>> report.min_mu, report.argmin_boundary, report.strictly_stable
        (2, [(1, -1)], True)
    """
    if n < 1:
        raise HypothesisError(f"quiver index must be at least 1, got {n}")
    check_scale(n)
    workers = get_settings().workers if workers is None else workers
    m, constants = slope_constants(n, convention)
    partitions = list(range(m + 2))
    logger.info(
        "semistability_scan n=%d %s: %d partitions, %d workers",
        n,
        convention.value,
        len(partitions),
        workers,
    )

    bar = tqdm(total=len(partitions), desc=f"quiver n={n}", disable=not progress, leave=False)
    results: list[PartitionResult] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_scan_partition, m, constants.c1, constants.rank, first)
                for first in partitions
            ]
            for future in futures:
                results.append(future.result())
                bar.update(1)
    else:
        for first in partitions:
            results.append(_scan_partition(m, constants.c1, constants.rank, first))
            bar.update(1)
    bar.close()

    reduced = _reduce(results)
    if reduced.min_mu is None or reduced.argmin is None:
        raise HypothesisError(f"support of index {m} has no proper nonempty subrep")
    argmin = Subrep.from_profile(m, reduced.argmin)
    report = ScanReport(
        n=n,
        convention=convention,
        support_index=m,
        constants=constants,
        count=reduced.count,
        expected_count=count_order_ideals(m),
        min_mu=reduced.min_mu,
        argmin_profile=list(reduced.argmin),
        argmin_boundary=boundary(argmin),
        strictly_stable=reduced.min_mu > 0,
    )
    logger.info(
        "semistability_scan n=%d %s: count=%d minMu=%d",
        n,
        convention.value,
        report.count,
        report.min_mu,
    )
    return report


def quiver_report(n: int, workers: int | None = None, progress: bool = False) -> QuiverReport:
    """Exact-support scan with the fixed-constant scans alongside.

    The verdict is the exact-support one; the shifted scan is skipped at n = 1.
    """
    exact = semistability_scan(n, SlopeConvention.EXACT, workers, progress)
    secondary = [semistability_scan(n, SlopeConvention.FIXED_CONSTANTS, workers, progress)]
    if n >= 2:
        secondary.append(
            semistability_scan(n, SlopeConvention.FIXED_CONSTANTS_SHIFTED, workers, progress)
        )
    agree = all(s.strictly_stable == exact.strictly_stable for s in secondary)
    if not agree:
        logger.warning(
            "n=%d: fixed-constant verdicts %s differ from the exact-support verdict %s",
            n,
            [s.strictly_stable for s in secondary],
            exact.strictly_stable,
        )
    count_matches = exact.count == exact.expected_count
    return QuiverReport(
        n=n,
        count=exact.count,
        min_mu=exact.min_mu,
        argmin_boundary=exact.argmin_boundary,
        strictly_stable=exact.strictly_stable,
        count_matches=count_matches,
        secondary=secondary,
        conventions_agree=agree,
        passed=exact.strictly_stable and count_matches,
    )
