"""The determinant suite: every computable check for one (n, flavor)."""

import logging
from collections.abc import Callable
from typing import Any

from pydantic import Field

from src.checks import CheckRecord, ErrorKind, run_check, summarize
from src.config import get_settings
from src.determinants.betti import (
    MAX_RESOLUTION_N,
    graded_prefix_check,
    resolution_check,
)
from src.determinants.build import (
    DetInstance,
    Flavor,
    build_determinant,
    partials_match_minors,
)
from src.determinants.fiber import fiber_rank_check
from src.determinants.lefschetz import (
    SectionChoice,
    artinian_lefschetz_check,
    lefschetz_sweep,
    restriction_vanishing,
)
from src.determinants.semigeneric import minors_ideal_check, semigeneric_section
from src.kernel.fields import FieldSpec
from src.report import ReportModel

logger = logging.getLogger(__name__)

FIBER_TRIALS = 20
# n for which the graded prefix replaces the full resolution.
PREFIX_N = 4


class BuildCheck(ReportModel):
    """Construction summary of a determinantal instance."""

    n: int
    flavor: Flavor
    num_vars: int
    degree: int
    partials_match_minors: bool


class DetSuiteReport(ReportModel):
    """Aggregate report of the determinant suite.

    Attributes:
        n: Matrix size.
        flavor: Generic or symmetric.
        seed: Seed for every random choice.
        field: Field label.
        checks: One record per check, in execution order.
        notes: Checks skipped at this size.
        passed: Every check passed.
        error_kind: Most severe error kind among the checks.
    """

    n: int
    flavor: Flavor
    seed: int
    field: str
    checks: list[CheckRecord]
    notes: list[str] = Field(default_factory=list)
    passed: bool = Field(alias="pass")
    error_kind: ErrorKind | None = None


def _build_check(inst: DetInstance) -> BuildCheck:
    return BuildCheck(
        n=inst.n,
        flavor=inst.flavor,
        num_vars=inst.num_vars,
        degree=inst.F.total_degree,
        partials_match_minors=partials_match_minors(inst),
    )


def det_suite(
    n: int,
    flavor: Flavor,
    seed: int | None = None,
    field: FieldSpec | None = None,
    fiber_trials: int = FIBER_TRIALS,
) -> DetSuiteReport:
    """Run every check that applies to the size-n determinant of one flavor.

    Generic: construction, Betti table (full for n <= 3, graded prefix for
    n = 4), semigeneric section and its minors ideal, the Lefschetz maps
    (n >= 3), restriction vanishing (n >= 3) and the fiber-rank
    stratification for every corank. Symmetric: construction, Betti table
    (n <= 3) and restriction vanishing.

    Args:
        n: Matrix size.
        flavor: Generic or symmetric.
        seed: Seed (default ``Settings.seed``).
        field: Field (default GF(``Settings.prime``)).
        fiber_trials: Trials per corank.

    Returns:
        The aggregate report; errors are recorded per check.
    """
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    field = FieldSpec.prime_field(settings.prime) if field is None else field
    params = {"n": n, "flavor": flavor.value, "seed": seed}
    checks: list[CheckRecord] = []
    notes: list[str] = []

    def add(
        name: str,
        check: Callable[[], ReportModel],
        verdict: Callable[[Any], bool],
        **extra: Any,
    ) -> CheckRecord:
        record = run_check(name, check, verdict, **params, **extra)
        checks.append(record)
        return record

    inst = build_determinant(n, flavor, field)
    add("build", lambda: _build_check(inst), lambda r: r.partials_match_minors)

    if n <= MAX_RESOLUTION_N:
        add("resolution", lambda: resolution_check(inst), lambda r: r.match)
    elif flavor == Flavor.GENERIC and n == PREFIX_N:
        add("graded_prefix", lambda: graded_prefix_check(inst), lambda r: r.match)
    else:
        notes.append(f"Betti table skipped: n={n} is beyond desk scale")

    if flavor == Flavor.SYMMETRIC:
        add("restriction", lambda: restriction_vanishing(inst, seed), lambda r: r.passed)
    else:
        section = add(
            "semigeneric",
            lambda: semigeneric_section(n, seed, field),
            lambda r: r.certificate.passed,
        ).report
        if section is not None:
            add(
                "minors_ideal",
                lambda: minors_ideal_check(section),
                lambda r: r.equal and r.containment,
            )
        if n >= 3:
            add(
                "lefschetz_semigeneric",
                lambda: artinian_lefschetz_check(inst, SectionChoice.SEMIGENERIC, seed),
                lambda r: r.iso and r.low_degrees_free,
            )
            add("lefschetz_random", lambda: lefschetz_sweep(inst, seed), lambda r: r.passed)
            add("restriction", lambda: restriction_vanishing(inst, seed), lambda r: r.passed)
        else:
            notes.append("Lefschetz and restriction checks need n >= 3")
        for k in range(n):
            add(
                "fiber_rank",
                lambda k=k: fiber_rank_check(n, k, fiber_trials, field, seed),
                lambda r: r.passed,
                k=k,
            )

    passed, error_kind = summarize(checks)
    logger.info("det_suite %s n=%d: pass=%s", flavor.value, n, passed)
    return DetSuiteReport(
        n=n,
        flavor=flavor,
        seed=seed,
        field=field.label,
        checks=checks,
        notes=notes,
        passed=passed,
        error_kind=error_kind,
    )
