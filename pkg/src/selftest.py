"""The verification battery behind ``logtan selftest``.

Every item is a named check run through ``run_check``, so one failing or
out-of-reach item never hides the others. ``quick`` keeps the battery to
the sizes that finish in seconds.
"""

import logging
from collections.abc import Callable
from typing import Any

import numpy as np
from pydantic import Field

from src.checks import CheckRecord, ErrorKind, run_check, summarize
from src.config import get_settings
from src.determinants.betti import resolution_check
from src.determinants.build import Flavor, build_determinant
from src.determinants.fiber import fiber_rank_check
from src.determinants.lefschetz import (
    SectionChoice,
    artinian_lefschetz_check,
    lefschetz_sweep,
    restriction_vanishing,
)
from src.determinants.sampling import random_form
from src.determinants.semigeneric import minors_ideal_check, semigeneric_section
from src.geometry.cover import cover_solutions
from src.groebner.hilbert import hilbert_function, hilbert_function_dense
from src.groebner.ideal import Ideal, is_groebner
from src.groebner.resolution import betti_hilbert_function, resolve, syzygies
from src.kernel.fields import FieldSpec
from src.kernel.parser import parse_polynomial
from src.kernel.polynomial import Polynomial
from src.quiver.scan import semistability_scan
from src.report import ReportModel
from src.stability.jacobian import jacobian_data
from src.stability.ladder import stability_check
from src.stability.report import Criterion, Verdict

logger = logging.getLogger(__name__)

NODAL_CUBIC = "x0^2*x3 + x1^2*x3 + x2^2*x3 + x0^3 + x1^3 + x2^3"

# (name, polynomial, variables, expected report fields)
STABILITY_CORPUS: list[tuple[str, str, int, dict[str, Any]]] = [
    (
        "fermat_cubic",
        "x0^3 + x1^3 + x2^3 + x3^3",
        4,
        {"verdict": Verdict.SMOOTH_CLASSICAL},
    ),
    (
        "quartic_with_linear_syzygy",
        "x0*x1^3 + x2^4 + x3^4",
        4,
        {"verdict": Verdict.INCONCLUSIVE, "q": 1, "r": 1, "sing_deg": 18, "bound": 18},
    ),
    ("quadric_cone", "x0^2 + x1^2", 4, {"verdict": Verdict.NOT_SEMISTABLE}),
    (
        "nodal_cubic",
        NODAL_CUBIC,
        4,
        {
            "verdict": Verdict.SLOPE_STABLE,
            "criterion": Criterion.COROLLARY_B,
            "sing_deg": 1,
            "tjurina_inequality": True,
        },
    ),
]

HF_DEGREE = 5


class EnginePropertyReport(ReportModel):
    """Engine invariants over seeded random ideals.

    Attributes:
        ideals: Number of ideals checked.
        groebner_ok: Buchberger criterion held for every basis.
        hilbert_ok: Leading-term and dense Hilbert functions agreed.
        syzygies_ok: Every syzygy annihilated its generators.
        resolution_ok: Resolutions were minimal, complexes, and matched the
            Hilbert function through their Euler characteristic.
        failures: Generators of the ideals that failed, as text.
    """

    ideals: int
    groebner_ok: bool
    hilbert_ok: bool
    syzygies_ok: bool
    resolution_ok: bool
    failures: list[list[str]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """All four properties held."""
        return self.groebner_ok and self.hilbert_ok and self.syzygies_ok and self.resolution_ok


class SelftestReport(ReportModel):
    """Aggregate of the battery."""

    quick: bool
    seed: int
    field: str
    checks: list[CheckRecord]
    passed: bool = Field(alias="pass")
    error_kind: ErrorKind | None = None


def random_ideal(rng: np.random.Generator, field: FieldSpec) -> list[Polynomial]:
    """One to three random forms of degree 1..3 in two to four variables."""
    num_vars = int(rng.integers(2, 5))
    count = int(rng.integers(1, 4))
    gens = [random_form(rng, num_vars, int(rng.integers(1, 4)), field) for _ in range(count)]
    return [g for g in gens if not g.is_zero]


def _is_zero_combination(gens: list[Polynomial], column: list[Polynomial]) -> bool:
    total = Polynomial.zero(gens[0].num_vars, gens[0].field)
    for g, c in zip(gens, column, strict=True):
        total = total + g * c
    return total.is_zero


def _resolution_consistent(gens: list[Polynomial], hf: list[int]) -> bool:
    res = resolve(gens)
    if any(m.has_unit_entry() for m in res.maps):
        return False
    for first, second in zip(res.maps, res.maps[1:], strict=False):
        if any(not e.is_zero for row in first.compose(second) for e in row):
            return False
    num_vars = gens[0].num_vars
    return all(betti_hilbert_function(res.betti, num_vars, t) == hf[t] for t in range(len(hf)))


def engine_properties(count: int, seed: int, field: FieldSpec) -> EnginePropertyReport:
    """Check the engine invariants on ``count`` seeded random ideals."""
    rng = np.random.default_rng(seed)
    flags = {"groebner": True, "hilbert": True, "syzygies": True, "resolution": True}
    failures: list[list[str]] = []
    for _ in range(count):
        gens = random_ideal(rng, field)
        if not gens:
            continue
        ideal = Ideal(gens)
        hf = hilbert_function(ideal, HF_DEGREE).dims()
        syz = syzygies(gens)
        results = {
            "groebner": is_groebner(ideal.groebner),
            "hilbert": hf == hilbert_function_dense(ideal, HF_DEGREE),
            "syzygies": all(
                _is_zero_combination(gens, syz.column(j)) for j in range(syz.shape[1])
            ),
            "resolution": _resolution_consistent(gens, hf),
        }
        if not all(results.values()):
            failures.append([str(g) for g in gens])
            logger.warning("engine properties failed on %s: %s", failures[-1], results)
        for key, ok in results.items():
            flags[key] = flags[key] and ok
    return EnginePropertyReport(
        ideals=count,
        groebner_ok=flags["groebner"],
        hilbert_ok=flags["hilbert"],
        syzygies_ok=flags["syzygies"],
        resolution_ok=flags["resolution"],
        failures=failures,
    )


def run_selftest(
    quick: bool = False, seed: int | None = None, field: FieldSpec | None = None
) -> SelftestReport:
    """Run the verification battery.

    Args:
        quick: Restrict to the small sizes.
        seed: Seed (default ``Settings.seed``).
        field: Working field (default GF(``Settings.prime``)).

    Returns:
        One record per item; the aggregate passes when every item does.
    """
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    field = FieldSpec.prime_field(settings.prime) if field is None else field
    checks: list[CheckRecord] = []

    def add(
        name: str,
        check: Callable[[], ReportModel],
        verdict: Callable[[Any], bool],
        **params: Any,
    ) -> None:
        checks.append(run_check(name, check, verdict, **params))

    sizes = [2] if quick else [2, 3]
    for flavor in Flavor:
        for n in sizes:
            add(
                "betti_table",
                lambda n=n, flavor=flavor: resolution_check(build_determinant(n, flavor, field)),
                lambda r: r.match,
                n=n,
                flavor=flavor.value,
            )

    for n in [2, 3] if quick else [2, 3, 4]:
        add(
            "minors_ideal",
            lambda n=n: minors_ideal_check(semigeneric_section(n, seed, field)),
            lambda r: r.equal,
            n=n,
            field=field.label,
        )
    if not quick:
        QQ = FieldSpec.rationals()
        add(
            "minors_ideal",
            lambda: minors_ideal_check(semigeneric_section(3, seed, QQ)),
            lambda r: r.equal,
            n=3,
            field=QQ.label,
        )

    for n in [3] if quick else [3, 4, 5]:
        add(
            "lefschetz_semigeneric",
            lambda n=n: artinian_lefschetz_check(
                build_determinant(n, Flavor.GENERIC, field), SectionChoice.SEMIGENERIC, seed
            ),
            lambda r: r.iso and r.low_degrees_free,
            n=n,
        )
    for n in [3] if quick else [3, 4]:
        add(
            "lefschetz_random",
            lambda n=n: lefschetz_sweep(build_determinant(n, Flavor.GENERIC, field), seed),
            lambda r: r.passed,
            n=n,
        )

    for n in [2, 3] if quick else [2, 3, 4, 5]:
        add(
            "symmetric_restriction",
            lambda n=n: restriction_vanishing(build_determinant(n, Flavor.SYMMETRIC, field), seed),
            lambda r: r.passed,
            n=n,
        )

    for n in range(1, 7 if quick else 11):
        add(
            "quiver_stability",
            lambda n=n: semistability_scan(n),
            lambda r: r.strictly_stable and r.count == r.expected_count,
            n=n,
        )

    trials = 5 if quick else 20
    for n in [2] if quick else [2, 3]:
        for k in range(n):
            add(
                "fiber_rank",
                lambda n=n, k=k: fiber_rank_check(n, k, trials, field, seed),
                lambda r: r.passed,
                n=n,
                k=k,
            )

    for n in range(3, 21):
        add("cover", lambda n=n: cover_solutions(n), lambda r: r.passed, n=n)

    for name, text, num_vars, expected in STABILITY_CORPUS:
        add(
            "stability",
            lambda text=text, num_vars=num_vars: stability_check(
                jacobian_data(parse_polynomial(text, num_vars, field))
            ),
            lambda r, expected=expected: all(getattr(r, k) == v for k, v in expected.items()),
            case=name,
        )

    add(
        "stability",
        lambda: stability_check(
            jacobian_data(parse_polynomial(NODAL_CUBIC, 4, field)), use_corollary_b=False
        ),
        lambda r: r.verdict == Verdict.SLOPE_STABLE and r.criterion == Criterion.THEOREM_C,
        case="nodal_cubic_tjurina_bound",
    )

    add(
        "engine_properties",
        lambda: engine_properties(10 if quick else 100, seed, field),
        lambda r: r.passed,
    )

    passed, error_kind = summarize(checks)
    logger.info("selftest quick=%s: %d checks, pass=%s", quick, len(checks), passed)
    return SelftestReport(
        quick=quick,
        seed=seed,
        field=field.label,
        checks=checks,
        passed=passed,
        error_kind=error_kind,
    )
