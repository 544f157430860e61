"""Decision ladder for slope-stability of logarithmic tangent sheaves.

Each gate inspects the ladder state, records what it saw and sets
``next_stage``; ``stability_check`` dispatches on the stage until DONE. The
ladder never declares instability from a failed sufficient criterion: only
the cone obstruction yields NotSemistable.
"""

import logging

from src.config import get_settings
from src.errors import LogtanError
from src.kernel.fields import FieldSpec
from src.kernel.parser import parse_polynomial
from src.stability.jacobian import (
    jacobian_data,
    log_sections_dim,
    min_syzygy_degree,
    partial_dependencies,
    plessis_wall_bound,
    syzygy_witnesses,
    trivial_summand_count,
)
from src.stability.report import (
    Criterion,
    CrossFieldReport,
    FieldVerdict,
    HypersurfaceData,
    LadderStage,
    LadderState,
    RungRecord,
    StabilityReport,
    Verdict,
)

logger = logging.getLogger(__name__)


def _record(state: LadderState, stage: LadderStage, outcome: str) -> None:
    state.report.rungs.append(RungRecord(stage=stage, outcome=outcome))
    logger.info("rung %s: %s", stage.value, outcome)


def _decide(state: LadderState, verdict: Verdict, criterion: Criterion) -> None:
    state.report.verdict = verdict
    state.report.criterion = criterion
    state.next_stage = LadderStage.DONE


def check_cone(state: LadderState) -> LadderState:
    """Gate: dependent partials split off trivial summands.

    Args:
        state: Ladder state at the first rung.

    Returns:
        State deciding NotSemistable (with the dependency as witness) or
        moving on to SMOOTH.
    """
    h = state.data
    count = trivial_summand_count(h)
    state.report.trivial_summands = count
    if count > 0:
        field = h.F.field
        state.report.witness = [
            [str(field.symmetric_int(field.element(c))) if field.is_prime else str(c) for c in rel]
            for rel in partial_dependencies(h)
        ]
        _record(state, LadderStage.CONE, f"{count} trivial summands")
        _decide(state, Verdict.NOT_SEMISTABLE, Criterion.CONE_OBSTRUCTION)
    else:
        _record(state, LadderStage.CONE, "partials independent")
        state.next_stage = LadderStage.SMOOTH
    return state


def check_smooth(state: LadderState) -> LadderState:
    """Gate: a smooth hypersurface has a stable logarithmic tangent sheaf."""
    if state.data.sing_dim == -1:
        _record(state, LadderStage.SMOOTH, "D is smooth")
        _decide(state, Verdict.SMOOTH_CLASSICAL, Criterion.SMOOTH)
    else:
        _record(state, LadderStage.SMOOTH, f"singular locus of dimension {state.data.sing_dim}")
        state.next_stage = LadderStage.HYPOTHESES
    return state


def check_hypotheses(state: LadderState) -> LadderState:
    """Gate: the criteria need s <= N - 2.

    Also fills r and, for isolated singularities, the Tjurina comparison and
    the lower-bound consistency check, so every report carries them.
    """
    h = state.data
    report = state.report
    report.r = min_syzygy_degree(h)
    if h.sing_dim > h.ambient_dim - 2:
        report.notes.append(
            f"singular locus of dimension {h.sing_dim} > N - 2 = {h.ambient_dim - 2}: "
            "outside the hypotheses of the criteria"
        )
        _record(state, LadderStage.HYPOTHESES, "s > N - 2, refusing")
        _decide(state, Verdict.INCONCLUSIVE, Criterion.NONE)
        return state
    report.q = (h.d - 1) * (h.sing_dim + 1) // h.ambient_dim
    if h.sing_dim == 0 and h.sing_deg is not None:
        report.bound = (h.d - report.q - 1) * (h.d - 1) ** (h.ambient_dim - 1)
        report.tjurina_inequality = h.sing_deg < report.bound
        report.plessis_wall_bound = plessis_wall_bound(h, report.r)
        if h.sing_deg < report.plessis_wall_bound:
            logger.warning(
                "total Tjurina number %d below the lower bound %d",
                h.sing_deg,
                report.plessis_wall_bound,
            )
            report.notes.append("total Tjurina number below (d-r-1)(d-1)^(N-1)")
    _record(state, LadderStage.HYPOTHESES, f"q = {report.q}, r = {report.r}")
    state.next_stage = LadderStage.COROLLARY_B
    return state


def check_syzygy_vanishing(state: LadderState) -> LadderState:
    """Gate: no syzygy of the partials in degree q gives stability."""
    h = state.data
    q = state.report.q
    assert q is not None
    dim = log_sections_dim(h, q)
    if dim == 0:
        _record(state, LadderStage.COROLLARY_B, f"no syzygies in degree {q}")
        _decide(state, Verdict.SLOPE_STABLE, Criterion.COROLLARY_B)
    else:
        r = state.report.r
        assert r is not None
        state.report.witness = [[str(a) for a in w] for w in syzygy_witnesses(h, r)[:1]]
        _record(state, LadderStage.COROLLARY_B, f"{dim} syzygies in degree {q}")
        state.next_stage = LadderStage.THEOREM_C
    return state


def check_tjurina_bound(state: LadderState) -> LadderState:
    """Gate: isolated singularities of small total Tjurina number."""
    report = state.report
    if report.tjurina_inequality:
        _record(state, LadderStage.THEOREM_C, f"{report.sing_deg} < {report.bound}")
        _decide(state, Verdict.SLOPE_STABLE, Criterion.THEOREM_C)
    else:
        if report.bound is not None:
            outcome = f"{report.sing_deg} >= {report.bound}"
        else:
            outcome = "singular locus not finite"
        _record(state, LadderStage.THEOREM_C, outcome)
        _decide(state, Verdict.INCONCLUSIVE, Criterion.NONE)
    return state


def stability_check(h: HypersurfaceData, use_corollary_b: bool = True) -> StabilityReport:
    """Run the stability ladder on a hypersurface.

    Rungs, in order: cone obstruction (NotSemistable), smoothness
    (SmoothClassical), the hypothesis s <= N-2, vanishing of the degree-q
    syzygies (SlopeStable), the total Tjurina bound for isolated
    singularities (SlopeStable), and otherwise Inconclusive.

    Whenever the syzygy rung fails, r <= q and the du Plessis-Wall bound
    gives sing_deg >= (d-q-1)(d-1)^(N-1), so the Tjurina rung cannot
    succeed after it. Pass ``use_corollary_b=False`` to decide isolated
    singularities by the Tjurina bound alone.

    Args:
        h: Hypersurface data from ``jacobian_data``.
        use_corollary_b: Visit the syzygy-vanishing rung.

    Returns:
        The report with every visited rung recorded.

    Examples:
        >>> from src.kernel.parser import parse_polynomial
        >>> from src.kernel.fields import FieldSpec
        >>> from src.stability.jacobian import jacobian_data
        >>> F = parse_polynomial("x0^2 + x1^2", 4, FieldSpec.rationals())
        >>> stability_check(jacobian_data(F)).verdict.value
        'NotSemistable'
    """
    report = StabilityReport(
        field=h.F.field.label,
        polynomial=str(h.F),
        d=h.d,
        ambient_dim=h.ambient_dim,
        s=h.sing_dim,
        sing_deg=h.sing_deg,
    )
    state = LadderState(data=h, report=report)
    while state.next_stage != LadderStage.DONE:
        match state.next_stage:
            case LadderStage.CONE:
                state = check_cone(state)
            case LadderStage.SMOOTH:
                state = check_smooth(state)
            case LadderStage.HYPOTHESES:
                state = check_hypotheses(state)
            case LadderStage.COROLLARY_B if not use_corollary_b:
                _record(state, LadderStage.COROLLARY_B, "skipped")
                state.next_stage = LadderStage.THEOREM_C
            case LadderStage.COROLLARY_B:
                state = check_syzygy_vanishing(state)
            case LadderStage.THEOREM_C:
                state = check_tjurina_bound(state)
    return state.report


def cross_field_stability(text: str, num_vars: int) -> CrossFieldReport:
    """Run the ladder over the rationals and the two configured primes.

    Args:
        text: Polynomial text.
        num_vars: Number of variables.

    Returns:
        Per-field verdicts and whether they all agree. A field whose run
        raises records the error instead of a verdict.
    """
    settings = get_settings()
    fields = [
        FieldSpec.rationals(),
        FieldSpec.prime_field(settings.prime),
        FieldSpec.prime_field(settings.check_prime),
    ]
    results = []
    for field in fields:
        try:
            F = parse_polynomial(text, num_vars, field)
            report = stability_check(jacobian_data(F))
            results.append(
                FieldVerdict(field=field.label, verdict=report.verdict, criterion=report.criterion)
            )
        except LogtanError as e:
            logger.error("stability over %s failed: %s", field.label, e)
            results.append(FieldVerdict(field=field.label, error_message=str(e)))
    verdicts = {r.verdict for r in results}
    agree = len(verdicts) == 1 and None not in verdicts
    return CrossFieldReport(polynomial=text.strip(), results=results, agree=agree)
