"""State and report models for the stability criteria.

The verdict ladder walks the rungs below in order; each rung either decides
the verdict or hands over to the next:

Cone -> Smooth -> Hypotheses -> CorollaryB -> TheoremC -> Done
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from src.groebner.ideal import Ideal
from src.kernel.polynomial import Polynomial
from src.report import ReportModel


class Verdict(str, Enum):
    """Outcome of the stability ladder."""

    SLOPE_STABLE = "SlopeStable"
    NOT_SEMISTABLE = "NotSemistable"
    INCONCLUSIVE = "Inconclusive"
    SMOOTH_CLASSICAL = "SmoothClassical"


class Criterion(str, Enum):
    """Rung of the ladder that decided the verdict.

    - COROLLARY_B: no syzygy of the partials in degree q
    - THEOREM_C: total Tjurina number below (d-q-1)(d-1)^(N-1)
    - CONE_OBSTRUCTION: linearly dependent partials split off trivial summands
    - SMOOTH: D is smooth
    - NONE: no rung decided
    """

    COROLLARY_B = "CorollaryB"
    THEOREM_C = "TheoremC"
    CONE_OBSTRUCTION = "ConeObstruction"
    SMOOTH = "Smooth"
    NONE = "None"


class LadderStage(str, Enum):
    """Current rung of the stability ladder."""

    CONE = "cone"
    SMOOTH = "smooth"
    HYPOTHESES = "hypotheses"
    COROLLARY_B = "corollary_b"
    THEOREM_C = "theorem_c"
    DONE = "done"


class HypersurfaceData(BaseModel):
    """Jacobian data of a projective hypersurface D = V(F).

    Attributes:
        F: The homogeneous defining form.
        d: Degree of F.
        ambient_dim: N, the dimension of the ambient projective space.
        partials: The N+1 partial derivatives of F.
        jacobian_ideal: The ideal generated by the partials.
        sing_dim: Dimension s of the singular locus (-1 when D is smooth).
        sing_deg: Degree of the singular scheme when it is finite.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    F: Polynomial
    d: int
    ambient_dim: int
    partials: list[Polynomial]
    jacobian_ideal: Ideal
    sing_dim: int
    sing_deg: int | None = None

    _saturation: Ideal | None = PrivateAttr(default=None)

    @property
    def num_vars(self) -> int:
        """Number of ring variables, N + 1."""
        return self.ambient_dim + 1


class RungRecord(ReportModel):
    """What one rung of the ladder observed."""

    stage: LadderStage
    outcome: str


class StabilityReport(ReportModel):
    """Structured verdict of the stability ladder.

    Attributes:
        verdict: The verdict.
        criterion: The rung that decided it.
        field: Label of the coefficient field.
        polynomial: Canonical text of F.
        d: Degree of F.
        ambient_dim: N (serialized as ``N``).
        s: Dimension of the singular locus.
        q: floor((d-1)(s+1)/N) when defined.
        r: Smallest degree of a syzygy of the partials.
        trivial_summands: Number of trivial summands split off by dependent partials.
        sing_deg: Total Tjurina number for isolated singularities.
        bound: (d-q-1)(d-1)^(N-1) for isolated singularities.
        tjurina_inequality: Whether sing_deg < bound, whenever s = 0.
        plessis_wall_bound: (d-r-1)(d-1)^(N-1), a lower bound for sing_deg.
        witness: Dependency among the partials, or the syzygies of degree r.
        notes: Hypothesis violations and consistency warnings.
        rungs: One record per rung visited.
    """

    verdict: Verdict = Verdict.INCONCLUSIVE
    criterion: Criterion = Criterion.NONE
    field: str
    polynomial: str
    d: int
    ambient_dim: int = Field(alias="N")
    s: int
    q: int | None = None
    r: int | None = None
    trivial_summands: int = 0
    sing_deg: int | None = None
    bound: int | None = None
    tjurina_inequality: bool | None = None
    plessis_wall_bound: int | None = None
    witness: list[list[str]] | None = None
    notes: list[str] = Field(default_factory=list)
    rungs: list[RungRecord] = Field(default_factory=list)


class LadderState(BaseModel):
    """Mutable state threaded through the ladder gates."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    data: HypersurfaceData
    report: StabilityReport
    next_stage: LadderStage = LadderStage.CONE


class FieldVerdict(ReportModel):
    """Verdict of one field in a cross-field run."""

    field: str
    verdict: Verdict | None = None
    criterion: Criterion | None = None
    error_message: str | None = None


class CrossFieldReport(ReportModel):
    """Ladder verdicts over several coefficient fields."""

    polynomial: str
    results: list[FieldVerdict]
    agree: bool
