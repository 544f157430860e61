#!/usr/bin/env python3
"""Unit tests for src/stability: Jacobian data and the verdict ladder.

The corpus covers every rung: a cone (NotSemistable), a smooth cubic
(SmoothClassical), a nodal cubic decided by syzygy vanishing and, with that
rung skipped, by the total Tjurina bound, a quartic whose Tjurina number sits
exactly on the bound (Inconclusive) and a double surface outside the
hypotheses.
"""

import pytest

from src.errors import HypothesisError, NotHomogeneousError
from src.kernel.fields import FieldSpec
from src.kernel.parser import parse_polynomial
from src.kernel.polynomial import Polynomial
from src.stability.jacobian import (
    jacobian_data,
    log_sections_dim,
    min_syzygy_degree,
    mult_map_rank,
    partial_dependencies,
    plessis_wall_bound,
    saturation_quotient_dim,
    saturation_quotient_table,
    syzygy_witnesses,
    trivial_summand_count,
)
from src.stability.ladder import cross_field_stability, stability_check
from src.stability.report import Criterion, HypersurfaceData, LadderStage, Verdict

NODAL_CUBIC = "x0^2*x3 + x1^2*x3 + x2^2*x3 + x0^3 + x1^3 + x2^3"
FERMAT_CUBIC = "x0^3 + x1^3 + x2^3 + x3^3"
BOUNDARY_QUARTIC = "x0*x1^3 + x2^4 + x3^4"
QUADRIC_CONE = "x0^2 + x1^2"
DOUBLE_PLANE = "x0^2*x1*x2 + x0^2*x3^2"

# --- Fixtures ---


@pytest.fixture
def nodal(gf: FieldSpec) -> HypersurfaceData:
    """Provide the Jacobian data of a cubic surface with one node."""
    return jacobian_data(parse_polynomial(NODAL_CUBIC, 4, gf))


@pytest.fixture
def quadric(qq: FieldSpec) -> HypersurfaceData:
    """Provide the Jacobian data of a smooth quadric surface."""
    return jacobian_data(parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, qq))


class TestJacobianData:
    """Test cases for jacobian_data and the graded syzygy pieces."""

    def test_smooth_quadric(self, quadric: HypersurfaceData) -> None:
        """Test degree, ambient dimension and empty singular locus."""
        assert (quadric.d, quadric.ambient_dim, quadric.sing_dim) == (2, 3, -1)
        assert quadric.sing_deg is None
        assert quadric.num_vars == 4

    def test_node(self, nodal: HypersurfaceData) -> None:
        """Test that the node is one reduced point."""
        assert nodal.sing_dim == 0
        assert nodal.sing_deg == 1

    def test_boundary_quartic(self, gf: FieldSpec) -> None:
        """Test the total Tjurina number of an isolated quasi-homogeneous point."""
        h = jacobian_data(parse_polynomial(BOUNDARY_QUARTIC, 4, gf))
        assert h.sing_dim == 0
        assert h.sing_deg == 18

    def test_rejects_inhomogeneous(self, qq: FieldSpec) -> None:
        """Test that F must be a homogeneous form."""
        with pytest.raises(NotHomogeneousError):
            jacobian_data(parse_polynomial("x0^2 + x1", 2, qq))

    def test_rejects_linear(self, qq: FieldSpec) -> None:
        """Test that linear forms are refused."""
        with pytest.raises(HypothesisError):
            jacobian_data(parse_polynomial("x0 + x1", 2, qq))

    def test_rejects_vanishing_partials(self) -> None:
        """Test a cubic whose partials all vanish in characteristic 3."""
        with pytest.raises(HypothesisError):
            jacobian_data(parse_polynomial(FERMAT_CUBIC, 4, FieldSpec.prime_field(3)))

    def test_koszul_syzygies(self, quadric: HypersurfaceData) -> None:
        """Test that the partials of a smooth quadric only have Koszul syzygies."""
        assert log_sections_dim(quadric, -1) == 0
        assert log_sections_dim(quadric, 0) == 0
        assert log_sections_dim(quadric, 1) == 6
        assert min_syzygy_degree(quadric) == 1

    def test_syzygy_witnesses(self, gf: FieldSpec) -> None:
        """Test that witnesses are relations of the degree reported by r."""
        h = jacobian_data(parse_polynomial(BOUNDARY_QUARTIC, 4, gf))
        r = min_syzygy_degree(h)
        assert r == 1
        witnesses = syzygy_witnesses(h, r)
        assert len(witnesses) == log_sections_dim(h, r)
        for w in witnesses:
            total = Polynomial.zero(h.num_vars, gf)
            for a, p in zip(w, h.partials, strict=True):
                total = total + a * p
            assert total.is_zero

    def test_trivial_summands(self, qq: FieldSpec) -> None:
        """Test dependent partials of a cone."""
        h = jacobian_data(parse_polynomial(QUADRIC_CONE, 4, qq))
        assert trivial_summand_count(h) == 2
        assert len(partial_dependencies(h)) == 2

    def test_plessis_wall_bound(self, nodal: HypersurfaceData) -> None:
        """Test (d - r - 1)(d - 1)^(N - 1) at a chosen r."""
        assert plessis_wall_bound(nodal, 1) == 4
        assert plessis_wall_bound(nodal, 0) == 8


class TestSaturation:
    """Test cases for the saturation quotient J^sat / J."""

    def test_node_quotient(self, nodal: HypersurfaceData) -> None:
        """Test the low-degree pieces for a single node."""
        assert saturation_quotient_dim(nodal, 0) == 0
        assert saturation_quotient_dim(nodal, 1) == 3
        assert saturation_quotient_dim(nodal, -1) == 0

    def test_table_matches_pointwise(self, nodal: HypersurfaceData) -> None:
        """Test that the table agrees with single-degree queries."""
        table = saturation_quotient_table(nodal, 3)
        assert table == {t: saturation_quotient_dim(nodal, t) for t in range(4)}

    def test_mult_map_rank_bounded(self, nodal: HypersurfaceData, gf: FieldSpec) -> None:
        """Test that the multiplication rank never exceeds its source or target."""
        g = parse_polynomial("x3", 4, gf)
        rank = mult_map_rank(nodal, g, 1)
        source, target = saturation_quotient_dim(nodal, 1), saturation_quotient_dim(nodal, 2)
        assert 0 <= rank <= min(source, target)
        assert mult_map_rank(nodal, g * 0, 1) == 0

    def test_smooth_refused(self, quadric: HypersurfaceData) -> None:
        """Test that the quotient needs a singular hypersurface."""
        with pytest.raises(HypothesisError):
            saturation_quotient_dim(quadric, 1)


class TestLadder:
    """Test cases for stability_check."""

    def test_cone(self, qq: FieldSpec) -> None:
        """Test the cone obstruction."""
        report = stability_check(jacobian_data(parse_polynomial(QUADRIC_CONE, 4, qq)))
        assert report.verdict == Verdict.NOT_SEMISTABLE
        assert report.criterion == Criterion.CONE_OBSTRUCTION
        assert report.trivial_summands == 2
        assert report.witness is not None and len(report.witness) == 2
        assert [r.stage for r in report.rungs] == [LadderStage.CONE]

    def test_smooth(self, gf: FieldSpec) -> None:
        """Test that a smooth cubic is decided by smoothness."""
        report = stability_check(jacobian_data(parse_polynomial(FERMAT_CUBIC, 4, gf)))
        assert report.verdict == Verdict.SMOOTH_CLASSICAL
        assert report.criterion == Criterion.SMOOTH
        assert report.s == -1

    def test_nodal_cubic(self, nodal: HypersurfaceData) -> None:
        """Test a node: no syzygies in degree q = 0."""
        report = stability_check(nodal)
        assert report.verdict == Verdict.SLOPE_STABLE
        assert report.criterion == Criterion.COROLLARY_B
        assert (report.q, report.sing_deg, report.bound) == (0, 1, 8)
        assert report.tjurina_inequality is True
        assert report.rungs[-1].stage == LadderStage.COROLLARY_B

    def test_nodal_cubic_by_tjurina_bound(self, nodal: HypersurfaceData) -> None:
        """Test that the node is decided by 1 < 8 when the syzygy rung is skipped."""
        report = stability_check(nodal, use_corollary_b=False)
        assert report.verdict == Verdict.SLOPE_STABLE
        assert report.criterion == Criterion.THEOREM_C
        assert report.to_dict()["criterion"] == "TheoremC"
        assert [(r.stage, r.outcome) for r in report.rungs[-2:]] == [
            (LadderStage.COROLLARY_B, "skipped"),
            (LadderStage.THEOREM_C, "1 < 8"),
        ]

    def test_tjurina_bound_without_corollary_b(self, gf: FieldSpec) -> None:
        """Test that skipping the syzygy rung keeps the boundary quartic inconclusive."""
        F = parse_polynomial(BOUNDARY_QUARTIC, 4, gf)
        report = stability_check(jacobian_data(F), use_corollary_b=False)
        assert report.verdict == Verdict.INCONCLUSIVE
        assert report.witness is None

    @pytest.mark.parametrize("text", [NODAL_CUBIC, BOUNDARY_QUARTIC])
    def test_tjurina_bound_never_rescues_failed_syzygy_rung(
        self, text: str, gf: FieldSpec
    ) -> None:
        """Test r <= q forces sing_deg >= (d-q-1)(d-1)^(N-1) via the wall bound."""
        report = stability_check(jacobian_data(parse_polynomial(text, 4, gf)))
        assert report.r is not None and report.q is not None and report.bound is not None
        assert report.plessis_wall_bound is not None and report.sing_deg is not None
        if report.r <= report.q:
            assert report.plessis_wall_bound >= report.bound
            assert not report.tjurina_inequality
        assert report.sing_deg >= report.plessis_wall_bound

    def test_boundary_quartic(self, gf: FieldSpec) -> None:
        """Test Tjurina number equal to the bound: no verdict."""
        report = stability_check(jacobian_data(parse_polynomial(BOUNDARY_QUARTIC, 4, gf)))
        assert report.verdict == Verdict.INCONCLUSIVE
        assert report.criterion == Criterion.NONE
        assert (report.q, report.r, report.sing_deg, report.bound) == (1, 1, 18, 18)
        assert report.tjurina_inequality is False
        assert report.plessis_wall_bound == 18
        assert report.witness is not None
        assert [r.stage for r in report.rungs][-1] == LadderStage.THEOREM_C

    def test_outside_hypotheses(self, gf: FieldSpec) -> None:
        """Test a double plane: singular locus of dimension 2 > N - 2."""
        report = stability_check(jacobian_data(parse_polynomial(DOUBLE_PLANE, 4, gf)))
        assert report.verdict == Verdict.INCONCLUSIVE
        assert report.s == 2
        assert report.q is None
        assert any("outside the hypotheses" in note for note in report.notes)

    def test_json_shape(self, nodal: HypersurfaceData) -> None:
        """Test the serialized keys and enum values."""
        payload = stability_check(nodal).to_dict()
        assert payload["verdict"] == "SlopeStable"
        assert payload["criterion"] == "CorollaryB"
        assert payload["N"] == 3
        assert payload["singDeg"] == 1
        assert payload["tjurinaInequality"] is True

    def test_verdict_independent_of_field(self, qq: FieldSpec, gf: FieldSpec) -> None:
        """Test the nodal cubic over the rationals and a prime field."""
        verdicts = {
            stability_check(jacobian_data(parse_polynomial(NODAL_CUBIC, 4, f))).verdict
            for f in (qq, gf)
        }
        assert verdicts == {Verdict.SLOPE_STABLE}


class TestCrossField:
    """Test cases for cross_field_stability."""

    def test_agree(self) -> None:
        """Test that a smooth cubic gets one verdict everywhere."""
        report = cross_field_stability(FERMAT_CUBIC, 4)
        assert report.agree
        assert [r.field for r in report.results] == ["QQ", "GF(2147483647)", "GF(2147483629)"]
        assert {r.verdict for r in report.results} == {Verdict.SMOOTH_CLASSICAL}

    def test_error_breaks_agreement(self) -> None:
        """Test that a field where the input does not parse records an error."""
        report = cross_field_stability(FERMAT_CUBIC + " + 1/2147483647*x3^3", 4)
        assert not report.agree
        failed = [r for r in report.results if r.error_message is not None]
        assert [r.field for r in failed] == ["GF(2147483647)"]
        assert failed[0].verdict is None
