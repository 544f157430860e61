#!/usr/bin/env python3
"""Tests for the verification battery in src/selftest.py.

The full quick battery is marked integration; the engine-property sampler
and the error bookkeeping run on their own.
"""

import numpy as np
import pytest

from src import selftest as selftest_module
from src.checks import ErrorKind
from src.errors import ScaleError
from src.kernel.fields import FieldSpec
from src.selftest import engine_properties, random_ideal, run_selftest


class TestRandomIdeal:
    """Test cases for random_ideal."""

    def test_shape(self, gf_small: FieldSpec) -> None:
        """Test that generators are homogeneous, nonzero and share a ring."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            gens = random_ideal(rng, gf_small)
            assert len(gens) <= 3
            assert all(g.is_homogeneous and not g.is_zero for g in gens)
            assert len({g.num_vars for g in gens}) <= 1
            assert all(2 <= g.num_vars <= 4 for g in gens)

    def test_seeded(self, gf_small: FieldSpec) -> None:
        """Test that the same seed gives the same ideal."""
        first = random_ideal(np.random.default_rng(9), gf_small)
        second = random_ideal(np.random.default_rng(9), gf_small)
        assert [str(g) for g in first] == [str(g) for g in second]


class TestEngineProperties:
    """Test cases for engine_properties."""

    def test_small_prime(self, gf_small: FieldSpec, seed: int) -> None:
        """Test the engine invariants on a few random ideals."""
        report = engine_properties(5, seed, gf_small)
        assert report.passed
        assert report.failures == []
        assert report.ideals == 5

    def test_rationals(self, qq: FieldSpec, seed: int) -> None:
        """Test the engine invariants over the rationals."""
        assert engine_properties(3, seed, qq).passed


class TestRunSelftest:
    """Test cases for run_selftest."""

    @pytest.mark.integration
    def test_quick(self, gf: FieldSpec, seed: int) -> None:
        """Test that the quick battery passes."""
        report = run_selftest(quick=True, seed=seed, field=gf)
        failed = [(c.name, c.params, c.error_message) for c in report.checks if not c.passed]
        assert failed == []
        assert report.passed
        assert report.error_kind is None
        assert report.to_dict()["pass"] is True
        cases = {c.params.get("case") for c in report.checks if c.name == "stability"}
        assert "nodal_cubic_tjurina_bound" in cases

    def test_out_of_reach_item_recorded(
        self, gf: FieldSpec, seed: int, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that unreachable items are recorded without stopping the battery."""

        def unreachable(*args: object, **kwargs: object) -> None:
            raise ScaleError("out of reach")

        for name in (
            "resolution_check",
            "semigeneric_section",
            "minors_ideal_check",
            "artinian_lefschetz_check",
            "lefschetz_sweep",
            "restriction_vanishing",
            "fiber_rank_check",
            "engine_properties",
            "semistability_scan",
        ):
            monkeypatch.setattr(selftest_module, name, unreachable)

        report = run_selftest(quick=True, seed=seed, field=gf)
        quiver = [c for c in report.checks if c.name == "quiver_stability"]
        assert quiver and all(c.error_kind == ErrorKind.SCALE for c in quiver)
        assert any(c.name == "cover" and c.passed for c in report.checks)
        assert not report.passed
        assert report.error_kind == ErrorKind.SCALE
