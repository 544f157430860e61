#!/usr/bin/env python3
"""Shared test fixtures for the test suite.

This module provides coefficient fields, seeds and small determinantal
instances used across multiple test files, and resets the cached settings
around tests that change the environment.
"""

from collections.abc import Iterator

import pytest

from src.config import get_settings
from src.determinants.build import DetInstance, Flavor, build_determinant
from src.kernel.fields import FieldSpec

# Small prime that keeps hand-checked arithmetic readable.
SMALL_PRIME = 101

SEED = 20240611


@pytest.fixture
def qq() -> FieldSpec:
    """Provide the field of rational numbers.

    Returns:
        The rationals.
    """
    return FieldSpec.rationals()


@pytest.fixture
def gf() -> FieldSpec:
    """Provide the default working prime field GF(2^31 - 1).

    Returns:
        The prime field used by the suite by default.
    """
    return FieldSpec.prime_field(get_settings().prime)


@pytest.fixture
def gf_small() -> FieldSpec:
    """Provide a small prime field.

    Returns:
        GF(101).
    """
    return FieldSpec.prime_field(SMALL_PRIME)


@pytest.fixture
def seed() -> int:
    """Provide the fixed seed the tests sample with."""
    return SEED


@pytest.fixture
def generic2(gf: FieldSpec) -> DetInstance:
    """Provide the generic 2x2 determinant over the working field."""
    return build_determinant(2, Flavor.GENERIC, gf)


@pytest.fixture
def generic3(gf: FieldSpec) -> DetInstance:
    """Provide the generic 3x3 determinant over the working field."""
    return build_determinant(3, Flavor.GENERIC, gf)


@pytest.fixture
def symmetric2(gf: FieldSpec) -> DetInstance:
    """Provide the symmetric 2x2 determinant over the working field."""
    return build_determinant(2, Flavor.SYMMETRIC, gf)


@pytest.fixture
def symmetric3(gf: FieldSpec) -> DetInstance:
    """Provide the symmetric 3x3 determinant over the working field."""
    return build_determinant(3, Flavor.SYMMETRIC, gf)


@pytest.fixture
def fresh_settings() -> Iterator[None]:
    """Clear the cached settings before and after a test.

    Tests that set ``LOGTAN_*`` variables with monkeypatch use this so the
    change is picked up and does not leak into other tests.
    """
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
