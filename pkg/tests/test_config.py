#!/usr/bin/env python3
"""Tests for src/config.py: defaults and LOGTAN_* overrides."""

import pytest
from pydantic import ValidationError

from src.config import DEFAULT_SEED, MERSENNE_31, SECOND_PRIME, Settings, get_settings
from src.errors import ScaleError
from src.quiver.scan import semistability_scan


def test_defaults(fresh_settings: None, monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the built-in defaults when no variable is set."""
    names = (
        "LOGTAN_SEED",
        "LOGTAN_PRIME",
        "LOGTAN_QUIVER_MAX_N",
        "LOGTAN_WORKERS",
        "LOGTAN_MAX_EXPONENT",
    )
    for name in names:
        monkeypatch.delenv(name, raising=False)
    settings = get_settings()
    assert settings.seed == DEFAULT_SEED
    assert (settings.prime, settings.check_prime) == (MERSENNE_31, SECOND_PRIME)
    assert settings.max_retries == 10
    assert settings.quiver_max_n == 12
    assert settings.workers == 1
    assert settings.max_exponent == 256


def test_env_override(fresh_settings: None, monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that LOGTAN_SEED replaces the default seed."""
    monkeypatch.setenv("LOGTAN_SEED", "7")
    assert get_settings().seed == 7


def test_settings_cached(fresh_settings: None) -> None:
    """Test that get_settings returns one instance."""
    assert get_settings() is get_settings()


def test_invalid_value(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that a worker count below 1 is refused."""
    monkeypatch.setenv("LOGTAN_WORKERS", "0")
    with pytest.raises(ValidationError):
        Settings()


def test_quiver_limit_from_env(fresh_settings: None, monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that the enumeration limit follows LOGTAN_QUIVER_MAX_N."""
    monkeypatch.setenv("LOGTAN_QUIVER_MAX_N", "2")
    assert semistability_scan(2).strictly_stable
    with pytest.raises(ScaleError):
        semistability_scan(3)
