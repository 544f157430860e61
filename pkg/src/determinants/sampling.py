"""Seeded resampling of generic choices.

A generic choice is drawn from a seeded generator and checked by a
certificate; a failed certificate raises ``UncertifiedSample`` and tenacity
draws again from the same generator, so a fixed seed reproduces the same
sequence of attempts.
"""

import logging
from collections.abc import Callable
from typing import Any, TypeVar

import numpy as np
from tenacity import Retrying, before_sleep_log, retry_if_exception_type, stop_after_attempt

from src.config import get_settings
from src.errors import GenericityError
from src.kernel.fields import FieldSpec
from src.kernel.polynomial import Polynomial, monomials_of_degree

logger = logging.getLogger(__name__)

T = TypeVar("T")


class UncertifiedSample(Exception):
    """A drawn choice failed its genericity certificate."""

    def __init__(self, certificate: Any) -> None:
        self.certificate = certificate
        super().__init__("certificate failed")


def certified_sample(
    draw: Callable[[np.random.Generator], T],
    seed: int,
    what: str,
    max_retries: int | None = None,
) -> tuple[T, int]:
    """Draw until ``draw`` returns without raising ``UncertifiedSample``.

    Args:
        draw: Samples one candidate from the generator and certifies it.
        seed: Seed of the generator shared by all attempts.
        what: Name of the choice, for logs and errors.
        max_retries: Attempt budget (default ``Settings.max_retries``).

    Returns:
        The certified candidate and the number of attempts used.

    Raises:
        GenericityError: If every attempt failed; carries the last certificate.
    """
    budget = get_settings().max_retries if max_retries is None else max_retries
    rng = np.random.default_rng(seed)
    retrying = Retrying(
        stop=stop_after_attempt(budget),
        retry=retry_if_exception_type(UncertifiedSample),
        before_sleep=before_sleep_log(logger, logging.DEBUG),
        reraise=True,
    )
    try:
        result = retrying(draw, rng)
    except UncertifiedSample as e:
        raise GenericityError(
            f"no certified {what} after {budget} attempts", e.certificate, budget
        ) from e
    attempts = int(retrying.statistics.get("attempt_number", 1))
    logger.debug("%s certified after %d attempt(s)", what, attempts)
    return result, attempts


def random_form(
    rng: np.random.Generator, num_vars: int, degree: int, field: FieldSpec
) -> Polynomial:
    """A form of one degree with independent seeded coefficients."""
    terms = {m: field.random_element(rng) for m in monomials_of_degree(num_vars, degree)}
    return Polynomial.from_terms(terms, num_vars, field)


def random_linear_forms(
    rng: np.random.Generator, count: int, num_vars: int, field: FieldSpec
) -> list[Polynomial]:
    """``count`` seeded random linear forms in ``num_vars`` variables."""
    return [random_form(rng, num_vars, 1, field) for _ in range(count)]
