"""Named check records shared by the composite runners.

A composite run (the determinant suite, the self-test battery) executes many
independent checks. Each one is wrapped by ``run_check``: a ``LogtanError``
is recorded on the check instead of aborting the run, classified so the CLI
can tell a failed verification from an instance that was out of reach.
"""

import logging
from collections.abc import Callable
from enum import Enum
from typing import Any

from pydantic import Field, PrivateAttr

from src.errors import DegreeBoundExceeded, GenericityError, LogtanError, ScaleError
from src.report import ReportModel

logger = logging.getLogger(__name__)


class ErrorKind(str, Enum):
    """Why a check produced no verdict."""

    SCALE = "scale"
    DEGENERACY = "degeneracy"
    ERROR = "error"


class CheckRecord(ReportModel):
    """Outcome of one named check.

    Attributes:
        name: Check name.
        params: Parameters that identify the instance (n, flavor, seed, ...).
        passed: Verdict; false when the check errored.
        data: The check's own report.
        error_kind: Set when the check raised.
        error_message: The raised message.
    """

    name: str
    params: dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(default=False, alias="pass")
    data: dict[str, Any] | None = None
    error_kind: ErrorKind | None = None
    error_message: str | None = None

    _report: ReportModel | None = PrivateAttr(default=None)

    @property
    def report(self) -> ReportModel | None:
        """The check's report object (not serialized), None on error."""
        return self._report


def classify(error: LogtanError) -> ErrorKind:
    """Map an error to its kind."""
    if isinstance(error, ScaleError | DegreeBoundExceeded):
        return ErrorKind.SCALE
    if isinstance(error, GenericityError):
        return ErrorKind.DEGENERACY
    return ErrorKind.ERROR


def run_check(
    name: str,
    check: Callable[[], ReportModel],
    verdict: Callable[[Any], bool],
    **params: Any,
) -> CheckRecord:
    """Run one check and record its verdict or its error.

    Args:
        name: Check name.
        check: Computes the check's report.
        verdict: Reads the pass flag off the report.
        **params: Instance parameters recorded with the result.

    Returns:
        The record; errors never propagate.
    """
    logger.info("check %s %s", name, params)
    try:
        report = check()
    except LogtanError as e:
        logger.error("check %s failed with %s: %s", name, type(e).__name__, e)
        return CheckRecord(
            name=name,
            params=params,
            passed=False,
            error_kind=classify(e),
            error_message=str(e),
        )
    passed = bool(verdict(report))
    if not passed:
        logger.warning("check %s did not pass", name)
    record = CheckRecord(name=name, params=params, passed=passed, data=report.to_dict())
    record._report = report
    return record


def summarize(records: list[CheckRecord]) -> tuple[bool, ErrorKind | None]:
    """Overall pass flag and the most severe error kind among the records.

    Scale problems outrank degeneracy, which outranks plain errors.
    """
    kinds = {r.error_kind for r in records if r.error_kind is not None}
    for kind in (ErrorKind.SCALE, ErrorKind.DEGENERACY, ErrorKind.ERROR):
        if kind in kinds:
            return False, kind
    return all(r.passed for r in records), None
