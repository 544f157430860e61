"""Exception hierarchy for the verification suite.

Library code raises these; composite checks catch ``LogtanError`` per check
and record the message, and the CLI maps them to exit codes.
"""

from typing import Any


class LogtanError(Exception):
    """Base class for every error raised by the suite."""


class PolynomialSyntaxError(LogtanError, ValueError):
    """Polynomial text does not conform to the grammar.

    Attributes:
        text: The offending input.
        offset: Byte offset (UTF-8) of the first unparsable character.
    """

    def __init__(self, message: str, text: str, offset: int) -> None:
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte offset {offset}")


class VariableIndexError(PolynomialSyntaxError):
    """A variable index is not below the ring's number of variables."""


class CoefficientDivisionError(PolynomialSyntaxError):
    """A coefficient denominator is zero in the coefficient field."""


class FieldMismatchError(LogtanError, ValueError):
    """Operands live in different polynomial rings."""


class NotHomogeneousError(LogtanError, ValueError):
    """A homogeneous input was required."""


class HypothesisError(LogtanError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class ScaleError(LogtanError):
    """The instance is beyond the engine's desk-scale limits."""


class DegreeBoundExceeded(LogtanError):
    """The resolution engine hit its internal degree cap.

    Attributes:
        cap: The degree cap in force.
        step: Homological step at which completeness could not be certified.
    """

    def __init__(self, message: str, cap: int, step: int) -> None:
        self.cap = cap
        self.step = step
        super().__init__(f"{message} (cap={cap}, step={step})")


class GenericityError(LogtanError):
    """Seeded resampling did not produce a certified generic choice.

    Attributes:
        certificate: The last failed certificate, when one exists.
        attempts: Number of samples drawn.
    """

    def __init__(self, message: str, certificate: Any = None, attempts: int = 0) -> None:
        self.certificate = certificate
        self.attempts = attempts
        super().__init__(message)
