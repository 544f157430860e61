"""Recursive-descent parser for the polynomial text format.

Grammar (whitespace between tokens is ignored)::

    poly   := [sign] term (('+' | '-') term)*
    term   := [coeff] ('*'? factor)+ | coeff
    factor := 'x' index ('^' exponent)?
    coeff  := integer | integer '/' integer

Indices and exponents are nonnegative decimal integers; the exponent of a
variable within one term may not exceed ``Settings.max_exponent``. The
optional leading sign lets every canonically printed polynomial (which may
start with '-') parse back to itself.
"""

from fractions import Fraction
from typing import Any

from src.config import get_settings
from src.errors import (
    CoefficientDivisionError,
    PolynomialSyntaxError,
    VariableIndexError,
)
from src.kernel.fields import FieldSpec
from src.kernel.polynomial import VAR_PREFIX, Exponents, Polynomial


class _PolynomialParser:
    """Single-use parser over one input string."""

    def __init__(self, text: str, num_vars: int, field: FieldSpec) -> None:
        self.text = text
        self.num_vars = num_vars
        self.field = field
        self.pos = 0
        self.terms: dict[Exponents, Any] = {}
        self.max_exponent = get_settings().max_exponent

    def error(
        self, message: str, pos: int | None = None, cls: type = PolynomialSyntaxError
    ) -> PolynomialSyntaxError:
        at = self.pos if pos is None else pos
        return cls(message, self.text, len(self.text[:at].encode("utf-8")))

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip_space()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a decimal integer")
        return int(self.text[start : self.pos])

    def parse(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        self.term(sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.term(sign)
        if self.peek():
            raise self.error(f"unexpected character {self.peek()!r}")
        return Polynomial.from_terms(
            {m: c for m, c in self.terms.items() if c}, self.num_vars, self.field
        )

    def term(self, sign: int) -> None:
        exps = [0] * self.num_vars
        coeff: Any = self.field.element(sign)
        ch = self.peek()
        if ch.isdigit():
            coeff = coeff * self.coefficient()
            if self.peek() == "*":
                self.pos += 1
                self.factor(exps)
            elif self.peek() == VAR_PREFIX:
                self.factor(exps)
        elif ch == VAR_PREFIX:
            self.factor(exps)
        else:
            raise self.error("expected a coefficient or a variable")
        while self.peek() in ("*", VAR_PREFIX):
            if self.peek() == "*":
                self.pos += 1
            self.factor(exps)
        key = tuple(exps)
        K = self.field.domain
        self.terms[key] = self.terms.get(key, K.zero) + coeff

    def coefficient(self) -> Any:
        start = self.pos
        numerator = self.integer()
        if self.peek() != "/":
            return self.field.element(numerator)
        self.pos += 1
        denominator = self.integer()
        if denominator == 0:
            raise self.error("division by zero in coefficient", start, CoefficientDivisionError)
        try:
            return self.field.element(Fraction(numerator, denominator))
        except ZeroDivisionError:
            raise self.error(
                f"denominator {denominator} vanishes in {self.field.label}",
                start,
                CoefficientDivisionError,
            ) from None

    def factor(self, exps: list[int]) -> None:
        if self.peek() != VAR_PREFIX:
            raise self.error(f"expected variable '{VAR_PREFIX}<index>'")
        self.pos += 1
        if not self.text[self.pos : self.pos + 1].isdigit():
            raise self.error("expected a variable index")
        index_pos = self.pos
        index = self.integer()
        if index >= self.num_vars:
            raise self.error(
                f"variable index {index} out of range for {self.num_vars} variables",
                index_pos,
                VariableIndexError,
            )
        exponent = 1
        exponent_pos = index_pos
        if self.peek() == "^":
            self.pos += 1
            self.skip_space()
            exponent_pos = self.pos
            exponent = self.integer()
        if exps[index] + exponent > self.max_exponent:
            raise self.error(
                f"exponent of {VAR_PREFIX}{index} exceeds the limit {self.max_exponent}",
                exponent_pos,
            )
        exps[index] += exponent


def parse_polynomial(text: str, num_vars: int, field: FieldSpec) -> Polynomial:
    """Parse polynomial text into a canonical ``Polynomial``.

    Args:
        text: Input conforming to the module grammar.
        num_vars: Number of ring variables; every index must be below it.
        field: Coefficient field.

    Returns:
        The parsed polynomial; like terms are combined and cancelled.

    Raises:
        PolynomialSyntaxError: On malformed input (carries the byte offset), or
            when a variable's exponent in a term exceeds ``Settings.max_exponent``.
        VariableIndexError: If a variable index is ``>= num_vars``.
        CoefficientDivisionError: If a denominator vanishes in the field.

    Examples:
        >>> QQ = FieldSpec.rationals()
        >>> str(parse_polynomial("x0^2*x1 + 3*x2^3", 3, QQ))
        'x0^2*x1 + 3*x2^3'
        >>> parse_polynomial("x0*x1 - x1*x0", 2, QQ).is_zero
        True
    """
    return _PolynomialParser(text, num_vars, field).parse()


def parse_polynomials(texts: list[str], num_vars: int, field: FieldSpec) -> list[Polynomial]:
    """Parse several polynomials into one ring."""
    return [parse_polynomial(t, num_vars, field) for t in texts]
