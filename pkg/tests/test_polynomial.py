#!/usr/bin/env python3
"""Unit tests for src/kernel: coefficient fields, polynomials and the parser.

Test coverage includes:
- Field construction, labels and conversions
- Polynomial arithmetic, canonical printing and degree queries
- Differentiation, evaluation and substitution
- Parsing, including byte offsets of syntax errors
"""

from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import (
    CoefficientDivisionError,
    FieldMismatchError,
    PolynomialSyntaxError,
    VariableIndexError,
)
from src.kernel.fields import FieldSpec
from src.kernel.parser import parse_polynomial, parse_polynomials
from src.kernel.polynomial import (
    Polynomial,
    differentiate,
    evaluate,
    graded_basis,
    monomials_of_degree,
)


class TestFieldSpec:
    """Test cases for FieldSpec."""

    def test_labels(self) -> None:
        """Test the human-readable field names."""
        assert FieldSpec.rationals().label == "QQ"
        assert FieldSpec.prime_field(7).label == "GF(7)"

    def test_characteristic(self) -> None:
        """Test the characteristic of both kinds of field."""
        assert FieldSpec.rationals().characteristic == 0
        assert FieldSpec.prime_field(101).characteristic == 101
        assert FieldSpec.prime_field(101).is_prime
        assert not FieldSpec.rationals().is_prime

    @pytest.mark.parametrize("p", [2, 4, 15, 1])
    def test_rejects_bad_characteristic(self, p: int) -> None:
        """Test that composite numbers and 2 are refused."""
        with pytest.raises(ValidationError):
            FieldSpec.prime_field(p)

    def test_to_python_reduces(self) -> None:
        """Test that prime-field values come back in [0, p)."""
        gf = FieldSpec.prime_field(7)
        assert gf.to_python(gf.element(-1)) == 6
        assert gf.to_python(gf.element(Fraction(1, 2))) == 4

    def test_rational_element_roundtrip(self, qq: FieldSpec) -> None:
        """Test that rationals convert exactly."""
        assert qq.to_python(qq.element(Fraction(-3, 4))) == Fraction(-3, 4)

    def test_symmetric_int(self) -> None:
        """Test symmetric representatives."""
        gf = FieldSpec.prime_field(7)
        assert gf.symmetric_int(gf.element(6)) == -1
        assert gf.symmetric_int(gf.element(3)) == 3

    def test_supports_sampling(self) -> None:
        """Test the size condition on the prime."""
        assert FieldSpec.prime_field(7).supports_sampling(6)
        assert not FieldSpec.prime_field(7).supports_sampling(7)
        assert FieldSpec.rationals().supports_sampling(10**9)

    def test_random_element_is_seeded(self, gf_small: FieldSpec) -> None:
        """Test that equal seeds draw equal elements."""
        a = gf_small.random_element(np.random.default_rng(5))
        b = gf_small.random_element(np.random.default_rng(5))
        assert a == b

    def test_fields_are_hashable(self) -> None:
        """Test that equal fields compare and hash equal."""
        assert FieldSpec.prime_field(7) == FieldSpec.prime_field(7)
        assert hash(FieldSpec.rationals()) == hash(FieldSpec.rationals())


class TestPolynomial:
    """Test cases for Polynomial arithmetic and printing."""

    def test_zero_prints_as_zero(self, qq: FieldSpec) -> None:
        """Test the canonical text of zero."""
        zero = Polynomial.zero(3, qq)
        assert zero.is_zero
        assert str(zero) == "0"

    def test_canonical_order(self, qq: FieldSpec) -> None:
        """Test that terms print in descending grevlex order."""
        f = parse_polynomial("x3*x0 - x2*x1", 4, qq)
        assert str(f) == "-x1*x2 + x0*x3"

    def test_prime_field_symmetric_coefficients(self) -> None:
        """Test that prime-field coefficients print symmetrically."""
        gf = FieldSpec.prime_field(7)
        f = parse_polynomial("6*x0 + 3*x1", 2, gf)
        assert str(f) == "-x0 + 3*x1"

    def test_rational_coefficients(self, qq: FieldSpec) -> None:
        """Test that fractions survive parsing and printing."""
        f = parse_polynomial("1/2*x0^2 - 3/4*x1^2", 2, qq)
        assert f.coefficient((2, 0)) == Fraction(1, 2)
        assert f.coefficient((0, 2)) == Fraction(-3, 4)

    def test_arithmetic(self, qq: FieldSpec) -> None:
        """Test ring operations against a hand expansion."""
        x0 = Polynomial.variable(0, 2, qq)
        x1 = Polynomial.variable(1, 2, qq)
        assert (x0 + x1) * (x0 - x1) == x0**2 - x1**2
        assert (x0 + x1) ** 2 == parse_polynomial("x0^2 + 2*x0*x1 + x1^2", 2, qq)

    def test_degree_and_homogeneity(self, qq: FieldSpec) -> None:
        """Test total degree and homogeneity."""
        f = parse_polynomial("x0^3 + x0*x1", 2, qq)
        assert f.total_degree == 3
        assert not f.is_homogeneous
        assert parse_polynomial("x0^2*x1 + x1^3", 2, qq).is_homogeneous

    def test_leading_monomial(self, qq: FieldSpec) -> None:
        """Test the grevlex leading monomial."""
        f = parse_polynomial("x0*x2 + x1^2", 3, qq)
        assert f.leading_monomial == (0, 2, 0)

    def test_monic(self, qq: FieldSpec) -> None:
        """Test normalisation of the leading coefficient."""
        f = parse_polynomial("3*x0 + 6*x1", 2, qq).monic()
        assert f.leading_coefficient == 1

    def test_mixed_rings_rejected(self, qq: FieldSpec, gf_small: FieldSpec) -> None:
        """Test that polynomials over different rings do not combine."""
        with pytest.raises(FieldMismatchError):
            Polynomial.variable(0, 2, qq) + Polynomial.variable(0, 3, qq)
        with pytest.raises(FieldMismatchError):
            Polynomial.variable(0, 2, qq) * Polynomial.variable(0, 2, gf_small)

    def test_embed(self, qq: FieldSpec) -> None:
        """Test viewing a polynomial in a larger ring."""
        f = parse_polynomial("x0*x1", 2, qq).embed(4)
        assert f.num_vars == 4
        assert str(f) == "x0*x1"
        with pytest.raises(ValueError):
            f.embed(3)


class TestCalculus:
    """Test cases for differentiation, evaluation and substitution."""

    def test_differentiate(self, qq: FieldSpec) -> None:
        """Test formal partial derivatives."""
        f = parse_polynomial("x0*x1^3 + x2^4", 3, qq)
        assert str(differentiate(f, 1)) == "3*x0*x1^2"
        assert str(differentiate(f, 2)) == "4*x2^3"

    def test_differentiate_in_characteristic(self) -> None:
        """Test that derivatives vanish when the exponent is divisible by p."""
        gf = FieldSpec.prime_field(3)
        assert differentiate(parse_polynomial("x0^3", 1, gf), 0).is_zero

    def test_euler_identity(self, qq: FieldSpec) -> None:
        """Test sum x_i dF/dx_i = d * F for a form of degree d."""
        F = parse_polynomial("x0^2*x3 + x1^2*x3 + x2^2*x3 + x0^3 + x1^3 + x2^3", 4, qq)
        total = Polynomial.zero(4, qq)
        for i in range(4):
            total = total + Polynomial.variable(i, 4, qq) * differentiate(F, i)
        assert total == F * 3

    def test_evaluate(self, qq: FieldSpec) -> None:
        """Test evaluation at a rational point."""
        f = parse_polynomial("x0^2 + x1^2", 2, qq)
        assert evaluate(f, [1, 2]) == 5
        assert evaluate(f, [Fraction(1, 2), 0]) == Fraction(1, 4)

    def test_substitute(self, qq: FieldSpec) -> None:
        """Test substitution of linear forms into another ring."""
        f = parse_polynomial("x0*x1", 2, qq)
        images = parse_polynomials(["x0 + x1", "x0 - x1"], 2, qq)
        assert f.substitute(images) == parse_polynomial("x0^2 - x1^2", 2, qq)

    def test_monomial_counts(self) -> None:
        """Test the number of monomials of each degree."""
        assert len(monomials_of_degree(4, 2)) == 10
        assert len(monomials_of_degree(3, 0)) == 1
        assert len(graded_basis(3, 3)) == 10


class TestParser:
    """Test cases for parse_polynomial."""

    def test_like_terms_cancel(self, qq: FieldSpec) -> None:
        """Test that like terms combine and cancel."""
        assert parse_polynomial("x0*x1 - x1*x0", 2, qq).is_zero
        assert str(parse_polynomial("x0 + x0", 1, qq)) == "2*x0"

    def test_whitespace_and_juxtaposition(self, qq: FieldSpec) -> None:
        """Test that whitespace is ignored and '*' between factors is optional."""
        assert parse_polynomial(" 2 x0 x1 ^2 ", 2, qq) == parse_polynomial("2*x0*x1^2", 2, qq)

    def test_leading_sign(self, qq: FieldSpec) -> None:
        """Test that canonical text starting with '-' parses back to itself."""
        f = parse_polynomial("-x1*x2 + x0*x3", 4, qq)
        assert str(parse_polynomial(str(f), 4, qq)) == str(f)

    def test_constant(self, qq: FieldSpec) -> None:
        """Test a bare coefficient."""
        f = parse_polynomial("7", 2, qq)
        assert f.total_degree == 0
        assert f.coefficient((0, 0)) == 7

    def test_syntax_error_offset(self, qq: FieldSpec) -> None:
        """Test that the error carries the offset of the bad character."""
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_polynomial("x0 + * x1", 2, qq)
        assert excinfo.value.offset == 5
        assert excinfo.value.text == "x0 + * x1"

    def test_offset_counts_bytes(self, qq: FieldSpec) -> None:
        """Test that offsets are UTF-8 byte offsets."""
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_polynomial("x0 é", 1, qq)
        assert excinfo.value.offset == 3
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_polynomial("x0 + x0 é", 1, qq)
        assert excinfo.value.offset == 8

    def test_trailing_garbage(self, qq: FieldSpec) -> None:
        """Test that unconsumed input is an error."""
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial("x0 x", 1, qq)

    def test_variable_out_of_range(self, qq: FieldSpec) -> None:
        """Test that indices at or above num_vars are refused."""
        with pytest.raises(VariableIndexError) as excinfo:
            parse_polynomial("x0 + x3", 3, qq)
        assert excinfo.value.offset == 6

    def test_zero_denominator(self, qq: FieldSpec) -> None:
        """Test that a zero denominator is refused."""
        with pytest.raises(CoefficientDivisionError):
            parse_polynomial("1/0*x0", 1, qq)

    def test_denominator_divisible_by_p(self) -> None:
        """Test that a denominator vanishing in GF(p) is refused."""
        with pytest.raises(CoefficientDivisionError):
            parse_polynomial("1/7*x0", 1, FieldSpec.prime_field(7))

    def test_errors_are_value_errors(self, qq: FieldSpec) -> None:
        """Test that parse errors are usage errors for the CLI."""
        with pytest.raises(ValueError):
            parse_polynomial("", 1, qq)

    def test_exponent_limit(self, qq: FieldSpec, fresh_settings: None) -> None:
        """Test that a huge exponent is refused at the offset of its digits."""
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_polynomial("x0 + x1^99999999", 2, qq)
        assert excinfo.value.offset == 8
        assert "exceeds the limit 256" in str(excinfo.value)
        assert parse_polynomial("x1^256", 2, qq).total_degree == 256

    def test_exponent_limit_accumulates(
        self, qq: FieldSpec, fresh_settings: None, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that repeated factors count toward the configured limit."""
        monkeypatch.setenv("LOGTAN_MAX_EXPONENT", "4")
        assert str(parse_polynomial("x0^2*x0^2", 1, qq)) == "x0^4"
        with pytest.raises(PolynomialSyntaxError) as excinfo:
            parse_polynomial("x0^2*x0^3", 1, qq)
        assert excinfo.value.offset == 8
