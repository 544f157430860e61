#!/usr/bin/env python3
"""Unit tests for src/groebner/ideal.py and src/groebner/hilbert.py.

Test coverage includes:
- Ideal construction and ring checks
- Gröbner bases, membership, equality and the Buchberger criterion
- Intersections, colon ideals and saturation
- Hilbert functions, polynomials and the (projDim, degree) summary, with
  the leading-term computation checked against dense linear algebra
"""

import pytest

from src.errors import FieldMismatchError, NotHomogeneousError
from src.groebner.hilbert import (
    dim_deg,
    hilbert_function,
    hilbert_function_dense,
    hilbert_polynomial_data,
    k_polynomial,
    krull_dim,
    standard_monomials,
)
from src.groebner.ideal import (
    Ideal,
    colon,
    colon_polynomial,
    contains,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    ideal_sum,
    intersect,
    irrelevant_ideal,
    is_groebner,
    normal_form,
    saturate,
)
from src.kernel.fields import FieldSpec
from src.kernel.parser import parse_polynomial, parse_polynomials
from src.kernel.polynomial import Polynomial


def _ideal(texts: list[str], num_vars: int, field: FieldSpec) -> Ideal:
    return Ideal(parse_polynomials(texts, num_vars, field))


class TestIdeal:
    """Test cases for the Ideal class."""

    def test_empty_needs_ring(self) -> None:
        """Test that an ideal without generators needs its ring."""
        with pytest.raises(ValueError):
            Ideal([])

    def test_zero_ideal(self, qq: FieldSpec) -> None:
        """Test the zero ideal and ignored zero generators."""
        assert Ideal([], 3, qq).is_zero
        assert Ideal([Polynomial.zero(3, qq)]).is_zero

    def test_mixed_rings(self, qq: FieldSpec) -> None:
        """Test that generators must share one ring."""
        with pytest.raises(FieldMismatchError):
            Ideal([Polynomial.variable(0, 2, qq), Polynomial.variable(0, 3, qq)])

    def test_unit_ideal(self, qq: FieldSpec) -> None:
        """Test detection of the whole ring."""
        assert _ideal(["x0", "x0 + 1"], 2, qq).is_unit
        assert not _ideal(["x0", "x1"], 2, qq).is_unit

    def test_groebner_is_reduced(self, qq: FieldSpec) -> None:
        """Test that the basis is reduced and monic."""
        basis = groebner_basis(_ideal(["x0^2", "x0"], 1, qq))
        assert [str(g) for g in basis.generators] == ["x0"]
        basis = _ideal(["2*x0 + 4*x1"], 2, qq).groebner
        assert [str(g) for g in basis] == ["x0 + 2*x1"]

    def test_groebner_is_idempotent(self, qq: FieldSpec) -> None:
        """Test that recomputing a reduced basis returns it unchanged."""
        i = _ideal(["x0^2 - x1*x2", "x0*x1 - x2^2"], 3, qq)
        once = groebner_basis(i)
        assert groebner_basis(Ideal(list(once.generators))).generators == once.generators

    def test_buchberger_criterion(self, qq: FieldSpec) -> None:
        """Test is_groebner on a basis and on a non-basis."""
        i = _ideal(["x0^2 + x1", "x0*x1"], 2, qq)
        assert is_groebner(list(i.groebner))
        assert not is_groebner(list(i.generators))


class TestMembership:
    """Test cases for normal forms, membership and equality."""

    def test_contains(self, qq: FieldSpec) -> None:
        """Test ideal membership."""
        i = _ideal(["x0", "x1"], 3, qq)
        assert contains(i, parse_polynomial("x0*x2 + x1^2", 3, qq))
        assert not contains(i, parse_polynomial("x2", 3, qq))

    def test_normal_form(self, qq: FieldSpec) -> None:
        """Test the remainder modulo a Gröbner basis."""
        i = _ideal(["x0 - x1"], 2, qq)
        assert normal_form(parse_polynomial("x0^2", 2, qq), i) == parse_polynomial("x1^2", 2, qq)

    def test_normal_form_ring_mismatch(self, qq: FieldSpec) -> None:
        """Test that a polynomial from another ring is refused."""
        with pytest.raises(FieldMismatchError):
            normal_form(Polynomial.variable(0, 3, qq), _ideal(["x0"], 2, qq))

    def test_equality_of_generating_sets(self, qq: FieldSpec) -> None:
        """Test equality of ideals given by different generators."""
        a = _ideal(["x0", "x1"], 2, qq)
        b = _ideal(["x0 + x1", "x0 - x1"], 2, qq)
        assert ideal_equal(a, b)
        assert ideal_contains(a, b) and ideal_contains(b, a)

    def test_equality_over_prime_field(self) -> None:
        """Test equality over GF(3), where 2 is invertible."""
        gf3 = FieldSpec.prime_field(3)
        assert ideal_equal(_ideal(["x0 + x1", "x0 - x1"], 2, gf3), _ideal(["x0", "x1"], 2, gf3))

    def test_equality_needs_same_ring(self, qq: FieldSpec) -> None:
        """Test that ideals of different rings are never equal."""
        assert not ideal_equal(_ideal(["x0"], 2, qq), _ideal(["x0"], 3, qq))

    def test_sum(self, qq: FieldSpec) -> None:
        """Test the sum of two ideals."""
        total = ideal_sum(_ideal(["x0"], 2, qq), _ideal(["x1"], 2, qq))
        assert ideal_equal(total, irrelevant_ideal(2, qq))


class TestIdealOperations:
    """Test cases for intersections, colons and saturation."""

    def test_intersect(self, qq: FieldSpec) -> None:
        """Test (x0) ∩ (x1) = (x0*x1)."""
        result = intersect(_ideal(["x0"], 2, qq), _ideal(["x1"], 2, qq))
        assert ideal_equal(result, _ideal(["x0*x1"], 2, qq))

    def test_intersect_with_zero(self, qq: FieldSpec) -> None:
        """Test that intersecting with the zero ideal gives zero."""
        assert intersect(_ideal(["x0"], 2, qq), Ideal([], 2, qq)).is_zero

    def test_colon_polynomial(self, qq: FieldSpec) -> None:
        """Test (x0*x1) : x1 = (x0)."""
        result = colon_polynomial(_ideal(["x0*x1"], 2, qq), parse_polynomial("x1", 2, qq))
        assert ideal_equal(result, _ideal(["x0"], 2, qq))

    def test_colon_by_zero_is_unit(self, qq: FieldSpec) -> None:
        """Test that i : 0 is the whole ring."""
        assert colon_polynomial(_ideal(["x0"], 2, qq), Polynomial.zero(2, qq)).is_unit

    def test_colon_ideal(self, qq: FieldSpec) -> None:
        """Test (x0^2, x0*x1) : (x0, x1) = (x0)."""
        i = _ideal(["x0^2", "x0*x1"], 2, qq)
        assert ideal_equal(colon(i, irrelevant_ideal(2, qq)), _ideal(["x0"], 2, qq))

    def test_saturate_removes_embedded_point(self, qq: FieldSpec) -> None:
        """Test saturation by the irrelevant ideal."""
        i = _ideal(["x0^2", "x0*x1"], 2, qq)
        saturated = saturate(i, irrelevant_ideal(2, qq))
        assert [str(g) for g in saturated.generators] == ["x0"]

    def test_saturate_is_idempotent(self, qq: FieldSpec) -> None:
        """Test that saturating twice changes nothing and contains the input."""
        i = _ideal(["x0^2*x1", "x0*x1^2", "x0^3"], 3, qq)
        m = irrelevant_ideal(3, qq)
        once = saturate(i, m)
        assert ideal_contains(once, i)
        assert ideal_equal(saturate(once, m), once)

    def test_saturate_artinian_is_unit(self, qq: FieldSpec) -> None:
        """Test that an irrelevant-primary ideal saturates to the unit ideal."""
        i = _ideal(["x0^2", "x1^3"], 2, qq)
        assert saturate(i, irrelevant_ideal(2, qq)).is_unit

    def test_irrelevant_ideal_subset(self, qq: FieldSpec) -> None:
        """Test the ideal of a chosen set of variables."""
        i = irrelevant_ideal(3, qq, [0, 2])
        assert [str(g) for g in i.generators] == ["x0", "x2"]


class TestHilbert:
    """Test cases for Hilbert functions and polynomials."""

    def test_polynomial_ring(self, qq: FieldSpec) -> None:
        """Test the Hilbert function of the whole polynomial ring."""
        assert hilbert_function(Ideal([], 4, qq), 3).dims() == [1, 4, 10, 20]

    def test_k_polynomial(self, qq: FieldSpec) -> None:
        """Test the K-polynomial of a complete intersection of two lines."""
        assert k_polynomial(_ideal(["x0", "x1"], 2, qq)) == [1, -2, 1]

    def test_unit_ideal(self, qq: FieldSpec) -> None:
        """Test the conventions for the unit ideal."""
        unit = Ideal([Polynomial.constant(1, 3, qq)])
        assert k_polynomial(unit) == []
        assert krull_dim(unit) == -1
        assert dim_deg(unit) == (-1, 0)

    def test_plane_conic(self, qq: FieldSpec) -> None:
        """Test a conic in the plane: 2t + 1 points in degree t."""
        conic = _ideal(["x0^2 + x1^2 + x2^2"], 3, qq)
        assert hilbert_function(conic, 4).dims() == [1, 3, 5, 7, 9]
        data = hilbert_polynomial_data(conic)
        assert data.coefficients == ["1", "2"]
        assert data.degree == 2
        assert dim_deg(conic) == (1, 2)

    def test_two_lines(self, qq: FieldSpec) -> None:
        """Test the regularity index of two points on the line."""
        data = hilbert_polynomial_data(_ideal(["x0*x1"], 2, qq))
        assert data.krull_dim == 1
        assert data.h_vector == [1, 1]
        assert data.regularity_index == 1
        assert data.value(7) == 2

    def test_point(self, qq: FieldSpec) -> None:
        """Test a reduced point in the projective plane."""
        assert dim_deg(_ideal(["x0", "x1"], 3, qq)) == (0, 1)

    def test_artinian(self, qq: FieldSpec) -> None:
        """Test an Artinian algebra: empty variety, finite Hilbert function."""
        i = _ideal(["x0^2", "x1^2"], 2, qq)
        assert hilbert_function(i, 4).dims() == [1, 2, 1, 0, 0]
        assert dim_deg(i) == (-1, 0)

    def test_value_lookup(self, qq: FieldSpec) -> None:
        """Test lookup of one recorded value."""
        hf = hilbert_function(_ideal(["x0"], 2, qq), 2)
        assert hf.dim(2) == 1
        with pytest.raises(KeyError):
            hf.dim(3)

    def test_standard_monomials(self, qq: FieldSpec) -> None:
        """Test monomials outside the leading-term ideal."""
        i = _ideal(["x0^2", "x1^2"], 2, qq)
        assert standard_monomials(i, 2) == [(1, 1)]

    def test_not_homogeneous(self, qq: FieldSpec) -> None:
        """Test that inhomogeneous ideals are refused."""
        with pytest.raises(NotHomogeneousError):
            hilbert_function(_ideal(["x0^2 + x1"], 2, qq), 2)

    @pytest.mark.parametrize(
        ("texts", "num_vars"),
        [
            (["x0^2 - x1*x2", "x0*x1 - x2^2", "x1^2 - x0*x2"], 3),
            (["x0*x1", "x1*x2", "x2*x3"], 4),
            (["x0^3 + x1^3 + x2^3"], 3),
            (["x0^2", "x0*x1", "x1^3"], 3),
        ],
    )
    def test_dense_agreement(self, texts: list[str], num_vars: int, gf_small: FieldSpec) -> None:
        """Test leading-term and dense Hilbert functions against each other."""
        i = _ideal(texts, num_vars, gf_small)
        assert hilbert_function(i, 6).dims() == hilbert_function_dense(i, 6)

    def test_twisted_cubic(self, qq: FieldSpec) -> None:
        """Test the twisted cubic: 3t + 1 in degree t, a curve of degree 3."""
        cubic = _ideal(["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"], 4, qq)
        assert hilbert_function(cubic, 3).dims() == [1, 4, 7, 10]
        assert dim_deg(cubic) == (1, 3)
