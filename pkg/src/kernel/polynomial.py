"""Exact multivariate polynomials over a ``FieldSpec``.

Polynomials live in the ring k[x0, ..., x{n-1}] with the graded reverse
lexicographic order. The heavy lifting (term dictionaries, arithmetic,
division) is sympy's sparse ``PolyElement``; ``Polynomial`` is a thin,
immutable wrapper that pins the field, the number of variables and the
canonical text form used in every report.
"""

from collections.abc import Mapping, Sequence
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any

from pydantic import BaseModel, ConfigDict, computed_field
from sympy.polys.orderings import MonomialOrder, grevlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from src.errors import FieldMismatchError
from src.kernel.fields import FieldSpec, FieldValue

VAR_PREFIX = "x"

Exponents = tuple[int, ...]


class Monomial(BaseModel):
    """A monomial x^e as an exponent vector.

    Attributes:
        exponents: Nonnegative exponent per variable.
    """

    model_config = ConfigDict(frozen=True)

    exponents: Exponents

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total_degree(self) -> int:
        """Sum of the exponents."""
        return sum(self.exponents)

    def __str__(self) -> str:
        return format_monomial(self.exponents) or "1"


@lru_cache(maxsize=None)
def polynomial_ring(
    num_vars: int, field: FieldSpec, order: MonomialOrder = grevlex
) -> PolyRing:
    """Return the (cached) sympy ring k[x0..x{num_vars-1}].

    Args:
        num_vars: Number of variables, at least 1.
        field: Coefficient field.
        order: Monomial order; grevlex everywhere except elimination rings.

    Returns:
        The sympy ``PolyRing``.
    """
    if num_vars < 1:
        raise ValueError("a polynomial ring needs at least one variable")
    symbols = [f"{VAR_PREFIX}{i}" for i in range(num_vars)]
    R, *_ = ring(symbols, field.domain, order)
    return R


def format_monomial(exponents: Exponents) -> str:
    """Render exponents as ``x0^2*x3``; the unit monomial renders as ''."""
    factors = []
    for i, e in enumerate(exponents):
        if e == 1:
            factors.append(f"{VAR_PREFIX}{i}")
        elif e > 1:
            factors.append(f"{VAR_PREFIX}{i}^{e}")
    return "*".join(factors)


class Polynomial:
    """Immutable polynomial in a fixed ring.

    Supports ``+``, ``-``, ``*`` (by polynomials and by ``int``/``Fraction``
    scalars) and nonnegative integer powers. Equality compares ring and terms.

    Examples:
        >>> f = Polynomial.variable(0, 2, FieldSpec.rationals()) ** 2
        >>> str(f + Polynomial.variable(1, 2, FieldSpec.rationals()))
        'x0^2 + x1'
    """

    __slots__ = ("_rep", "_field", "_num_vars")

    def __init__(self, rep: PolyElement, field: FieldSpec) -> None:
        self._rep = rep
        self._field = field
        self._num_vars = rep.ring.ngens

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, field: FieldSpec) -> "Polynomial":
        """The zero polynomial."""
        return cls(polynomial_ring(num_vars, field).zero, field)

    @classmethod
    def constant(cls, value: FieldValue, num_vars: int, field: FieldSpec) -> "Polynomial":
        """A constant polynomial."""
        R = polynomial_ring(num_vars, field)
        return cls(R.ground_new(field.element(value)), field)

    @classmethod
    def variable(cls, index: int, num_vars: int, field: FieldSpec) -> "Polynomial":
        """The variable x_index."""
        if not 0 <= index < num_vars:
            raise IndexError(f"variable index {index} out of range 0..{num_vars - 1}")
        return cls(polynomial_ring(num_vars, field).gens[index], field)

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[Exponents, Any],
        num_vars: int,
        field: FieldSpec,
    ) -> "Polynomial":
        """Build a polynomial from ``{exponents: coefficient}``.

        Coefficients may be Python values or domain elements; zero
        coefficients are dropped.
        """
        R = polynomial_ring(num_vars, field)
        K = field.domain
        converted = {}
        for exps, coeff in terms.items():
            if len(exps) != num_vars:
                raise ValueError(f"monomial {exps} has wrong length for {num_vars} vars")
            converted[tuple(exps)] = (
                coeff if isinstance(coeff, K.dtype) else field.element(coeff)
            )
        return cls(R.from_dict(converted), field)

    def _wrap(self, rep: PolyElement) -> "Polynomial":
        return Polynomial(rep, self._field)

    # -- accessors --------------------------------------------------------

    @property
    def rep(self) -> PolyElement:
        """Underlying sympy element (treat as read-only)."""
        return self._rep

    @property
    def field(self) -> FieldSpec:
        """Coefficient field."""
        return self._field

    @property
    def num_vars(self) -> int:
        """Number of ring variables."""
        return self._num_vars

    @property
    def ring(self) -> PolyRing:
        """The sympy ring."""
        return self._rep.ring

    @property
    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return not self._rep

    @property
    def total_degree(self) -> int:
        """Largest total degree of a term, -1 for zero."""
        if not self._rep:
            return -1
        return max(sum(m) for m in self._rep.itermonoms())

    @property
    def is_homogeneous(self) -> bool:
        """Whether all terms share one total degree (zero counts as homogeneous)."""
        return len({sum(m) for m in self._rep.itermonoms()}) <= 1

    @property
    def leading_monomial(self) -> Exponents:
        """Grevlex-leading exponent vector."""
        if not self._rep:
            raise ValueError("the zero polynomial has no leading monomial")
        return self._rep.LM

    @property
    def leading_coefficient(self) -> FieldValue:
        """Coefficient of the leading monomial."""
        return self._field.to_python(self._rep.LC)

    def terms(self) -> list[tuple[Exponents, FieldValue]]:
        """Terms in canonical (descending grevlex) order."""
        return [(m, self._field.to_python(c)) for m, c in self._rep.terms()]

    def monomials(self) -> list[Exponents]:
        """Monomials in canonical order."""
        return [m for m, _ in self._rep.terms()]

    def coefficient(self, exponents: Exponents) -> FieldValue:
        """Coefficient of a monomial (zero when absent)."""
        return self._field.to_python(self._rep.get(tuple(exponents), self._field.domain.zero))

    def monic(self) -> "Polynomial":
        """Scale to leading coefficient 1 (zero stays zero)."""
        return self if self.is_zero else self._wrap(self._rep.monic())

    # -- arithmetic -------------------------------------------------------

    def _check_same_ring(self, other: "Polynomial") -> None:
        if other._num_vars != self._num_vars or other._field != self._field:
            raise FieldMismatchError(
                f"ring mismatch: {self._num_vars} vars over {self._field.label} vs "
                f"{other._num_vars} vars over {other._field.label}"
            )

    def _coerce(self, other: Any) -> PolyElement:
        if isinstance(other, Polynomial):
            self._check_same_ring(other)
            return other._rep
        return self.ring.ground_new(self._field.element(other))

    def __add__(self, other: Any) -> "Polynomial":
        return self._wrap(self._rep + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Polynomial":
        return self._wrap(self._rep - self._coerce(other))

    def __rsub__(self, other: Any) -> "Polynomial":
        return self._wrap(self._coerce(other) - self._rep)

    def __neg__(self) -> "Polynomial":
        return self._wrap(-self._rep)

    def __mul__(self, other: Any) -> "Polynomial":
        return self._wrap(self._rep * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        return self._wrap(self._rep**exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self._num_vars == other._num_vars
            and self._field == other._field
            and self._rep == other._rep
        )

    def __hash__(self) -> int:
        return hash((self._num_vars, self._field, frozenset(self._rep.items())))

    def __bool__(self) -> bool:
        return bool(self._rep)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, vars={self._num_vars}, field={self._field.label})"

    # -- structural operations --------------------------------------------

    def differentiate(self, var_index: int) -> "Polynomial":
        """See :func:`differentiate`."""
        return differentiate(self, var_index)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_i by ``images[i]``; the result lives in the images' ring.

        Args:
            images: One polynomial per variable, all in one ring.

        Returns:
            The composed polynomial.
        """
        if len(images) != self._num_vars:
            raise ValueError(f"need {self._num_vars} images, got {len(images)}")
        target = images[0]
        for image in images[1:]:
            target._check_same_ring(image)
        R = target.ring
        powers: list[dict[int, PolyElement]] = [{0: R.one} for _ in images]
        result = R.zero
        for exps, coeff in self._rep.iterterms():
            term = R.ground_new(coeff)
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = images[i]._rep ** e
                    term = term * cache[e]
            result = result + term
        return Polynomial(result, target._field)

    def embed(self, num_vars: int) -> "Polynomial":
        """View the polynomial in a ring with at least as many variables."""
        if num_vars < self._num_vars:
            raise ValueError("cannot embed into a ring with fewer variables")
        pad = (0,) * (num_vars - self._num_vars)
        R = polynomial_ring(num_vars, self._field)
        rep = R.from_dict({exps + pad: c for exps, c in self._rep.iterterms()})
        return Polynomial(rep, self._field)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text of a polynomial.

    Terms appear in descending grevlex order; prime-field coefficients use
    symmetric representatives; zero prints as ``0``.
    """
    if f.is_zero:
        return "0"
    field = f.field
    pieces: list[str] = []
    for exps, coeff in f.rep.terms():
        value = field.symmetric_int(coeff) if field.is_prime else field.to_python(coeff)
        negative = value < 0
        magnitude = str(abs(value))
        mono = format_monomial(exps)
        if not mono:
            body = magnitude
        elif magnitude == "1":
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def differentiate(f: Polynomial, var_index: int) -> Polynomial:
    """Formal partial derivative with respect to x_var_index.

    Coefficients are multiplied by exponents inside the field, so terms whose
    exponent is a multiple of the characteristic vanish.

    Args:
        f: Polynomial to differentiate.
        var_index: Index of the variable, ``0 <= var_index < f.num_vars``.

    Returns:
        The derivative, homogeneous of degree d-1 (or zero) when f is
        homogeneous of degree d.

    Raises:
        IndexError: If the index is out of range.

    Examples:
        >>> from src.kernel.parser import parse_polynomial
        >>> QQ = FieldSpec.rationals()
        >>> str(differentiate(parse_polynomial("x0*x1^3 + x2^4", 3, QQ), 0))
        'x1^3'
    """
    if not 0 <= var_index < f.num_vars:
        raise IndexError(f"variable index {var_index} out of range 0..{f.num_vars - 1}")
    return Polynomial(f.rep.diff(f.ring.gens[var_index]), f.field)


def evaluate(f: Polynomial, point: Sequence[Any]) -> FieldValue:
    """Exact evaluation at a point.

    Args:
        f: Polynomial.
        point: One field value per variable (``int``/``Fraction`` or domain
            elements).

    Returns:
        f(point) as ``Fraction`` (rationals) or ``int`` in ``[0, p)``.

    Examples:
        >>> from src.kernel.parser import parse_polynomial
        >>> evaluate(parse_polynomial("x0^2 + x1^2", 2, FieldSpec.rationals()), [1, 2])
        Fraction(5, 1)
    """
    return f.field.to_python(evaluate_element(f, point))


def evaluate_element(f: Polynomial, point: Sequence[Any]) -> Any:
    """Like :func:`evaluate` but returns the raw domain element."""
    if len(point) != f.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {f.num_vars}")
    K = f.field.domain
    values = [a if isinstance(a, K.dtype) else f.field.element(a) for a in point]
    total = K.zero
    for exps, coeff in f.rep.iterterms():
        term = coeff
        for a, e in zip(values, exps, strict=True):
            if e:
                term = term * a**e
        total = total + term
    return total


@lru_cache(maxsize=256)
def monomials_of_degree(num_vars: int, degree: int) -> tuple[Exponents, ...]:
    """Exponent vectors of one total degree, descending grevlex."""
    if degree < 0:
        return ()
    result = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        exps = [0] * num_vars
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    result.sort(key=grevlex, reverse=True)
    return tuple(result)


def graded_basis(num_vars: int, degree: int) -> list[Monomial]:
    """All monomials of a given total degree in canonical order.

    A negative degree yields the empty list by convention.

    Args:
        num_vars: Number of variables.
        degree: Total degree.

    Returns:
        ``C(degree + num_vars - 1, num_vars - 1)`` monomials.

    Examples:
        >>> len(graded_basis(4, 2))
        10
    """
    return [Monomial(exponents=m) for m in monomials_of_degree(num_vars, degree)]
