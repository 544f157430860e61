"""Ideals and their Gröbner bases.

The Buchberger engine is sympy's (``groebnertools.groebner`` with
``method="buchberger"``: Gebauer–Möller pair elimination and normal
selection strategy). This module adds what the suite builds on top of it:
normal forms, ideal membership and equality, intersections, colon ideals
and saturation. Everything runs in grevlex, except the auxiliary
elimination ring used for intersections.
"""

import logging
from collections.abc import Iterable, Sequence
from functools import cached_property, lru_cache

from sympy.polys.groebnertools import groebner as _sympy_groebner
from sympy.polys.groebnertools import is_groebner as _sympy_is_groebner
from sympy.polys.orderings import ProductOrder, grevlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from src.errors import FieldMismatchError
from src.kernel.fields import FieldSpec
from src.kernel.polynomial import Exponents, Polynomial, polynomial_ring

logger = logging.getLogger(__name__)

GROEBNER_METHOD = "buchberger"
ELIMINATION_VAR = "t"


class Ideal:
    """Ideal of k[x0..x{n-1}] given by generators, with a cached Gröbner basis.

    Args:
        generators: Generators, all in one ring. Zero generators are kept in
            the list but ignored by every computation.
        num_vars: Ring size; required when ``generators`` is empty.
        field: Coefficient field; required when ``generators`` is empty.
    """

    def __init__(
        self,
        generators: Iterable[Polynomial],
        num_vars: int | None = None,
        field: FieldSpec | None = None,
    ) -> None:
        gens = list(generators)
        if gens:
            num_vars = num_vars if num_vars is not None else gens[0].num_vars
            field = field if field is not None else gens[0].field
        if num_vars is None or field is None:
            raise ValueError("an ideal without generators needs num_vars and field")
        for g in gens:
            if g.num_vars != num_vars or g.field != field:
                raise FieldMismatchError("ideal generators live in different rings")
        self._generators = tuple(gens)
        self._num_vars = num_vars
        self._field = field

    @classmethod
    def _from_basis(cls, basis: list[Polynomial], num_vars: int, field: FieldSpec) -> "Ideal":
        ideal = cls(basis, num_vars, field)
        ideal.__dict__["groebner"] = tuple(basis)
        return ideal

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        """Generators as given."""
        return self._generators

    @property
    def num_vars(self) -> int:
        """Number of ring variables."""
        return self._num_vars

    @property
    def field(self) -> FieldSpec:
        """Coefficient field."""
        return self._field

    @property
    def ring(self) -> PolyRing:
        """The sympy grevlex ring."""
        return polynomial_ring(self._num_vars, self._field)

    @property
    def is_homogeneous(self) -> bool:
        """Whether every generator is homogeneous."""
        return all(g.is_homogeneous for g in self._generators)

    @cached_property
    def groebner(self) -> tuple[Polynomial, ...]:
        """Reduced, monic Gröbner basis in descending leading-term order."""
        reps = [g.rep for g in self._generators if not g.is_zero]
        if not reps:
            return ()
        basis = _sympy_groebner(reps, self.ring, method=GROEBNER_METHOD)
        logger.debug(
            "groebner: %d generators in %d vars -> %d basis elements",
            len(reps),
            self._num_vars,
            len(basis),
        )
        return tuple(Polynomial(b, self._field) for b in basis)

    @cached_property
    def leading_monomials(self) -> tuple[Exponents, ...]:
        """Leading monomials of the Gröbner basis (minimal generators of in(I))."""
        return tuple(g.leading_monomial for g in self.groebner)

    @property
    def is_unit(self) -> bool:
        """Whether the ideal is the whole ring."""
        return any(sum(m) == 0 for m in self.leading_monomials)

    @property
    def is_zero(self) -> bool:
        """Whether the ideal is the zero ideal."""
        return not self.groebner

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self._generators)
        return f"Ideal([{gens}], vars={self._num_vars}, field={self._field.label})"


def groebner_basis(i: Ideal) -> Ideal:
    """Reduced Gröbner basis of an ideal, as an ideal generated by it.

    The basis is reduced and monic with respect to grevlex, so computing it
    again returns the same generators.

    Args:
        i: The ideal.

    Returns:
        An ideal whose generators are the reduced Gröbner basis.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> QQ = FieldSpec.rationals()
        >>> basis = groebner_basis(Ideal(parse_polynomials(["x0^2", "x0"], 1, QQ)))
        >>> [str(g) for g in basis.generators]
        ['x0']
    """
    return Ideal._from_basis(list(i.groebner), i.num_vars, i.field)


def normal_form(f: Polynomial, i: Ideal) -> Polynomial:
    """Remainder of f on division by the reduced Gröbner basis of i.

    The result is zero if and only if f lies in i.
    """
    if f.num_vars != i.num_vars or f.field != i.field:
        raise FieldMismatchError("polynomial and ideal live in different rings")
    basis = [g.rep for g in i.groebner]
    if not basis or f.is_zero:
        return f
    return Polynomial(f.rep.rem(basis), f.field)


def contains(i: Ideal, f: Polynomial) -> bool:
    """Ideal membership test."""
    return normal_form(f, i).is_zero


def ideal_contains(i: Ideal, j: Ideal) -> bool:
    """Whether j is contained in i."""
    return all(contains(i, g) for g in j.generators)


def ideal_equal(i: Ideal, j: Ideal) -> bool:
    """Equality of ideals via their reduced Gröbner bases."""
    if i.num_vars != j.num_vars or i.field != j.field:
        return False
    return set(i.groebner) == set(j.groebner)


def is_groebner(basis: Sequence[Polynomial]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    reps = [b.rep for b in basis if not b.is_zero]
    if not reps:
        return True
    return bool(_sympy_is_groebner(reps, reps[0].ring))


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    """The ideal i + j."""
    return Ideal(list(i.generators) + list(j.generators), i.num_vars, i.field)


def _elimination_head(m: Exponents) -> Exponents:
    return m[:1]


def _elimination_tail(m: Exponents) -> Exponents:
    return m[1:]


ELIMINATION_ORDER = ProductOrder(
    (grevlex, _elimination_head),
    (grevlex, _elimination_tail),
)


@lru_cache(maxsize=None)
def elimination_ring(num_vars: int, field: FieldSpec) -> PolyRing:
    """Ring k[t, x0..x{n-1}] with t eliminated first (block order)."""
    symbols = [ELIMINATION_VAR] + [f"x{i}" for i in range(num_vars)]
    R, *_ = ring(symbols, field.domain, ELIMINATION_ORDER)
    return R


def _lift(f: PolyElement, R: PolyRing) -> PolyElement:
    return R.from_dict({(0,) + m: c for m, c in f.iterterms()})


def _intersect_reps(
    a: Sequence[PolyElement], b: Sequence[PolyElement], i: Ideal
) -> list[Polynomial]:
    R = elimination_ring(i.num_vars, i.field)
    t = R.gens[0]
    seq = [t * _lift(f, R) for f in a] + [(1 - t) * _lift(g, R) for g in b]
    basis = _sympy_groebner([s for s in seq if s], R, method=GROEBNER_METHOD)
    target = i.ring
    result = []
    for g in basis:
        if all(m[0] == 0 for m in g.itermonoms()):
            rep = target.from_dict({m[1:]: c for m, c in g.iterterms()})
            result.append(Polynomial(rep, i.field))
    return result


def intersect(i: Ideal, j: Ideal) -> Ideal:
    """Intersection of two ideals by eliminating an auxiliary variable.

    Computes (t*i + (1-t)*j) ∩ k[x] with a block order eliminating t.
    """
    if i.num_vars != j.num_vars or i.field != j.field:
        raise FieldMismatchError("ideals live in different rings")
    a = [g.rep for g in i.groebner]
    b = [g.rep for g in j.groebner]
    if not a or not b:
        return Ideal([], i.num_vars, i.field)
    return groebner_basis(Ideal(_intersect_reps(a, b, i), i.num_vars, i.field))


def colon_polynomial(i: Ideal, g: Polynomial) -> Ideal:
    """The colon ideal i : g.

    Uses i : g = (i ∩ (g)) / g.
    """
    if g.is_zero:
        return Ideal([Polynomial.constant(1, i.num_vars, i.field)])
    a = [h.rep for h in i.groebner]
    if not a:
        return Ideal([], i.num_vars, i.field)
    quotients = []
    for h in _intersect_reps(a, [g.rep], i):
        quotients.append(Polynomial(h.rep.exquo(g.rep), i.field))
    return groebner_basis(Ideal(quotients, i.num_vars, i.field))


def colon(i: Ideal, j: Ideal) -> Ideal:
    """The colon ideal i : j, the intersection of i : g over generators g of j."""
    gens = [g for g in j.generators if not g.is_zero]
    if not gens:
        return Ideal([Polynomial.constant(1, i.num_vars, i.field)])
    result = colon_polynomial(i, gens[0])
    for g in gens[1:]:
        if result.is_unit:
            result = colon_polynomial(i, g)
            continue
        part = colon_polynomial(i, g)
        if not part.is_unit:
            result = intersect(result, part)
    return result


def saturate(i: Ideal, j: Ideal) -> Ideal:
    """Saturation i : j^∞ by iterated colon ideals.

    Args:
        i: The ideal to saturate.
        j: The ideal saturated against (typically the irrelevant ideal).

    Returns:
        The first ideal in i ⊆ i:j ⊆ (i:j):j ⊆ ... equal to its successor.
        It contains i, and saturating it again returns it unchanged.

    Examples:
        >>> from src.kernel.parser import parse_polynomials
        >>> QQ = FieldSpec.rationals()
        >>> i = Ideal(parse_polynomials(["x0^2", "x0*x1"], 2, QQ))
        >>> m = Ideal(parse_polynomials(["x0", "x1"], 2, QQ))
        >>> [str(g) for g in saturate(i, m).generators]
        ['x0']
    """
    current = groebner_basis(i)
    rounds = 0
    while True:
        rounds += 1
        successor = colon(current, j)
        if ideal_equal(successor, current):
            logger.debug("saturate: stable after %d colon rounds", rounds)
            return current
        current = successor


def irrelevant_ideal(
    num_vars: int, field: FieldSpec, variables: Sequence[int] | None = None
) -> Ideal:
    """The ideal generated by the given variables (all of them by default)."""
    indices = range(num_vars) if variables is None else variables
    return Ideal([Polynomial.variable(k, num_vars, field) for k in indices], num_vars, field)
