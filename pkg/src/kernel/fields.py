"""Coefficient fields.

A ``FieldSpec`` names the coefficient field of every polynomial ring in the
suite: the rationals or a prime field GF(p) with p > 2. Field elements cross
the public API as Python values (``Fraction`` over the rationals, ``int`` in
``[0, p)`` over GF(p)); internally they are sympy domain elements.
"""

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from src.config import MERSENNE_31

# Coefficient range for seeded sampling over the rationals.
RATIONAL_SAMPLE_BOUND = 50

FieldValue = int | Fraction


class FieldKind(str, Enum):
    """Kind of coefficient field."""

    RATIONALS = "rationals"
    PRIME = "prime"


class FieldSpec(BaseModel):
    """Coefficient field of a polynomial ring.

    Attributes:
        kind: Rationals or a prime field.
        p: The characteristic for prime fields, None for the rationals.

    Examples:
        >>> FieldSpec.prime_field(7).label
        'GF(7)'
        >>> FieldSpec.rationals().characteristic
        0
    """

    model_config = ConfigDict(frozen=True)

    kind: FieldKind
    p: int | None = None

    @model_validator(mode="after")
    def _check_characteristic(self) -> "FieldSpec":
        if self.kind == FieldKind.RATIONALS:
            if self.p is not None:
                raise ValueError("the rationals take no characteristic")
        else:
            if self.p is None or self.p <= 2 or not isprime(self.p):
                raise ValueError(f"prime field needs an odd prime, got {self.p}")
        return self

    @classmethod
    def rationals(cls) -> "FieldSpec":
        """Return the field of rational numbers."""
        return cls(kind=FieldKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int = MERSENNE_31) -> "FieldSpec":
        """Return GF(p)."""
        return cls(kind=FieldKind.PRIME, p=p)

    @property
    def is_prime(self) -> bool:
        """Whether this is a prime field."""
        return self.kind == FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        """Characteristic of the field (0 for the rationals)."""
        return self.p if self.p is not None else 0

    @property
    def label(self) -> str:
        """Short human-readable name."""
        return f"GF({self.p})" if self.is_prime else "QQ"

    @property
    def domain(self) -> Domain:
        """The sympy domain realising this field."""
        return _sympy_domain(self.characteristic)

    def supports_sampling(self, *bounds: int) -> bool:
        """Whether p exceeds every bound (always true over the rationals).

        Generic-choice sampling requires p > max(d, n) and similar size
        conditions; callers pass the relevant bounds.
        """
        return not self.is_prime or all(self.characteristic > b for b in bounds)

    def element(self, value: FieldValue) -> Any:
        """Convert a Python value to a domain element.

        Raises:
            ZeroDivisionError: If a fraction's denominator vanishes in the field.
        """
        K = self.domain
        if isinstance(value, Fraction):
            den = K(value.denominator)
            if not den:
                raise ZeroDivisionError(
                    f"denominator {value.denominator} vanishes in {self.label}"
                )
            return K(value.numerator) / den
        return K(int(value))

    def to_python(self, a: Any) -> FieldValue:
        """Convert a domain element to ``Fraction`` (rationals) or ``int``."""
        if self.is_prime:
            return int(a) % self.characteristic
        return Fraction(int(a.numerator), int(a.denominator))

    def symmetric_int(self, a: Any) -> int:
        """Symmetric representative of a prime-field element."""
        return int(self.domain.to_int(a))

    def random_element(self, rng: np.random.Generator) -> Any:
        """Draw a seeded random domain element."""
        if self.is_prime:
            return self.domain(int(rng.integers(0, self.characteristic)))
        bound = RATIONAL_SAMPLE_BOUND
        return self.domain(int(rng.integers(-bound, bound + 1)))


@lru_cache(maxsize=None)
def _sympy_domain(characteristic: int) -> Domain:
    if characteristic == 0:
        return QQ
    return GF(characteristic)
