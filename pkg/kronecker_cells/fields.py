"""Exact coefficient fields for evaluation and rank computations.

Two fields are supported: the rationals, with ``fractions.Fraction`` elements,
and the prime field of order 2**61 - 1, with reduced Python ``int`` elements.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .exceptions import InvalidParameterError

MERSENNE_61 = 2**61 - 1

Element = Union[int, Fraction]


@dataclass(frozen=True)
class RationalField:
    name: str = "Q"

    def coerce(self, value) -> Fraction:
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def power(self, a: Fraction, exponent: int) -> Fraction:
        return a**exponent

    def random_element(self, rng: np.random.Generator, bound: int = 9) -> Fraction:
        """Small integers keep rational eliminations readable."""
        return Fraction(int(rng.integers(-bound, bound + 1)))


@dataclass(frozen=True)
class PrimeField:
    modulus: int = MERSENNE_61
    name: str = "Fq"

    def coerce(self, value) -> int:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            return self.mul(value.numerator % self.modulus, self.inv(value.denominator % self.modulus))
        return int(value) % self.modulus

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def inv(self, a: int) -> int:
        if a % self.modulus == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.modulus)

    def power(self, a: int, exponent: int) -> int:
        return pow(a, exponent, self.modulus)

    def random_element(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.modulus, dtype=np.int64))


QQ = RationalField()
FQ = PrimeField()

Field = Union[RationalField, PrimeField]


def field_by_name(name: str) -> Field:
    key = name.strip().lower()
    if key in ("q", "qq", "rational", "rationals"):
        return QQ
    if key in ("fq", "gf", "prime", "finite"):
        return FQ
    raise InvalidParameterError(f"Unknown field {name!r}; use 'Q' or 'Fq'")
