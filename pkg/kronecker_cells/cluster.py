"""Cluster variables of the Kronecker quiver and their Euler-characteristic formula.

``cluster_variable(m)`` runs the exchange recursion x_{m-1} x_{m+1} = x_m^2 + 1
from the initial cluster {x_1, x_2}. ``X_of_M(m)`` assembles the same Laurent
polynomial from the cell census:

    X_M = x_1^-(m-2) x_2^-(m-3) sum_P x_1^(2 e2(P)) x_2^(2(m-2-e1(P)))
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

import sympy

from .combinatorics import dim_vector, enumerate_tuples
from .exceptions import InvalidParameterError, LaurentDivisionError, VerificationError

logger = logging.getLogger(__name__)

X1, X2 = sympy.symbols("x1 x2")

Exponent = Tuple[int, int]


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in x1, x2 stored as sorted (exponent, coefficient) pairs."""

    terms: Tuple[Tuple[Exponent, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: Mapping[Exponent, int]) -> "LaurentPoly":
        cleaned = {exp: int(c) for exp, c in coefficients.items() if c}
        return cls(tuple(sorted(cleaned.items(), reverse=True)))

    @classmethod
    def monomial(cls, e1: int, e2: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dict({(e1, e2): coeff})

    def as_dict(self) -> Dict[Exponent, int]:
        return dict(self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        merged = Counter(self.as_dict())
        for exp, coeff in other.terms:
            merged[exp] += coeff
        return LaurentPoly.from_dict(merged)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        merged: Dict[Exponent, int] = {}
        for (a1, a2), c in self.terms:
            for (b1, b2), d in other.terms:
                key = (a1 + b1, a2 + b2)
                merged[key] = merged.get(key, 0) + c * d
        return LaurentPoly.from_dict(merged)

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0, 0)
        return (min(e[0] for e, _ in self.terms), min(e[1] for e, _ in self.terms))

    def is_positive(self) -> bool:
        return all(c > 0 for _, c in self.terms)

    def evaluate(self, v1, v2) -> Fraction:
        a, b = Fraction(v1), Fraction(v2)
        return sum((c * a**e1 * b**e2 for (e1, e2), c in self.terms), Fraction(0))

    def to_sympy(self) -> sympy.Expr:
        return sympy.Add(*[c * X1**e1 * X2**e2 for (e1, e2), c in self.terms])

    def __str__(self) -> str:
        return render_laurent(self)


ONE = LaurentPoly.monomial(0, 0)


def _shifted_poly(p: LaurentPoly, shift: Exponent) -> sympy.Poly:
    data = {(e1 - shift[0], e2 - shift[1]): c for (e1, e2), c in p.terms}
    return sympy.Poly.from_dict(data, X1, X2, domain="ZZ")


def laurent_divide(numerator: LaurentPoly, denominator: LaurentPoly) -> LaurentPoly:
    """Exact quotient; both sides are shifted to polynomials and divided with sympy."""
    if not denominator.terms:
        raise LaurentDivisionError("Division by the zero Laurent polynomial")
    num_shift, den_shift = numerator.min_exponents(), denominator.min_exponents()
    quotient, remainder = sympy.div(
        _shifted_poly(numerator, num_shift), _shifted_poly(denominator, den_shift)
    )
    if not remainder.is_zero:
        raise LaurentDivisionError(f"Non-exact division, remainder {remainder.as_expr()}")
    result: Dict[Exponent, int] = {}
    for (e1, e2), coeff in quotient.terms():
        value = sympy.Rational(coeff)
        if value.q != 1:
            raise LaurentDivisionError(f"Non-integral quotient coefficient {value}")
        result[(e1 + num_shift[0] - den_shift[0], e2 + num_shift[1] - den_shift[1])] = int(value)
    return LaurentPoly.from_dict(result)


@lru_cache(maxsize=None)
def cluster_variable(m: int) -> LaurentPoly:
    if m < 1:
        raise InvalidParameterError(f"Cluster variables are indexed from 1, got {m}")
    if m == 1:
        return LaurentPoly.monomial(1, 0)
    if m == 2:
        return LaurentPoly.monomial(0, 1)
    previous, before = cluster_variable(m - 1), cluster_variable(m - 2)
    result = laurent_divide(previous * previous + ONE, before)
    if not result.is_positive():
        logger.error(f"x_{m} has a non-positive coefficient: {result}")
        raise VerificationError(f"Positivity fails for x_{m}")
    return result


def chi_table(m: int) -> Dict[Exponent, int]:
    """Number of cells per dimension vector (e1, e2)."""
    if m < 3:
        raise InvalidParameterError(f"m must be at least 3, got {m}")
    return dict(sorted(Counter(dim_vector(P) for P in enumerate_tuples(m)).items()))


def X_of_M(m: int) -> LaurentPoly:
    d1, d2 = m - 2, m - 3
    coefficients: Dict[Exponent, int] = {}
    for (e1, e2), chi in chi_table(m).items():
        key = (2 * e2 - d1, 2 * (d1 - e1) - d2)
        coefficients[key] = coefficients.get(key, 0) + chi
    return LaurentPoly.from_dict(coefficients)


@dataclass(frozen=True)
class ClusterCheck:
    m: int
    equal: bool
    value_at_ones: int
    tuple_count: int
    cluster_variable: str


def cluster_check(m_max: int) -> List[ClusterCheck]:
    """Compare X_of_M(m) with cluster_variable(m) for 3 <= m <= m_max."""
    rows: List[ClusterCheck] = []
    for m in range(3, m_max + 1):
        expected = cluster_variable(m)
        assembled = X_of_M(m)
        equal = assembled == expected
        if not equal:
            logger.error(f"X_M({m}) differs from x_{m}: {assembled} vs {expected}")
        rows.append(
            ClusterCheck(
                m=m,
                equal=equal,
                value_at_ones=int(expected.evaluate(1, 1)),
                tuple_count=sum(chi_table(m).values()),
                cluster_variable=render_laurent(expected),
            )
        )
    return rows


def render_laurent(p: LaurentPoly) -> str:
    """Terms in descending (e1, e2) order, e.g. ``x1^-1*x2^2 + x1^-1``."""
    if not p.terms:
        return "0"
    pieces: List[str] = []
    for index, ((e1, e2), coeff) in enumerate(p.terms):
        factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in ((1, e1), (2, e2)) if e != 0]
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if index == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f" {'+' if coeff > 0 else '-'} {body}")
    return "".join(pieces)
