"""Sparse multivariate polynomials with integer coefficients.

Variables are ``x(a, b)`` and ``y(a, b)``. A polynomial maps monomials (sorted
tuples of ``(Variable, exponent)``) to nonzero ``int`` coefficients. Values are
immutable; every operation returns a new polynomial in canonical form.

Canonical order is graded lexicographic with ascending degree, so the linear
part of a relation renders first. Text format::

    x[1,3] - x[2,4] + x[2,3]^2
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .exceptions import PolynomialParseError, UnboundVariableError
from .fields import QQ, Field

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Variable:
    kind: str
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.kind not in ("x", "y"):
            raise ValueError(f"Variable kind must be 'x' or 'y', got {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}[{self.a},{self.b}]"


Monomial = Tuple[Tuple[Variable, int], ...]
ONE: Monomial = ()


def _monomial_key(monomial: Monomial):
    expanded: List[Variable] = []
    for var, exp in monomial:
        expanded.extend([var] * exp)
    return (len(expanded), tuple(expanded))


def _monomial_mul(left: Monomial, right: Monomial) -> Monomial:
    if not left:
        return right
    if not right:
        return left
    merged: Dict[Variable, int] = dict(left)
    for var, exp in right:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


def monomial_degree(monomial: Monomial) -> int:
    return sum(exp for _, exp in monomial)


class Polynomial:
    """Immutable sparse polynomial over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None) -> None:
        cleaned: Dict[Monomial, int] = {}
        if terms:
            for monomial, coeff in terms.items():
                if coeff:
                    cleaned[monomial] = int(coeff)
        self._terms = cleaned
        self._hash: Optional[int] = None

    # constructors

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls({ONE: value})

    @classmethod
    def variable(cls, var: Variable) -> "Polynomial":
        return cls({((var, 1),): 1})

    @classmethod
    def monomial(cls, monomial: Monomial, coeff: int = 1) -> "Polynomial":
        return cls({monomial: coeff})

    # inspection

    def items(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda item: _monomial_key(item[0]))

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not monomial for monomial in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(ONE, 0)

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(monomial, 0)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(monomial_degree(monomial) for monomial in self._terms)

    def degree_in(self, var: Variable) -> int:
        best = 0
        for monomial in self._terms:
            for v, exp in monomial:
                if v == var:
                    best = max(best, exp)
        return best

    def variables(self) -> frozenset:
        return frozenset(v for monomial in self._terms for v, _ in monomial)

    def linear_part(self) -> "Polynomial":
        return Polynomial(
            {mono: c for mono, c in self._terms.items() if monomial_degree(mono) == 1}
        )

    def nonlinear_part(self) -> "Polynomial":
        return Polynomial(
            {mono: c for mono, c in self._terms.items() if monomial_degree(mono) >= 2}
        )

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.constant(other)
        if isinstance(other, Variable):
            return Polynomial.variable(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coeff
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                product = _monomial_mul(m1, m2)
                terms[product] = terms.get(product, 0) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    # substitution and evaluation

    def substitute(self, mapping: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials; unmapped variables stay."""
        if not mapping or not (self.variables() & mapping.keys()):
            return self
        powers: Dict[Tuple[Variable, int], Polynomial] = {}
        result = Polynomial()
        for monomial, coeff in self._terms.items():
            kept: List[Tuple[Variable, int]] = []
            term = Polynomial.constant(coeff)
            for var, exp in monomial:
                if var in mapping:
                    key = (var, exp)
                    if key not in powers:
                        powers[key] = mapping[var] ** exp
                    term = term * powers[key]
                else:
                    kept.append((var, exp))
            result = result + term * Polynomial.monomial(tuple(kept))
        return result

    def evaluate(self, assignment: Mapping[Variable, object], field: Field = QQ):
        total = field.zero
        cache: Dict[Variable, object] = {}
        for monomial, coeff in self._terms.items():
            value = field.coerce(coeff)
            for var, exp in monomial:
                if var not in cache:
                    if var not in assignment:
                        raise UnboundVariableError(var)
                    cache[var] = field.coerce(assignment[var])
                value = field.mul(value, field.power(cache[var], exp))
            total = field.add(total, value)
        return total


PolyLike = Union[Polynomial, int, Variable]

ZERO = Polynomial()
UNIT = Polynomial.constant(1)


def x(a: int, b: int) -> Polynomial:
    return Polynomial.variable(Variable("x", a, b))


def y(a: int, b: int) -> Polynomial:
    return Polynomial.variable(Variable("y", a, b))


def xvar(a: int, b: int) -> Variable:
    return Variable("x", a, b)


def yvar(a: int, b: int) -> Variable:
    return Variable("y", a, b)


def add(p: PolyLike, q: PolyLike) -> Polynomial:
    return Polynomial() + p + q


def mul(p: PolyLike, q: PolyLike) -> Polynomial:
    return (Polynomial.constant(1) * p) * q


def neg(p: PolyLike) -> Polynomial:
    return -(Polynomial() + p)


def evaluate(p: Polynomial, assignment: Mapping[Variable, object], field: Field = QQ):
    return p.evaluate(assignment, field)


def linear_part(p: Polynomial) -> Polynomial:
    return p.linear_part()


def total(polys: Iterable[Polynomial]) -> Polynomial:
    terms: Dict[Monomial, int] = {}
    for poly in polys:
        for monomial, coeff in poly._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coeff
    return Polynomial(terms)


def product(polys: Iterable[Polynomial]) -> Polynomial:
    result = Polynomial.constant(1)
    for poly in polys:
        result = result * poly
    return result


def render(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for index, (monomial, coeff) in enumerate(p.items()):
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        factors = [str(var) if exp == 1 else f"{var}^{exp}" for var, exp in monomial]
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if index == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TOKEN = re.compile(
    r"\s*(?:(?P<var>[xy])\[\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*\]"
    r"|(?P<int>\d+)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> List[Tuple[str, object]]:
    tokens: List[Tuple[str, object]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match or match.end() == pos:
            raise PolynomialParseError(f"Unexpected input at offset {pos}: {text[pos:pos + 10]!r}")
        if match.group("var"):
            var = Variable(match.group("var"), int(match.group("a")), int(match.group("b")))
            tokens.append(("var", var))
        elif match.group("int"):
            tokens.append(("int", int(match.group("int"))))
        else:
            tokens.append(("op", match.group("op")))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: List[Tuple[str, object]]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[Tuple[str, object]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Tuple[str, object]:
        token = self.peek()
        if token is None:
            raise PolynomialParseError("Unexpected end of input")
        self.pos += 1
        return token

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            rhs = self.term()
            result = result - rhs if op == "-" else result + rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "int":
                raise PolynomialParseError("Exponent must be a non-negative integer")
            base = base**value
        return base

    def atom(self) -> Polynomial:
        kind, value = self.take()
        if kind == "var":
            return Polynomial.variable(value)
        if kind == "int":
            return Polynomial.constant(value)
        if value == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolynomialParseError("Missing closing parenthesis")
            return inner
        if value == "-":
            return -self.factor()
        raise PolynomialParseError(f"Unexpected token {value!r}")


def _parse(text: str) -> Polynomial:
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("Empty polynomial text")
    parser = _Parser(tokens)
    result = parser.expr()
    if parser.peek() is not None:
        raise PolynomialParseError(f"Trailing input near token {parser.pos}")
    return result


def parse(text: str) -> Polynomial:
    try:
        return _parse(text)
    except PolynomialParseError as exc:
        logger.debug(f"Cannot parse polynomial {text!r}: {exc}")
        raise


def parse_variable(text: str) -> Variable:
    try:
        tokens = _tokenize(text)
    except PolynomialParseError as exc:
        logger.debug(f"Cannot parse variable {text!r}: {exc}")
        raise
    if len(tokens) != 1 or tokens[0][0] != "var":
        logger.debug(f"Not a single variable: {text!r}")
        raise PolynomialParseError(f"Not a single variable: {text!r}")
    return tokens[0][1]
