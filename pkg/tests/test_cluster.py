import os
import sys
from fractions import Fraction

import pytest

# Add root directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from kronecker_cells.cluster import (
    ONE,
    LaurentPoly,
    X_of_M,
    chi_table,
    cluster_check,
    cluster_variable,
    laurent_divide,
    render_laurent,
)
from kronecker_cells.combinatorics import enumerate_tuples
from kronecker_cells.exceptions import InvalidParameterError, LaurentDivisionError


def test_first_cluster_variables():
    assert cluster_variable(1) == LaurentPoly.monomial(1, 0)
    assert cluster_variable(2) == LaurentPoly.monomial(0, 1)
    assert cluster_variable(3).as_dict() == {(-1, 2): 1, (-1, 0): 1}
    assert cluster_variable(4).as_dict() == {(-2, 3): 1, (-2, 1): 2, (-2, -1): 1, (0, -1): 1}
    assert cluster_variable(5).evaluate(1, 1) == Fraction(13)


@pytest.mark.parametrize("m", range(3, 13))
def test_census_formula_gives_cluster_variable(m):
    assert X_of_M(m) == cluster_variable(m)


def test_positivity():
    for m in range(1, 21):
        assert cluster_variable(m).is_positive()


@pytest.mark.parametrize("m", range(3, 10))
def test_value_at_ones_counts_tuples(m):
    assert cluster_variable(m).evaluate(1, 1) == len(enumerate_tuples(m))


def test_chi_table():
    assert chi_table(3) == {(0, 0): 1, (1, 0): 1}
    table = chi_table(7)
    assert max(e1 for e1, _ in table) == 7 - 2
    assert max(e2 for _, e2 in table) == 7 - 3
    assert sum(table.values()) == 89


def test_invalid_parameters():
    with pytest.raises(InvalidParameterError):
        cluster_variable(0)
    with pytest.raises(InvalidParameterError):
        chi_table(2)


def test_laurent_division():
    x1, x2 = LaurentPoly.monomial(1, 0), LaurentPoly.monomial(0, 1)
    assert laurent_divide(x1 * x2 + x1, x1) == x2 + ONE
    with pytest.raises(LaurentDivisionError):
        laurent_divide(x2 * x2 + ONE, x2 + ONE)
    with pytest.raises(LaurentDivisionError):
        laurent_divide(ONE, LaurentPoly())


def test_laurent_arithmetic():
    p = LaurentPoly.from_dict({(1, 0): 2, (0, -1): 1, (3, 3): 0})
    assert p.as_dict() == {(1, 0): 2, (0, -1): 1}
    assert p.min_exponents() == (0, -1)
    assert (p + LaurentPoly.monomial(1, 0, -2)).as_dict() == {(0, -1): 1}
    assert p.evaluate(2, Fraction(1, 2)) == Fraction(6)


def test_rendering():
    assert render_laurent(cluster_variable(3)) == "x1^-1*x2^2 + x1^-1"
    assert str(LaurentPoly.from_dict({(1, 1): -2, (0, 0): 3})) == "-2*x1*x2 + 3"
    assert render_laurent(LaurentPoly()) == "0"


def test_cluster_check_rows():
    rows = cluster_check(12)
    assert [row.m for row in rows] == list(range(3, 13))
    assert all(row.equal for row in rows)
    assert all(row.value_at_ones == row.tuple_count for row in rows)
    assert len(cluster_check(3)) == 1
    assert cluster_check(2) == []
