import os
import sys
from fractions import Fraction

import pytest
import sympy

# Add root directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from kronecker_cells.combinatorics import IndexTuple, jk_set
from kronecker_cells.exceptions import ShapeError, UnboundVariableError
from kronecker_cells.fields import FQ, MERSENNE_61, QQ
from kronecker_cells.linalg import (
    colex_combinations,
    det_grid,
    det_symbolic,
    determinant,
    evaluate_matrix,
    minor_by_removal,
    minors,
    numeric,
    rank,
    stack,
)
from kronecker_cells.matrices import build_N1, build_N2, extract_A, general_submatrix, under
from kronecker_cells.poly import UNIT, ZERO, Polynomial, x


def to_sympy(p: Polynomial) -> sympy.Expr:
    terms = []
    for monomial, coeff in p.items():
        term = sympy.Integer(coeff)
        for var, exp in monomial:
            term *= sympy.Symbol(f"{var.kind}_{var.a}_{var.b}") ** exp
        terms.append(term)
    return sympy.Add(*terms)


def sympy_det(M) -> sympy.Expr:
    return sympy.expand(sympy.Matrix([[to_sympy(v) for v in line] for line in M.entries]).det(method="berkowitz"))


@pytest.mark.parametrize(
    "P",
    [IndexTuple(11, (0, 2, 4, 6)), IndexTuple(11, (0, 2, 4, 4, 5, 6)), IndexTuple(10, (0, 3))],
)
def test_symbolic_determinant_matches_sympy(P):
    for pair in jk_set(P):
        A = extract_A(P, pair.j, pair.k)
        assert sympy.expand(to_sympy(det_symbolic(A)) - sympy_det(A)) == 0


def test_small_grids():
    assert det_grid([]) == UNIT
    assert det_grid([[UNIT, ZERO], [ZERO, UNIT]]) == UNIT
    a, b, c, d = x(1, 1), x(1, 2), x(2, 1), x(2, 2)
    assert det_grid([[a, b], [c, d]]) == a * d - b * c
    assert det_grid([[a, b], [a, b]]).is_zero()
    with pytest.raises(ShapeError):
        det_grid([[a, b]])


def test_colex_order():
    assert list(colex_combinations(4, 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert list(colex_combinations(3, 0)) == [()]


def test_minors():
    n2 = build_N2(IndexTuple(6, (0, 2)))
    found = list(minors(n2, 2))
    assert len(found) == 3
    rows, cols, value = found[0]
    assert cols == (1, 2) and value == UNIT
    assert found[1][2] == x(2, 3)
    assert found[2][2] == -x(1, 3)
    with pytest.raises(ShapeError):
        list(minors(n2, 3))


def test_minor_by_removal():
    n1 = build_N1(IndexTuple(10, (0, 2, 4, 6)))
    sub = general_submatrix(n1, [under(6)], [1])
    assert sub.is_square()
    assert minor_by_removal(n1, [under(6)], [1]) == det_symbolic(sub)
    with pytest.raises(ShapeError):
        minor_by_removal(n1, [under(6)], [])


def test_rank_over_both_fields():
    assert rank(numeric([[1, 2], [2, 4]])) == 1
    assert rank(numeric([[1, 2], [2, 4]], FQ)) == 1
    assert rank(numeric([["1/2", 1], [1, 2]])) == 1
    assert rank(numeric([[1, 0, 3], [0, 1, 4]])) == 2
    assert rank(numeric([[0, 0], [0, 0]])) == 0
    assert rank(numeric([], cols=[1, 2, 3])) == 0
    # the modulus reduces to zero
    assert rank(numeric([[MERSENNE_61, 0], [0, 1]], FQ)) == 1


def test_numeric_determinant():
    assert determinant(numeric([[2, 1], [1, 1]])) == Fraction(1)
    assert determinant(numeric([[0, 1], [1, 0]], FQ)) == MERSENNE_61 - 1
    assert determinant(numeric([[1, 2], [2, 4]])) == 0
    with pytest.raises(ShapeError):
        determinant(numeric([[1, 2]]))


def test_evaluate_and_stack():
    P = IndexTuple(6, (0, 2))
    n2 = build_N2(P)
    values = {var: 3 for var in n2.variables()}
    num = evaluate_matrix(n2, values, QQ)
    assert num.tolist() == [[1, 0, 3], [0, 1, 3]]
    assert rank(stack(num, num)) == 2
    with pytest.raises(ShapeError):
        stack(num, numeric([[1, 2]]))
    with pytest.raises(UnboundVariableError):
        evaluate_matrix(n2, {}, QQ)
