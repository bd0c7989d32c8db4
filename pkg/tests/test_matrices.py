import os
import sys

import pytest

# Add root directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from kronecker_cells.combinatorics import IndexTuple, enumerate_tuples, jk_set
from kronecker_cells.exceptions import InvalidLabelError, InvalidPairError, ShapeError
from kronecker_cells.matrices import (
    LabeledMatrix,
    RowLabel,
    RowTag,
    build_N1,
    build_N2,
    build_N2_full,
    extract_A,
    general_submatrix,
    over,
    plain,
    prime,
    render_matrix,
    s_prime,
    sparsity_pattern,
    under,
)
from kronecker_cells.poly import UNIT, ZERO, x, y


@pytest.fixture
def corrected():
    return IndexTuple(11, (0, 2, 4, 6))


def test_n2_full_is_upper_triangular(corrected):
    n2 = build_N2_full(corrected)
    assert n2.shape == (8, 8)
    for r in range(8):
        for c in range(r):
            assert n2.entries[r][c].is_zero()
    assert n2.entry(plain(1), 1) == UNIT
    assert n2.entry(plain(1), 4) == x(1, 4)
    assert n2.entry(plain(2), 8) == x(2, 8)
    assert n2.entry(plain(5), 7) == x(5, 7)
    assert n2.entry(plain(1), 5) == ZERO
    assert all(value.is_zero() for value in n2.row(plain(3)))


def test_n2_keeps_e2_rows():
    P = IndexTuple(11, (0, 3, 4, 7))
    n2 = build_N2(P)
    assert n2.shape[0] == 6 == P.e2
    assert plain(4) not in n2.rows and plain(8) not in n2.rows


def test_n1_of_worked_tuple():
    P = IndexTuple(11, (0, 2, 4, 4, 5, 6))
    n1 = build_N1(P)
    assert n1.shape == (7, 9)
    assert [str(label) for label in n1.rows] == ["1^", "2^", "6^", "1_", "2_", "6_", "5'"]
    assert n1.entry(under(1), 4) == x(1, 3)
    assert n1.entry(prime(5), 5) == UNIT
    assert n1.entry(prime(5), 8) == y(5, 8)
    assert n1.entry(prime(5), 9) == y(5, 9)


def test_n1_rows_and_y_variables():
    P = IndexTuple(11, (0, 2, 3, 3, 4, 4, 5, 6))
    n1 = build_N1(P)
    assert [str(label) for label in n1.rows] == ["1^", "2^", "6^", "1_", "2_", "6_", "4'", "5'"]
    ys = sorted(str(v) for v in n1.variables() if v.kind == "y")
    assert ys == ["y[4,8]", "y[4,9]", "y[5,8]", "y[5,9]"]
    primes = s_prime(P)
    assert primes.shape == (2, 9)


def test_extract_A_is_square_everywhere():
    for m in range(3, 8):
        for P in enumerate_tuples(m):
            for pair in jk_set(P):
                A = extract_A(P, pair.j, pair.k)
                assert A.shape == (P.e1 + 1, P.e1 + 1)


def test_extract_A_keeps_its_row_and_column(corrected):
    A = extract_A(corrected, 1, 7)
    assert under(1) in A.rows and under(5) not in A.rows
    assert 8 in A.cols and 4 not in A.cols and 9 not in A.cols


def test_extract_A_rejects_pairs_outside_jk(corrected):
    with pytest.raises(InvalidPairError):
        extract_A(corrected, 2, 3)


def test_general_submatrix(corrected):
    n1 = build_N1(corrected)
    assert general_submatrix(n1) == n1
    smaller = general_submatrix(n1, [under(6)], [1])
    assert smaller.shape == (n1.shape[0] - 1, n1.shape[1] - 1)
    assert under(6) not in smaller.rows and 1 not in smaller.cols
    with pytest.raises(InvalidLabelError):
        general_submatrix(n1, [under(3)], [])
    with pytest.raises(InvalidLabelError):
        general_submatrix(n1, [], [42])


def test_row_labels():
    for text in ["1^", "1_", "4'", "7"]:
        assert str(RowLabel.parse(text)) == text
    assert RowLabel.parse("3_") == RowLabel(RowTag.UNDERLINE, 3)
    assert over(2) != under(2)
    with pytest.raises(InvalidLabelError):
        RowLabel.parse("x_")


def test_shape_checks():
    with pytest.raises(ShapeError):
        LabeledMatrix((plain(1),), (1, 2), ((UNIT,),))
    with pytest.raises(InvalidLabelError):
        LabeledMatrix((plain(1), plain(1)), (1,), ((UNIT,), (UNIT,)))


def test_rendering():
    P = IndexTuple(6, (0, 2))
    assert sparsity_pattern(build_N2_full(P)) == "1.*\n.1*\n..."
    assert render_matrix(build_N2(IndexTuple(6, ()))) == "(empty 0x3 matrix)"
    text = render_matrix(build_N2(P))
    assert "x[1,3]" in text and text.splitlines()[1].strip().startswith("1 |")


def test_json_dump(corrected):
    payload = build_N2(corrected).to_json()
    assert payload["rows"] == ["1", "2", "5", "6"]
    assert payload["entries"][0][2] == "x[1,3]"
