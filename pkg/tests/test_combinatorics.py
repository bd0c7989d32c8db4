import os
import sys

import pytest

# Add root directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from kronecker_cells.combinatorics import (
    IndexTuple,
    a_condition_effect,
    a_set,
    as_tuples,
    b_interval_set,
    dim_vector,
    enumerate_tuples,
    jk_lookup,
    jk_set,
    nonpivot_columns,
    nonpivot_row_indices,
    pivot_columns,
    reduce,
)
from kronecker_cells.exceptions import InvalidParameterError


@pytest.fixture
def worked():
    return IndexTuple(11, (0, 2, 4, 4, 5, 6))


@pytest.mark.parametrize("m,count", [(3, 2), (4, 5), (5, 13), (6, 34), (7, 89)])
def test_enumeration_counts(m, count):
    assert len(enumerate_tuples(m)) == count


def test_enumeration_order_and_members():
    tuples = enumerate_tuples(4)
    assert [P.entries for P in tuples] == [(), (0, 0), (0, 1), (1, 1), (0, 0, 1, 1)]
    assert enumerate_tuples(3)[0].entries == ()


def test_enumeration_rejects_small_m():
    with pytest.raises(InvalidParameterError):
        enumerate_tuples(2)


@pytest.mark.parametrize(
    "entries",
    [(0,), (1, 0), (0, 2, 2, 3), (0, 9), (-1, 0)],
)
def test_invalid_tuples(entries):
    with pytest.raises(InvalidParameterError):
        IndexTuple(11, entries)


def test_dimension_vector(worked):
    assert worked.n == 3
    assert dim_vector(worked) == (6, 3)
    assert dim_vector(IndexTuple(7, ())) == (0, 0)
    assert dim_vector(IndexTuple(3, (0, 0))) == (1, 0)


def test_blocks_use_boundary_conventions(worked):
    assert list(worked.row_block(1)) == [1, 2]
    assert list(worked.row_block(2)) == []
    assert list(worked.col_block(0)) == []
    assert list(worked.col_block(3)) == [7, 8]
    assert worked.row_block_of(6) == 3
    assert worked.col_block_of(5) == 2
    assert worked.row_block_of(4) is None


def test_a_set_and_reduce(worked):
    assert a_set(worked) == {4}
    assert reduce(worked).entries == (0, 2, 5, 6)
    longer = IndexTuple(11, (0, 2, 3, 3, 4, 4, 5, 6))
    assert a_set(longer) == {3, 4}
    assert reduce(longer).entries == (0, 2, 5, 6)


def test_b_interval_set(worked):
    assert b_interval_set(worked) == {1, 2, 6}


def test_pivots():
    P = IndexTuple(11, (0, 2, 4, 6))
    assert pivot_columns(P) == [1, 2, 3, 5, 6, 7]
    assert nonpivot_columns(P) == [4, 8, 9]
    assert nonpivot_row_indices(P) == [1, 5]


def test_jk_of_corrected_tuple():
    P = IndexTuple(11, (0, 2, 4, 6))
    assert as_tuples(jk_set(P)) == [(1, 3), (1, 7), (5, 7), (1, 8), (5, 8)]


def test_jk_of_literal_tuple():
    P = IndexTuple(11, (0, 2, 4, 5))
    assert sorted(as_tuples(jk_set(P))) == [(1, 3), (1, 6), (1, 7), (1, 8)]


def test_jk_of_worked_tuple(worked):
    assert as_tuples(jk_set(worked)) == [(1, 3), (1, 7), (1, 8)]
    pair = jk_lookup(worked, 1, 7)
    assert (pair.nu, pair.mu) == (1, 3)
    assert jk_lookup(worked, 6, 8) is None


def test_jk_empty_for_empty_tuple():
    assert jk_set(IndexTuple(9, ())) == []


def test_a_condition_never_removes_pairs():
    for m in range(3, 8):
        for P in enumerate_tuples(m):
            assert a_condition_effect(P) == []


def test_parse_and_json():
    P = IndexTuple.parse(11, "0,2,4,6")
    assert P.entries == (0, 2, 4, 6)
    assert str(P) == "(0,2,4,6)"
    assert IndexTuple.parse(5, "()").entries == ()
    assert IndexTuple.from_json(P.to_json()) == P
    with pytest.raises(InvalidParameterError):
        IndexTuple.parse(11, "0,a")
