"""Exact determinants, minors and ranks.

Symbolic determinants expand along the sparsest remaining line and memoize on
the remaining (row set, column set); the matrices built from index tuples are
block sparse with many unit pivots, so this stays small. Numeric matrices are
object-dtype numpy arrays holding field elements.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ShapeError
from .fields import QQ, Field, RationalField
from .matrices import LabeledMatrix, RowLabel, general_submatrix
from .poly import UNIT, ZERO, Polynomial, Variable, total

logger = logging.getLogger(__name__)


def det_symbolic(M: LabeledMatrix) -> Polynomial:
    if not M.is_square():
        raise ShapeError(f"Determinant of a non-square {M.shape[0]}x{M.shape[1]} matrix")
    return det_grid(M.entries)


def det_grid(grid: Sequence[Sequence[Polynomial]]) -> Polynomial:
    size = len(grid)
    if any(len(line) != size for line in grid):
        raise ShapeError("Determinant of a non-square grid")
    nonzero: Dict[Tuple[int, int], Polynomial] = {}
    by_row: Dict[int, FrozenSet[int]] = {}
    by_col: Dict[int, set] = {c: set() for c in range(size)}
    for r, line in enumerate(grid):
        cols = set()
        for c, value in enumerate(line):
            if not value.is_zero():
                nonzero[(r, c)] = value
                cols.add(c)
                by_col[c].add(r)
        by_row[r] = frozenset(cols)
    frozen_cols = {c: frozenset(rows) for c, rows in by_col.items()}
    memo: Dict[Tuple[FrozenSet[int], FrozenSet[int]], Polynomial] = {}

    def expand(rows: FrozenSet[int], cols: FrozenSet[int]) -> Polynomial:
        if not rows:
            return UNIT
        key = (rows, cols)
        if key in memo:
            return memo[key]
        best_line, best_hits, along_row = None, None, True
        for r in rows:
            hits = by_row[r] & cols
            if best_hits is None or len(hits) < len(best_hits):
                best_line, best_hits, along_row = r, hits, True
        for c in cols:
            hits = frozen_cols[c] & rows
            if len(hits) < len(best_hits):
                best_line, best_hits, along_row = c, hits, False
        if not best_hits:
            memo[key] = ZERO
            return ZERO
        ordered_rows = sorted(rows)
        ordered_cols = sorted(cols)
        pieces: List[Polynomial] = []
        if along_row:
            pos_r = ordered_rows.index(best_line)
            for c in sorted(best_hits):
                sign = -1 if (pos_r + ordered_cols.index(c)) % 2 else 1
                minor = expand(rows - {best_line}, cols - {c})
                if not minor.is_zero():
                    pieces.append(nonzero[(best_line, c)] * minor * sign)
        else:
            pos_c = ordered_cols.index(best_line)
            for r in sorted(best_hits):
                sign = -1 if (pos_c + ordered_rows.index(r)) % 2 else 1
                minor = expand(rows - {r}, cols - {best_line})
                if not minor.is_zero():
                    pieces.append(nonzero[(r, best_line)] * minor * sign)
        result = total(pieces)
        memo[key] = result
        return result

    everything = frozenset(range(size))
    return expand(everything, everything)


def colex_combinations(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """k-subsets of range(n) in colexicographic order."""
    if k == 0:
        yield ()
        return
    for last in range(k - 1, n):
        for head in colex_combinations(last, k - 1):
            yield head + (last,)


def minors(M: LabeledMatrix, size: int) -> Iterator[Tuple[Tuple[RowLabel, ...], Tuple[int, ...], Polynomial]]:
    """All size x size minors: column subsets in colex order, then row subsets."""
    n_rows, n_cols = M.shape
    if size < 0 or size > min(n_rows, n_cols):
        raise ShapeError(f"No {size}x{size} minors in a {n_rows}x{n_cols} matrix")
    for col_idx in colex_combinations(n_cols, size):
        for row_idx in colex_combinations(n_rows, size):
            grid = [[M.entries[r][c] for c in col_idx] for r in row_idx]
            yield (
                tuple(M.rows[r] for r in row_idx),
                tuple(M.cols[c] for c in col_idx),
                det_grid(grid),
            )


def minor_by_removal(M: LabeledMatrix, remove_rows, remove_cols) -> Polynomial:
    return det_symbolic(general_submatrix(M, remove_rows, remove_cols))


@dataclass(frozen=True, eq=False)
class NumericMatrix:
    entries: np.ndarray
    rows: Tuple[RowLabel, ...]
    cols: Tuple[int, ...]
    field: Field

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def tolist(self) -> List[List[object]]:
        return [[self.entries[r, c] for c in range(len(self.cols))] for r in range(len(self.rows))]


def evaluate_matrix(M: LabeledMatrix, assignment: Mapping[Variable, object], field: Field = QQ) -> NumericMatrix:
    grid = np.empty(M.shape, dtype=object)
    for r, line in enumerate(M.entries):
        for c, value in enumerate(line):
            grid[r, c] = value.evaluate(assignment, field)
    return NumericMatrix(grid, M.rows, M.cols, field)


def numeric(rows: Sequence[Sequence[object]], field: Field = QQ, cols: Optional[Sequence[int]] = None) -> NumericMatrix:
    height = len(rows)
    width = len(rows[0]) if rows else (len(cols) if cols is not None else 0)
    grid = np.empty((height, width), dtype=object)
    for r, line in enumerate(rows):
        for c, value in enumerate(line):
            grid[r, c] = field.coerce(value)
    labels = tuple(RowLabel.parse(str(r + 1)) for r in range(height))
    return NumericMatrix(grid, labels, tuple(cols) if cols is not None else tuple(range(1, width + 1)), field)


def stack(top: NumericMatrix, bottom: NumericMatrix) -> NumericMatrix:
    if top.shape[1] != bottom.shape[1]:
        raise ShapeError("Stacked matrices need the same number of columns")
    grid = np.vstack([top.entries, bottom.entries])
    return NumericMatrix(grid, top.rows + bottom.rows, top.cols, top.field)


def _integer_rows(M: NumericMatrix) -> List[List[int]]:
    rows: List[List[int]] = []
    for r in range(M.shape[0]):
        values = [Fraction(M.entries[r, c]) for c in range(M.shape[1])]
        scale = lcm(*[v.denominator for v in values]) if values else 1
        rows.append([int(v * scale) for v in values])
    return rows


def _rank_fraction_free(rows: List[List[int]]) -> int:
    if not rows:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank, previous = 0, 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for r in range(rank + 1, n_rows):
            factor = rows[r][col]
            for c in range(col + 1, n_cols):
                rows[r][c] = (rows[r][c] * lead - factor * rows[rank][c]) // previous
            rows[r][col] = 0
        previous = lead
        rank += 1
        if rank == n_rows:
            break
    return rank


def _rank_modular(M: NumericMatrix) -> int:
    field = M.field
    rows = [[field.coerce(v) for v in line] for line in M.tolist()]
    n_rows, n_cols = M.shape
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = field.inv(rows[rank][col])
        for r in range(rank + 1, n_rows):
            if rows[r][col]:
                factor = field.mul(rows[r][col], inverse)
                for c in range(col, n_cols):
                    rows[r][c] = field.sub(rows[r][c], field.mul(factor, rows[rank][c]))
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(M: NumericMatrix) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    if isinstance(M.field, RationalField):
        return _rank_fraction_free(_integer_rows(M))
    return _rank_modular(M)


def determinant(M: NumericMatrix):
    """Determinant over the matrix's field by Gaussian elimination."""
    if M.shape[0] != M.shape[1]:
        raise ShapeError("Determinant of a non-square numeric matrix")
    field = M.field
    rows = [list(line) for line in M.tolist()]
    size = len(rows)
    result = field.one
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = field.neg(result)
        lead = rows[col][col]
        result = field.mul(result, lead)
        inverse = field.inv(lead)
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = field.mul(rows[r][col], inverse)
                for c in range(col, size):
                    rows[r][c] = field.sub(rows[r][c], field.mul(factor, rows[col][c]))
    return result
