"""Labelled symbolic matrices N2(P), N1(P), S'(P) and the submatrices A^P_{j,k}."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

from .combinatorics import (
    IndexTuple,
    a_set,
    jk_lookup,
    nonpivot_columns,
    nonpivot_row_indices,
)
from .exceptions import InvalidLabelError, InvalidPairError, ShapeError
from .poly import UNIT, ZERO, Polynomial, render, x, y

logger = logging.getLogger(__name__)


class RowTag(str, Enum):
    PLAIN = "plain"
    OVERLINE = "over"
    UNDERLINE = "under"
    PRIME = "prime"


_SUFFIX = {RowTag.PLAIN: "", RowTag.OVERLINE: "^", RowTag.UNDERLINE: "_", RowTag.PRIME: "'"}


@dataclass(frozen=True)
class RowLabel:
    tag: RowTag
    index: int

    def __str__(self) -> str:
        return f"{self.index}{_SUFFIX[self.tag]}"

    @classmethod
    def parse(cls, text: str) -> "RowLabel":
        """Inverse of ``str``: ``3^`` overline, ``3_`` underline, ``4'`` prime, ``3`` plain."""
        text = text.strip()
        for tag, suffix in _SUFFIX.items():
            if suffix and text.endswith(suffix):
                body = text[: -len(suffix)]
                break
        else:
            tag, body = RowTag.PLAIN, text
        if not body.isdigit():
            raise InvalidLabelError(f"Cannot parse row label {text!r}")
        return cls(tag, int(body))


def over(a: int) -> RowLabel:
    return RowLabel(RowTag.OVERLINE, a)


def under(a: int) -> RowLabel:
    return RowLabel(RowTag.UNDERLINE, a)


def prime(a: int) -> RowLabel:
    return RowLabel(RowTag.PRIME, a)


def plain(a: int) -> RowLabel:
    return RowLabel(RowTag.PLAIN, a)


@dataclass(frozen=True)
class LabeledMatrix:
    rows: Tuple[RowLabel, ...]
    cols: Tuple[int, ...]
    entries: Tuple[Tuple[Polynomial, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.rows):
            raise ShapeError(f"{len(self.entries)} entry rows for {len(self.rows)} labels")
        for line in self.entries:
            if len(line) != len(self.cols):
                raise ShapeError(f"Row of length {len(line)} for {len(self.cols)} columns")
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise InvalidLabelError("Matrix labels must be unique")

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def row_index(self, label: RowLabel) -> int:
        try:
            return self.rows.index(label)
        except ValueError as exc:
            raise InvalidLabelError(f"No row labelled {label}") from exc

    def col_index(self, label: int) -> int:
        try:
            return self.cols.index(label)
        except ValueError as exc:
            raise InvalidLabelError(f"No column labelled {label}") from exc

    def entry(self, row: RowLabel, col: int) -> Polynomial:
        return self.entries[self.row_index(row)][self.col_index(col)]

    def row(self, label: RowLabel) -> Tuple[Polynomial, ...]:
        return self.entries[self.row_index(label)]

    def variables(self) -> frozenset:
        found = set()
        for line in self.entries:
            for value in line:
                found.update(value.variables())
        return frozenset(found)

    def to_json(self) -> Dict[str, object]:
        return {
            "rows": [str(label) for label in self.rows],
            "cols": list(self.cols),
            "entries": [[render(value) for value in line] for line in self.entries],
        }


def _matrix(rows: Sequence[RowLabel], cols: Sequence[int], grid: Sequence[Sequence[Polynomial]]) -> LabeledMatrix:
    return LabeledMatrix(tuple(rows), tuple(cols), tuple(tuple(line) for line in grid))


def build_block_S(P: IndexTuple, nu: int, mu: int) -> LabeledMatrix:
    rows = list(P.row_block(nu)) if nu >= 1 else []
    cols = list(P.col_block(mu))
    grid = [[x(a, b) for b in cols] for a in rows]
    return _matrix([plain(a) for a in rows], cols, grid)


def build_N2_full(P: IndexTuple) -> LabeledMatrix:
    """The (m-3) x (m-3) upper triangular matrix of the block grid S-hat."""
    size = P.top
    grid: List[List[Polynomial]] = [[ZERO] * size for _ in range(size)]
    for nu in range(1, P.n + 1):
        for mu in range(nu, P.n + 1):
            block = build_block_S(P, nu, mu)
            for r, label in enumerate(block.rows):
                if mu == nu:
                    grid[label.index - 1][label.index - 1] = UNIT
                for c, column in enumerate(block.cols):
                    grid[label.index - 1][column - 1] = block.entries[r][c]
    labels = range(1, size + 1)
    return _matrix([plain(a) for a in labels], list(labels), grid)


def s_prime(P: IndexTuple) -> LabeledMatrix:
    """Rows e_{a+1} + sum y(a+1, l) e_l over non-pivot columns l > a+1, for a in A(P)."""
    cols = list(range(1, P.m - 1))
    free_columns = nonpivot_columns(P)
    rows: List[RowLabel] = []
    grid: List[List[Polynomial]] = []
    for a in sorted(a_set(P)):
        line = [ZERO] * len(cols)
        line[a] = UNIT
        for column in free_columns:
            if column > a + 1:
                line[column - 1] = y(a + 1, column)
        rows.append(prime(a + 1))
        grid.append(line)
    return _matrix(rows, cols, grid)


def build_N1_full(P: IndexTuple) -> LabeledMatrix:
    n2 = build_N2_full(P)
    size = P.top
    cols = list(range(1, P.m - 1))
    rows: List[RowLabel] = []
    grid: List[List[Polynomial]] = []
    for a in range(1, size + 1):
        rows.append(over(a))
        grid.append(list(n2.entries[a - 1]) + [ZERO])
    for a in range(1, size + 1):
        rows.append(under(a))
        grid.append([ZERO] + list(n2.entries[a - 1]))
    primes = s_prime(P)
    rows.extend(primes.rows)
    grid.extend(list(line) for line in primes.entries)
    return _matrix(rows, cols, grid)


def strip_zero_rows(M: LabeledMatrix) -> LabeledMatrix:
    kept = [r for r, line in enumerate(M.entries) if any(not value.is_zero() for value in line)]
    return _matrix([M.rows[r] for r in kept], M.cols, [M.entries[r] for r in kept])


def build_N1(P: IndexTuple) -> LabeledMatrix:
    return strip_zero_rows(build_N1_full(P))


def build_N2(P: IndexTuple) -> LabeledMatrix:
    return strip_zero_rows(build_N2_full(P))


def nonpivot_rows(P: IndexTuple) -> List[RowLabel]:
    return [under(g) for g in nonpivot_row_indices(P)]


def general_submatrix(
    M: LabeledMatrix,
    remove_rows: Iterable[RowLabel] = (),
    remove_cols: Iterable[int] = (),
) -> LabeledMatrix:
    drop_rows = set(remove_rows)
    drop_cols = set(remove_cols)
    for label in drop_rows:
        if label not in M.rows:
            raise InvalidLabelError(f"No row labelled {label}")
    for label in drop_cols:
        if label not in M.cols:
            raise InvalidLabelError(f"No column labelled {label}")
    row_keep = [r for r, label in enumerate(M.rows) if label not in drop_rows]
    col_keep = [c for c, label in enumerate(M.cols) if label not in drop_cols]
    return _matrix(
        [M.rows[r] for r in row_keep],
        [M.cols[c] for c in col_keep],
        [[M.entries[r][c] for c in col_keep] for r in row_keep],
    )


def extract_A(P: IndexTuple, j: int, k: int) -> LabeledMatrix:
    if jk_lookup(P, j, k) is None:
        raise InvalidPairError(f"({j},{k}) is not in JK{P}")
    n1 = build_N1(P)
    remove_cols = [c for c in nonpivot_columns(P) if c != k + 1]
    remove_rows = [label for label in nonpivot_rows(P) if label != under(j)]
    result = general_submatrix(n1, remove_rows, remove_cols)
    if result.shape != (P.e1 + 1, P.e1 + 1):
        raise ShapeError(f"A_{j},{k} of {P} has shape {result.shape}, expected side {P.e1 + 1}")
    return result


def render_matrix(M: LabeledMatrix) -> str:
    if not M.rows or not M.cols:
        return f"(empty {M.shape[0]}x{M.shape[1]} matrix)"
    cells = [[render(value) for value in line] for line in M.entries]
    width = max([len(str(c)) for c in M.cols] + [len(cell) for line in cells for cell in line])
    label_width = max(len(str(label)) for label in M.rows)
    header = " " * (label_width + 2) + " ".join(str(c).rjust(width) for c in M.cols)
    body = [
        str(label).rjust(label_width) + " |" + " ".join(cell.rjust(width) for cell in line)
        for label, line in zip(M.rows, cells)
    ]
    return "\n".join([header] + body)


def sparsity_pattern(M: LabeledMatrix) -> str:
    def mark(value: Polynomial) -> str:
        if value.is_zero():
            return "."
        if value == UNIT:
            return "1"
        return "*"

    return "\n".join("".join(mark(value) for value in line) for line in M.entries)
