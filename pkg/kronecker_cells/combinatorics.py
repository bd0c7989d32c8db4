"""Index tuples P = (i_1, ..., i_2n), their statistics and the JK skeleton."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .exceptions import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IndexTuple:
    """A cell label P with its ambient parameter m.

    Conventions: i_{-1} = i_0 = 0 and i_{2n+1} = m - 3. Row block nu is
    [i_{2nu-1}+1, i_{2nu}] and column block mu is [i_{2mu}+1, i_{2mu+1}].
    """

    m: int
    entries: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if self.m < 3:
            raise InvalidParameterError(f"m must be at least 3, got {self.m}")
        if len(self.entries) % 2:
            raise InvalidParameterError(f"Index tuple must have even length: {self.entries}")
        top = self.m - 3
        for value in self.entries:
            if not 0 <= value <= top:
                raise InvalidParameterError(f"Entry {value} outside [0, {top}] in {self.entries}")
        for pos in range(1, len(self.entries)):
            left, right = self.entries[pos - 1], self.entries[pos]
            # 1-based position pos+1 is even for a pair end: weak, else strict
            if pos % 2 == 1 and left > right:
                raise InvalidParameterError(f"Need i_{pos} <= i_{pos + 1} in {self.entries}")
            if pos % 2 == 0 and left >= right:
                raise InvalidParameterError(f"Need i_{pos} < i_{pos + 1} in {self.entries}")

    @property
    def n(self) -> int:
        return len(self.entries) // 2

    @property
    def top(self) -> int:
        """The last row/column index m - 3 of N2(P)."""
        return self.m - 3

    def i(self, index: int) -> int:
        if index <= 0:
            return 0
        if index == 2 * self.n + 1:
            return self.m - 3
        if index > 2 * self.n + 1:
            raise InvalidParameterError(f"i_{index} undefined for n={self.n}")
        return self.entries[index - 1]

    def row_block(self, nu: int) -> range:
        return range(self.i(2 * nu - 1) + 1, self.i(2 * nu) + 1)

    def col_block(self, mu: int) -> range:
        return range(self.i(2 * mu) + 1, self.i(2 * mu + 1) + 1)

    def row_block_of(self, j: int) -> Optional[int]:
        for nu in range(1, self.n + 1):
            if j in self.row_block(nu):
                return nu
        return None

    def col_block_of(self, k: int) -> Optional[int]:
        for mu in range(0, self.n + 1):
            if k in self.col_block(mu):
                return mu
        return None

    @property
    def e2(self) -> int:
        return sum(self.entries[2 * t + 1] - self.entries[2 * t] for t in range(self.n))

    @property
    def e1(self) -> int:
        return self.n + self.e2

    def to_json(self) -> Dict[str, object]:
        return {"m": self.m, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "IndexTuple":
        return cls(int(payload["m"]), tuple(payload.get("entries", ())))

    @classmethod
    def parse(cls, m: int, text: str) -> "IndexTuple":
        """Parse a comma list such as ``0,2,4,6``; blank means the empty tuple."""
        text = text.strip().strip("()")
        if not text:
            return cls(m, ())
        try:
            values = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise InvalidParameterError(f"Cannot parse index tuple {text!r}") from exc
        return cls(m, values)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.entries) + ")"


@dataclass(frozen=True)
class JkPair:
    j: int
    k: int
    nu: int
    mu: int

    @property
    def key(self) -> Tuple[int, int]:
        return (self.k, self.j)


def enumerate_tuples(m: int) -> List[IndexTuple]:
    if m < 3:
        raise InvalidParameterError(f"m must be at least 3, got {m}")
    top = m - 3
    found: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...], floor: int) -> None:
        found.append(prefix)
        for first in range(floor, top + 1):
            for second in range(first, top + 1):
                extend(prefix + (first, second), second + 1)

    extend((), 0)
    found.sort(key=lambda entries: (len(entries) // 2, entries))
    logger.info(f"Enumerated {len(found)} index tuples for m={m}")
    return [IndexTuple(m, entries) for entries in found]


def dim_vector(P: IndexTuple) -> Tuple[int, int]:
    return (P.e1, P.e2)


def a_set(P: IndexTuple) -> Set[int]:
    return {P.i(2 * t) for t in range(1, P.n + 1) if P.i(2 * t) == P.i(2 * t - 1)}


def b_interval_set(P: IndexTuple) -> Set[int]:
    rows: Set[int] = set()
    for nu in range(1, P.n + 1):
        rows.update(P.row_block(nu))
    return rows


def reduce(P: IndexTuple) -> IndexTuple:
    kept: List[int] = []
    for t in range(1, P.n + 1):
        left, right = P.i(2 * t - 1), P.i(2 * t)
        if left != right:
            kept.extend((left, right))
    return IndexTuple(P.m, tuple(kept))


def pivot_columns(P: IndexTuple) -> List[int]:
    """Columns of N1(P) carrying a unit pivot: the union of [i_{2b-1}+1, i_{2b}+1]."""
    columns: Set[int] = set()
    for beta in range(1, P.n + 1):
        columns.update(range(P.i(2 * beta - 1) + 1, P.i(2 * beta) + 2))
    return sorted(columns)


def nonpivot_columns(P: IndexTuple) -> List[int]:
    pivots = set(pivot_columns(P))
    return [c for c in range(1, P.m - 1) if c not in pivots]


def nonpivot_row_indices(P: IndexTuple) -> List[int]:
    """Indices g whose underline row is not a pivot row: [i_{2b-1}+1, i_{2b}-1]."""
    rows: List[int] = []
    for beta in range(1, P.n + 1):
        rows.extend(range(P.i(2 * beta - 1) + 1, P.i(2 * beta)))
    return rows


def _candidate_pairs(P: IndexTuple) -> List[JkPair]:
    from .relations import leading_terms

    pairs: List[JkPair] = []
    for mu in range(1, P.n + 1):
        for k in P.col_block(mu):
            for nu in range(1, mu + 1):
                for j in P.row_block(nu):
                    if leading_terms(P, j, k).vars:
                        pairs.append(JkPair(j, k, nu, mu))
    pairs.sort(key=lambda pair: pair.key)
    return pairs


def jk_set(P: IndexTuple) -> List[JkPair]:
    excluded = a_set(P)
    return [pair for pair in _candidate_pairs(P) if pair.k not in excluded]


def a_condition_effect(P: IndexTuple) -> List[Tuple[int, int]]:
    """Pairs removed from JK solely by the k-not-in-A(P) filter."""
    excluded = a_set(P)
    return [(pair.j, pair.k) for pair in _candidate_pairs(P) if pair.k in excluded]


def jk_lookup(P: IndexTuple, j: int, k: int) -> Optional[JkPair]:
    for pair in jk_set(P):
        if (pair.j, pair.k) == (j, k):
            return pair
    return None


def block_indices(P: IndexTuple, j: int, k: int) -> Tuple[Optional[int], Optional[int]]:
    return P.row_block_of(j), P.col_block_of(k)


def as_tuples(pairs: Sequence[JkPair]) -> List[Tuple[int, int]]:
    return [(pair.j, pair.k) for pair in pairs]
