"""Identity checks per index tuple and explicit points of each cell.

The determinant identity det(A^P_{j,k}) = +-D-hat^P_{j,k} is checked exactly.
The reverse inclusion (every (e1+1)-minor of N1 lies in the ideal of the
D-hats) is checked two ways: random points of the cell must give rank e1, and
replayed minors must reduce to zero modulo the relations. Each D-hat is monic
and linear in its solved variable, so reduction is substitution of the solved
variables in solving order.
"""

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .combinatorics import IndexTuple, a_condition_effect, enumerate_tuples
from .config import Settings
from .exceptions import (
    AssignmentDomainError,
    ConfigurationError,
    DecompositionMismatchError,
    IdealEqualityViolationError,
    IdentityMismatchError,
    ShapeError,
    VerificationError,
)
from .fields import FQ, QQ, Field
from .linalg import NumericMatrix, det_symbolic, evaluate_matrix, minor_by_removal, rank, stack
from .matrices import RowLabel, RowTag, build_N1, build_N2, extract_A, general_submatrix, under
from .poly import ZERO, Polynomial, Variable, render, total, xvar
from .relations import RelationPoly, StructureReport, check_structure, generator_set, solved_variables, solving_order
from .schemas import (
    CellPointModel,
    CensusModel,
    DecompositionModel,
    IndexTupleModel,
    JkCheckModel,
    StructureModel,
    TrialsModel,
    VerificationReportModel,
)

logger = logging.getLogger(__name__)


def tuple_model(P: IndexTuple) -> IndexTupleModel:
    return IndexTupleModel(m=P.m, entries=list(P.entries), e1=P.e1, e2=P.e2)


# Variables of a cell


def variable_split(P: IndexTuple) -> Tuple[List[Variable], List[Variable]]:
    """(A, B): the solved variables and the free variables of N1(P)."""
    present = build_N1(P).variables()
    solved = sorted(solved_variables(P))
    absent = [var for var in solved if var not in present]
    if absent:
        raise VerificationError(f"Solved variables {[str(v) for v in absent]} do not occur in N1{P}")
    free = sorted(present - set(solved))
    # y-variables always stay free
    if any(var.kind == "y" for var in solved):
        raise VerificationError(f"A y-variable was selected as solved for {P}")
    return solved, free


def free_variables(P: IndexTuple) -> List[Variable]:
    return variable_split(P)[1]


def cell_dimension(P: IndexTuple) -> int:
    return len(free_variables(P))


def _split_linear(relation: RelationPoly) -> Tuple[int, Polynomial]:
    """Coefficient of the solved variable and the remainder of D-hat without it."""
    own = xvar(relation.pair.j, relation.pair.k)
    dhat = relation.Dhat
    coeff = dhat.coefficient(((own, 1),))
    if coeff not in (1, -1) or dhat.degree_in(own) != 1 or own in dhat.nonlinear_part().variables():
        raise VerificationError(f"{own} is not a unit linear term of D-hat_{relation.pair.j},{relation.pair.k}")
    return coeff, dhat.substitute({own: ZERO})


# Determinant identity


@dataclass(frozen=True)
class JkCheck:
    j: int
    k: int
    sign: Optional[int]
    difference: Optional[Polynomial] = None

    @property
    def match(self) -> bool:
        return self.sign is not None

    def to_model(self) -> JkCheckModel:
        return JkCheckModel(
            j=self.j,
            k=self.k,
            sign=self.sign,
            match=self.match,
            difference=None if self.difference is None else render(self.difference),
        )


def verify_det_identity(
    P: IndexTuple,
    generators: Optional[List[RelationPoly]] = None,
    corrupt: bool = False,
    strict: bool = False,
) -> List[JkCheck]:
    """Compare det(A^P_{j,k}) with +-D-hat^P_{j,k} for every (j, k) in JK.

    ``corrupt`` adds 1 to every D-hat; it exists to exercise the mismatch path.
    """
    generators = generator_set(P) if generators is None else generators
    checks: List[JkCheck] = []
    for relation in generators:
        j, k = relation.pair.j, relation.pair.k
        expected = relation.Dhat + 1 if corrupt else relation.Dhat
        det = det_symbolic(extract_A(P, j, k))
        if det == expected:
            checks.append(JkCheck(j, k, 1))
        elif det == -expected:
            checks.append(JkCheck(j, k, -1))
        else:
            difference = det - expected
            logger.error(f"det(A_{j},{k}) of {P} is not +-D-hat; difference {render(difference)}")
            if strict:
                raise IdentityMismatchError(f"det(A_{j},{k}) != +-D-hat_{j},{k} for {P}")
            checks.append(JkCheck(j, k, None, difference))
    return checks


# Cell points


@dataclass(frozen=True, eq=False)
class CellPoint:
    P: IndexTuple
    assignment: Dict[Variable, object]
    N2_num: NumericMatrix
    N1_num: NumericMatrix
    field: Field


@dataclass(frozen=True)
class SubrepresentationCheck:
    rank_N1: int
    rank_N2: int
    e1: int
    e2: int
    first_image_contained: bool
    second_image_contained: bool

    @property
    def ok(self) -> bool:
        return (
            self.rank_N1 == self.e1
            and self.rank_N2 == self.e2
            and self.first_image_contained
            and self.second_image_contained
        )

    def __bool__(self) -> bool:
        return self.ok


def solve_cell_point(
    P: IndexTuple,
    b_assignment: Mapping[Variable, object],
    field: Field = QQ,
    generators: Optional[List[RelationPoly]] = None,
) -> CellPoint:
    """Fill in the solved variables from values of the free ones.

    Walking the solving order, D-hat_{j,k} = 0 is linear in x(j,k) with a unit
    coefficient and every other solved variable in it already has a value.
    """
    generators = generator_set(P) if generators is None else generators
    _, free = variable_split(P)
    given, expected = set(b_assignment), set(free)
    if given != expected:
        missing = [str(v) for v in sorted(expected - given)]
        extra = [str(v) for v in sorted(given - expected)]
        raise AssignmentDomainError(f"Assignment for {P}: missing {missing}, unexpected {extra}")
    values: Dict[Variable, object] = {var: field.coerce(value) for var, value in b_assignment.items()}
    by_key = {(rel.pair.j, rel.pair.k): rel for rel in generators}
    for pair in solving_order(P, generators):
        coeff, rest = _split_linear(by_key[(pair.j, pair.k)])
        value = field.neg(rest.evaluate(values, field))
        values[xvar(pair.j, pair.k)] = field.mul(value, field.inv(field.coerce(coeff)))
    ordered = dict(sorted(values.items()))
    return CellPoint(
        P=P,
        assignment=ordered,
        N2_num=evaluate_matrix(build_N2(P), ordered, field),
        N1_num=evaluate_matrix(build_N1(P), ordered, field),
        field=field,
    )


def random_cell_point(P: IndexTuple, rng: np.random.Generator, field: Field = FQ, generators=None) -> CellPoint:
    assignment = {var: field.random_element(rng) for var in free_variables(P)}
    return solve_cell_point(P, assignment, field, generators)


def ones_cell_point(P: IndexTuple, field: Field = QQ) -> CellPoint:
    return solve_cell_point(P, {var: 1 for var in free_variables(P)}, field)


def _shifted_image(N2_num: NumericMatrix, width: int, leading_zero: bool) -> NumericMatrix:
    zeros = np.full((N2_num.shape[0], 1), N2_num.field.zero, dtype=object)
    blocks = [zeros, N2_num.entries] if leading_zero else [N2_num.entries, zeros]
    grid = np.hstack(blocks) if N2_num.shape[0] else np.empty((0, width), dtype=object)
    return NumericMatrix(grid, N2_num.rows, tuple(range(1, width + 1)), N2_num.field)


def check_subrepresentation(cp: CellPoint) -> SubrepresentationCheck:
    """Ranks of N1, N2 and containment of both shifted images of N2 in the row space of N1."""
    width = cp.P.m - 2
    rank_n1 = rank(cp.N1_num)
    rank_n2 = rank(cp.N2_num)
    contained = []
    for leading_zero in (False, True):
        image = _shifted_image(cp.N2_num, width, leading_zero)
        contained.append(rank(stack(cp.N1_num, image)) == rank_n1)
    result = SubrepresentationCheck(rank_n1, rank_n2, cp.P.e1, cp.P.e2, contained[0], contained[1])
    if not result.ok:
        logger.warning(f"Cell point of {cp.P} is not a subrepresentation: {result}")
    return result


def cell_point_model(cp: CellPoint, check: SubrepresentationCheck) -> CellPointModel:
    return CellPointModel(
        P=tuple_model(cp.P),
        field=cp.field.name,
        assignment={str(var): str(value) for var, value in cp.assignment.items()},
        rank_N1=check.rank_N1,
        rank_N2=check.rank_N2,
        subrepresentation=check.ok,
        N1=[[str(value) for value in line] for line in cp.N1_num.tolist()],
        N2=[[str(value) for value in line] for line in cp.N2_num.tolist()],
    )


# Reduction modulo the relations


def normal_form(P: IndexTuple, generators: Optional[List[RelationPoly]] = None) -> Dict[Variable, Polynomial]:
    """Each solved variable as a polynomial in the free variables."""
    generators = generator_set(P) if generators is None else generators
    by_key = {(rel.pair.j, rel.pair.k): rel for rel in generators}
    forms: Dict[Variable, Polynomial] = {}
    for pair in solving_order(P, generators):
        coeff, rest = _split_linear(by_key[(pair.j, pair.k)])
        forms[xvar(pair.j, pair.k)] = -rest.substitute(forms) * coeff
    return forms


def reduce_modulo_relations(
    P: IndexTuple,
    f: Polynomial,
    forms: Optional[Dict[Variable, Polynomial]] = None,
) -> Polynomial:
    """Remainder of f modulo the D-hats; f lies in the ideal iff this is zero."""
    forms = normal_form(P) if forms is None else forms
    return f.substitute(forms)


# Minor decomposition replay


@dataclass(frozen=True)
class DecompositionReplay:
    removed_rows: Tuple[RowLabel, ...]
    removed_cols: Tuple[int, ...]
    terms: Tuple[Tuple[int, int], ...]
    signs: Optional[Tuple[int, ...]]
    certified: bool

    @property
    def pattern_holds(self) -> bool:
        return self.signs is not None

    def to_model(self) -> DecompositionModel:
        return DecompositionModel(
            removed_rows=[str(label) for label in self.removed_rows],
            removed_cols=list(self.removed_cols),
            terms=[list(term) for term in self.terms],
            signs=None if self.signs is None else list(self.signs),
            pattern_holds=self.pattern_holds,
            certified=self.certified,
        )


def search_signs(
    target: Polynomial,
    products: Sequence[Polynomial],
    rng: np.random.Generator,
    max_terms: Optional[int] = None,
) -> Optional[Tuple[int, ...]]:
    """A sign vector s with sum s_i * products_i == target, or None.

    Candidates are screened at one random point of F_q and confirmed exactly.
    """
    max_terms = Settings.SIGN_SEARCH_MAX_TERMS if max_terms is None else max_terms
    if len(products) > max_terms:
        logger.warning(f"Sign search skipped: {len(products)} terms exceed the cap of {max_terms}")
        return None
    names = set(target.variables())
    for poly in products:
        names |= poly.variables()
    point = {var: FQ.random_element(rng) for var in sorted(names)}
    goal = target.evaluate(point, FQ)
    values = [poly.evaluate(point, FQ) for poly in products]
    for signs in itertools.product((1, -1), repeat=len(values)):
        acc = FQ.zero
        for sign, value in zip(signs, values):
            acc = FQ.add(acc, value if sign > 0 else FQ.neg(value))
        if acc != goal:
            continue
        if total(poly * sign for sign, poly in zip(signs, products)) == target:
            return signs
    return None


def replay_decomposition(
    P: IndexTuple,
    removed_rows: Iterable[RowLabel],
    removed_cols: Iterable[int],
    rng: Optional[np.random.Generator] = None,
    generators: Optional[List[RelationPoly]] = None,
    forms: Optional[Dict[Variable, Polynomial]] = None,
    strict: bool = False,
    max_terms: Optional[int] = None,
) -> DecompositionReplay:
    """Expand the minor N1(S_r'; S_c') along the JK pairs and reduce it modulo the relations.

    The terms are det(A_{j,k}) * det(N1(S_r' + {j_}; S_c' + {k+1})). The sign
    pattern need not exist; membership in the ideal is what certifies the minor.
    """
    rng = np.random.default_rng(Settings.SEED) if rng is None else rng
    generators = generator_set(P) if generators is None else generators
    rows = tuple(removed_rows)
    cols = tuple(removed_cols)
    n1 = build_N1(P)
    side = P.e1 + 1
    if general_submatrix(n1, rows, cols).shape != (side, side):
        raise ShapeError(f"Removing {len(rows)} rows and {len(cols)} columns of N1{P} leaves no {side}x{side} minor")
    target = minor_by_removal(n1, rows, cols)
    terms: List[Tuple[int, int]] = []
    products: List[Polynomial] = []
    for relation in generators:
        j, k = relation.pair.j, relation.pair.k
        if under(j) in rows or k + 1 in cols:
            continue
        cofactor = minor_by_removal(n1, rows + (under(j),), cols + (k + 1,))
        terms.append((j, k))
        products.append(det_symbolic(extract_A(P, j, k)) * cofactor)
    signs = search_signs(target, products, rng, max_terms)
    forms = normal_form(P, generators) if forms is None else forms
    remainder = reduce_modulo_relations(P, target, forms)
    certified = remainder.is_zero()
    labels = f"({','.join(str(r) for r in rows)};{','.join(str(c) for c in cols)})"
    if not certified:
        logger.error(f"Minor N1{labels} of {P} is not in the ideal; remainder {render(remainder)}")
    if signs is None:
        logger.warning(f"No sign pattern reproduces N1{labels} of {P}")
        if strict:
            raise DecompositionMismatchError(f"No sign pattern reproduces N1{labels} of {P}")
    return DecompositionReplay(rows, cols, tuple(terms), signs, certified)


def random_removals(
    P: IndexTuple,
    count: int,
    rng: np.random.Generator,
) -> List[Tuple[Tuple[RowLabel, ...], Tuple[int, ...]]]:
    """Random (S_r', S_c') leaving an (e1+1)-square minor of N1(P).

    Only underlined rows j_ and columns up to m-3 are removed.
    """
    n1 = build_N1(P)
    side = P.e1 + 1
    n_rows, n_cols = n1.shape
    row_pool = [label for label in n1.rows if label.tag == RowTag.UNDERLINE and 1 <= label.index <= P.top]
    col_pool = [c for c in n1.cols if c <= P.top]
    drop_rows, drop_cols = n_rows - side, n_cols - side
    if drop_rows < 0 or drop_cols < 0 or drop_rows > len(row_pool) or drop_cols > len(col_pool):
        logger.warning(f"No (e1+1)-minor of N1{P} removes only underlined rows and columns up to {P.top}")
        return []
    choices = []
    for _ in range(count):
        row_idx = sorted(int(r) for r in rng.choice(len(row_pool), size=drop_rows, replace=False))
        col_idx = sorted(int(c) for c in rng.choice(len(col_pool), size=drop_cols, replace=False))
        choices.append((tuple(row_pool[r] for r in row_idx), tuple(col_pool[c] for c in col_idx)))
    return choices


# Ideal equality


@dataclass(frozen=True)
class TrialsResult:
    count: int
    ranks: Tuple[int, ...]
    expected_rank: int
    replays: Tuple[DecompositionReplay, ...] = ()

    @property
    def passed(self) -> int:
        return sum(1 for r in self.ranks if r == self.expected_rank)

    @property
    def failed(self) -> int:
        return self.count - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0 and all(replay.certified for replay in self.replays)

    def to_model(self) -> TrialsModel:
        return TrialsModel(
            count=self.count,
            passed=self.passed,
            failed=self.failed,
            ranks=list(self.ranks),
            replays=[replay.to_model() for replay in self.replays],
        )


def verify_ideal_equality(
    P: IndexTuple,
    trials: int,
    rng: np.random.Generator,
    field: Field = FQ,
    generators: Optional[List[RelationPoly]] = None,
    replay: Optional[bool] = None,
    choices: Optional[int] = None,
    strict: bool = False,
    max_terms: Optional[int] = None,
) -> TrialsResult:
    """Random cell points must have rank(N1) = e1; small m also replays random minors."""
    generators = generator_set(P) if generators is None else generators
    ranks: List[int] = []
    for trial in range(trials):
        cp = random_cell_point(P, rng, field, generators)
        r = rank(cp.N1_num)
        ranks.append(r)
        if r > P.e1:
            logger.error(f"Trial {trial} for {P}: rank {r} exceeds e1={P.e1}")
            if strict:
                raise IdealEqualityViolationError(f"rank(N1) = {r} > {P.e1} for {P}")
        elif r < P.e1:
            logger.warning(f"Trial {trial} for {P}: rank {r} below e1={P.e1}")
    replay = P.m <= Settings.REPLAY_MAX_M if replay is None else replay
    choices = Settings.REPLAY_CHOICES if choices is None else choices
    replays: List[DecompositionReplay] = []
    if replay:
        forms = normal_form(P, generators)
        for rows, cols in random_removals(P, choices, rng):
            replays.append(replay_decomposition(P, rows, cols, rng, generators, forms, strict, max_terms))
        if strict and not all(r.certified for r in replays):
            raise IdealEqualityViolationError(f"A replayed minor of N1{P} is not in the ideal")
    return TrialsResult(trials, tuple(ranks), P.e1, tuple(replays))


def injectivity_spot_check(
    P: IndexTuple,
    pairs: int,
    rng: np.random.Generator,
    field: Field = QQ,
) -> int:
    """How many of ``pairs`` random pairs of distinct free assignments give distinct points.

    A pair is told apart when the stacked N2 or the stacked N1 has rank above e2 or e1.
    """
    free = free_variables(P)
    if not free:
        return pairs
    generators = generator_set(P)
    distinguished = 0
    for _ in range(pairs):
        first = {var: field.random_element(rng) for var in free}
        second = dict(first)
        while second == first:
            second = {var: field.random_element(rng) for var in free}
        left = solve_cell_point(P, first, field, generators)
        right = solve_cell_point(P, second, field, generators)
        if rank(stack(left.N2_num, right.N2_num)) > P.e2 or rank(stack(left.N1_num, right.N1_num)) > P.e1:
            distinguished += 1
    if distinguished < pairs:
        logger.warning(f"{pairs - distinguished} of {pairs} assignment pairs of {P} share a row space")
    return distinguished


# Census


@dataclass(frozen=True)
class CensusRow:
    e1: int
    e2: int
    cells: int
    dimensions: Dict[int, int]


def cell_census(m: int) -> List[CensusRow]:
    """Cell counts and cell dimensions grouped by dimension vector."""
    grouped: Dict[Tuple[int, int], Counter] = {}
    for P in enumerate_tuples(m):
        grouped.setdefault((P.e1, P.e2), Counter())[cell_dimension(P)] += 1
    return [
        CensusRow(e1, e2, sum(dims.values()), dict(sorted(dims.items())))
        for (e1, e2), dims in sorted(grouped.items())
    ]


def cell_dimension_profile(m: int) -> Dict[Tuple[int, int], Dict[int, int]]:
    return {(row.e1, row.e2): row.dimensions for row in cell_census(m)}


# Per-tuple and batch drivers


@dataclass(frozen=True)
class VerificationReport:
    P: IndexTuple
    jk: Tuple[JkCheck, ...]
    trials: TrialsResult
    dimension: int
    structure: StructureReport
    a_condition_effect: Tuple[Tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return all(check.match for check in self.jk) and self.trials.ok and self.structure.ok

    def to_model(self) -> VerificationReportModel:
        return VerificationReportModel(
            P=tuple_model(self.P),
            jk=[check.to_model() for check in self.jk],
            trials=self.trials.to_model(),
            census=CensusModel(e1=self.P.e1, e2=self.P.e2, dimension=self.dimension),
            structure=StructureModel(ok=self.structure.ok, findings=list(self.structure.findings)),
            a_condition_effect=[list(pair) for pair in self.a_condition_effect],
            ok=self.ok,
        )


def tuple_rng(P: IndexTuple, seed: int) -> np.random.Generator:
    """A generator that depends only on the seed and P, not on batch order."""
    return np.random.default_rng([seed, P.m, P.n, *P.entries])


def verify_tuple(
    P: IndexTuple,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    field: Field = FQ,
    corrupt: bool = False,
    replay_max_m: Optional[int] = None,
    choices: Optional[int] = None,
    max_terms: Optional[int] = None,
) -> VerificationReport:
    trials = Settings.TRIALS if trials is None else trials
    seed = Settings.SEED if seed is None else seed
    replay_max_m = Settings.REPLAY_MAX_M if replay_max_m is None else replay_max_m
    logger.info(f"Verifying {P} (m={P.m})")
    generators = generator_set(P)
    checks = verify_det_identity(P, generators, corrupt=corrupt)
    result = verify_ideal_equality(
        P,
        trials,
        tuple_rng(P, seed),
        field,
        generators,
        replay=P.m <= replay_max_m,
        choices=choices,
        max_terms=max_terms,
    )
    report = VerificationReport(
        P=P,
        jk=tuple(checks),
        trials=result,
        dimension=cell_dimension(P),
        structure=check_structure(P, generators),
        a_condition_effect=tuple(a_condition_effect(P)),
    )
    if not report.ok:
        logger.error(f"Verification failed for {P}")
    return report


def _init_worker(log_level: str) -> None:
    logging.basicConfig(level=log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(log_level)


def verify_batch(
    m: int,
    tuples: Optional[Iterable[IndexTuple]] = None,
    trials: Optional[int] = None,
    workers: Optional[int] = None,
    seed: Optional[int] = None,
    field: Field = FQ,
    corrupt: bool = False,
) -> List[VerificationReport]:
    """Reports for every tuple of m (or the given ones), in tuple order.

    Settings are resolved here and handed to the workers; spawned processes
    re-import the config and do not see overrides made in this one.
    """
    tuples = enumerate_tuples(m) if tuples is None else list(tuples)
    workers = Settings.WORKERS if workers is None else workers
    if workers < 1:
        raise ConfigurationError(f"workers must be at least 1, got {workers}")
    task = partial(
        verify_tuple,
        trials=Settings.TRIALS if trials is None else trials,
        seed=Settings.SEED if seed is None else seed,
        field=field,
        corrupt=corrupt,
        replay_max_m=Settings.REPLAY_MAX_M,
        choices=Settings.REPLAY_CHOICES,
        max_terms=Settings.SIGN_SEARCH_MAX_TERMS,
    )
    if workers > 1 and len(tuples) > 1:
        logger.info(f"Verifying {len(tuples)} tuples on {workers} workers")
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(Settings.LOG_LEVEL,),
        ) as pool:
            reports = list(pool.map(task, tuples))
    else:
        reports = [task(P) for P in tuples]
    failures = sum(1 for report in reports if not report.ok)
    logger.info(f"m={m}: {len(reports) - failures} of {len(reports)} tuples verified")
    return reports
