"""Leading terms, phi-maps on framed Fibonacci trees and the relations D, D-hat, L.

The relation D^P_{j,k} is a signed sum over the framed trees F_eta^(nu,mu),
eta = 1..|L^P(j,k)|: every plain vertex v contributes phi(framed v) times the
product of phi along the root path to v. D-hat corrects D by the S'(P) rows.
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .combinatorics import IndexTuple, JkPair, a_set, jk_lookup, jk_set, reduce
from .exceptions import EmptyRelationError, InvalidPairError, InvalidParameterError, PartialOrderViolationError
from .poly import UNIT, Polynomial, Variable, product, total, x, xvar, y
from .trees import TreeVertex, build_tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeadingTerms:
    j: int
    k: int
    vars: Tuple[Variable, ...]

    def __len__(self) -> int:
        return len(self.vars)


@dataclass(frozen=True)
class RelationPoly:
    pair: JkPair
    D: Polynomial
    Dhat: Polynomial
    L: Polynomial


def leading_terms(P: IndexTuple, j: int, k: int) -> LeadingTerms:
    nu, mu = P.row_block_of(j), P.col_block_of(k)
    if nu is None or mu is None or mu < nu:
        return LeadingTerms(j, k, ())
    # the last row of a block has no underline partner below it
    if j >= P.i(2 * nu):
        return LeadingTerms(j, k, ())
    if k < P.i(2 * mu + 1):
        return LeadingTerms(j, k, (xvar(j, k), xvar(j + 1, k + 1)))
    if k == P.top and mu == P.n:
        return LeadingTerms(j, k, (xvar(j, k),))
    return LeadingTerms(j, k, ())


def phi(eta: int, P: IndexTuple, j: int, k: int, vertex: TreeVertex) -> Polynomial:
    """The variable attached to a vertex of the framed tree for (j, k)."""
    if eta not in (1, 2):
        raise InvalidParameterError(f"eta must be 1 or 2, got {eta}")
    i = P.i
    seq = vertex.seq
    alpha = len(seq) - 1
    if alpha == 0:
        if not vertex.framed:
            return UNIT
        return x(j, k) if eta == 1 else x(j + 1, k + 1)
    cur = seq[alpha]
    if alpha == 1:
        if vertex.framed:
            return x(j + 1, i(2 * cur) + 1) if eta == 1 else x(j, i(2 * cur + 1))
        return x(i(2 * cur), k) if eta == 1 else x(i(2 * cur + 1) + 1, k + 1)
    prev = seq[alpha - 1]
    # even depth under eta=1 mirrors odd depth under eta=2, and vice versa
    rising = (alpha % 2 == 0) == (eta == 1)
    if vertex.framed:
        return x(j, i(2 * cur + 1)) if rising else x(j + 1, i(2 * cur) + 1)
    if rising:
        return x(i(2 * cur + 1) + 1, i(2 * prev) + 1)
    return x(i(2 * cur), i(2 * prev + 1))


def tree_sum(Q: IndexTuple, j: int, k: int) -> Polynomial:
    """The framed-tree sum for (j, k) computed with the indices of Q."""
    terms = leading_terms(Q, j, k)
    if not terms.vars:
        raise EmptyRelationError(f"L({j},{k}) is empty for {Q}")
    nu, mu = Q.row_block_of(j), Q.col_block_of(k)
    pieces: List[Polynomial] = []
    for eta in range(1, len(terms) + 1):
        tree = build_tree(eta, nu, mu, Q.n)
        sign = 1 if eta == 1 else -1
        for vertex in tree.plain_vertices():
            path = [phi(eta, Q, j, k, vertex.prefix(length)) for length in range(2, len(vertex.seq) + 1)]
            leaf = phi(eta, Q, j, k, TreeVertex(vertex.seq, framed=True))
            pieces.append(product(path) * leaf * sign)
    result = total(pieces)
    if result.is_zero():
        logger.warning(f"Relation D_{j},{k} of {Q} vanished identically")
    return result


def relation_D(P: IndexTuple, j: int, k: int) -> Polynomial:
    """D^P_{j,k}; N2(P) equals N2(reduce(P)), so the tree sum runs on the reduced tuple."""
    if not leading_terms(P, j, k).vars:
        raise EmptyRelationError(f"L({j},{k}) is empty for {P}")
    return tree_sum(reduce(P), j, k)


def relation_Dhat(P: IndexTuple, j: int, k: int) -> Polynomial:
    if jk_lookup(P, j, k) is None:
        raise InvalidPairError(f"({j},{k}) is not in JK{P}")
    reduced = reduce(P)
    result = tree_sum(reduced, j, k)
    for a in sorted(a_set(P)):
        if a < 1 or a >= k:
            continue
        if leading_terms(reduced, j, a).vars:
            result = result - y(a + 1, k + 1) * tree_sum(reduced, j, a)
    return result


def linear_table(P: IndexTuple, j: int, k: int) -> Polynomial:
    """L^P_{j,k}: x(j,k) - x(j+1,k+1), x(j,k) or 0 by the size of L^P(j,k)."""
    terms = leading_terms(P, j, k).vars
    if len(terms) == 2:
        return x(j, k) - x(j + 1, k + 1)
    if len(terms) == 1:
        return x(j, k)
    return Polynomial()


def generator_set(P: IndexTuple) -> List[RelationPoly]:
    relations: List[RelationPoly] = []
    for pair in jk_set(P):
        dhat = relation_Dhat(P, pair.j, pair.k)
        relations.append(
            RelationPoly(pair, relation_D(P, pair.j, pair.k), dhat, dhat.linear_part())
        )
    return relations


def solved_variables(P: IndexTuple) -> Dict[Variable, JkPair]:
    """The A-set: one solved variable x(j,k) per JK pair."""
    return {xvar(pair.j, pair.k): pair for pair in jk_set(P)}


def partial_order_edges(P: IndexTuple, generators: Optional[List[RelationPoly]] = None) -> Set[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Edges (j,k) -> (j',k') where x(j,k) occurs in a nonlinear term of D-hat_{j',k'}."""
    generators = generator_set(P) if generators is None else generators
    solved = solved_variables(P)
    edges = set()
    for relation in generators:
        target = (relation.pair.j, relation.pair.k)
        for var in relation.Dhat.nonlinear_part().variables():
            if var in solved:
                source = solved[var]
                edges.add(((source.j, source.k), target))
    return edges


def _dependency_edges(P: IndexTuple, generators: List[RelationPoly]) -> Dict[Tuple[int, int], Set[Tuple[int, int]]]:
    solved = solved_variables(P)
    needs: Dict[Tuple[int, int], Set[Tuple[int, int]]] = {}
    for relation in generators:
        target = (relation.pair.j, relation.pair.k)
        own = xvar(*target)
        needs[target] = {
            (solved[var].j, solved[var].k)
            for var in relation.Dhat.variables()
            if var in solved and var != own
        }
    return needs


def topological_order(nodes: List[Tuple[int, int]], needs: Dict[Tuple[int, int], Set[Tuple[int, int]]]) -> List[Tuple[int, int]]:
    """Kahn's algorithm, always releasing the smallest (k, j) key first."""
    remaining = {node: set(needs.get(node, ())) for node in nodes}
    dependants: Dict[Tuple[int, int], List[Tuple[int, int]]] = {node: [] for node in nodes}
    for node, sources in remaining.items():
        for source in sources:
            dependants[source].append(node)
    ready = [(node[1], node[0]) for node, sources in remaining.items() if not sources]
    heapq.heapify(ready)
    order: List[Tuple[int, int]] = []
    while ready:
        k, j = heapq.heappop(ready)
        order.append((j, k))
        for node in dependants[(j, k)]:
            remaining[node].discard((j, k))
            if not remaining[node]:
                heapq.heappush(ready, (node[1], node[0]))
    if len(order) != len(nodes):
        stuck = sorted(set(nodes) - set(order))
        raise PartialOrderViolationError(f"Dependency cycle among {stuck}")
    return order


def solving_order(P: IndexTuple, generators: Optional[List[RelationPoly]] = None) -> List[JkPair]:
    generators = generator_set(P) if generators is None else generators
    by_key = {(rel.pair.j, rel.pair.k): rel.pair for rel in generators}
    needs = _dependency_edges(P, generators)
    order = topological_order(list(by_key), needs)
    return [by_key[key] for key in order]


@dataclass(frozen=True)
class StructureReport:
    linear_parts_match: bool
    linear_occurrence_ok: bool
    linear_parts_independent: bool
    partial_order_acyclic: bool
    findings: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.linear_parts_match
            and self.linear_occurrence_ok
            and self.linear_parts_independent
            and self.partial_order_acyclic
        )


def check_structure(P: IndexTuple, generators: Optional[List[RelationPoly]] = None) -> StructureReport:
    """Linear parts against the table, linear-only occurrence, independence and acyclicity."""
    from .linalg import numeric, rank

    generators = generator_set(P) if generators is None else generators
    findings: List[str] = []
    table_ok = True
    occurrence_ok = True
    for relation in generators:
        j, k = relation.pair.j, relation.pair.k
        if relation.L != linear_table(P, j, k):
            table_ok = False
            findings.append(f"linear part of D-hat_{j},{k} is {relation.L}")
        nonlinear = relation.Dhat.nonlinear_part().variables()
        for var in leading_terms(P, j, k).vars:
            if relation.Dhat.degree_in(var) > 1 or var in nonlinear:
                occurrence_ok = False
                findings.append(f"{var} occurs nonlinearly in D-hat_{j},{k}")
    columns = sorted({var for rel in generators for var in rel.L.variables()})
    matrix = [[rel.L.coefficient(((var, 1),)) for var in columns] for rel in generators]
    independent = not generators or rank(numeric(matrix, cols=list(range(1, len(columns) + 1)))) == len(generators)
    if not independent:
        findings.append("linear parts are linearly dependent")
    acyclic = True
    needs: Dict[Tuple[int, int], Set[Tuple[int, int]]] = {}
    for source, target in partial_order_edges(P, generators):
        needs.setdefault(target, set()).add(source)
    try:
        topological_order([(rel.pair.j, rel.pair.k) for rel in generators], needs)
    except PartialOrderViolationError as exc:
        acyclic = False
        findings.append(str(exc))
    for finding in findings:
        logger.warning(f"{P}: {finding}")
    return StructureReport(table_ok, occurrence_ok, independent, acyclic, tuple(findings))
