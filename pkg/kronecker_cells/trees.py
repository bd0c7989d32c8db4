"""Fibonacci trees F_eta^(nu, mu) and their framed versions.

A vertex is a sequence (m_0, ..., m_b) with m_0 = mu and every entry >= nu.
Going from position i-1 to i the entry may stay equal ("weak" step) or must
drop ("strict" step). For eta = 1 odd positions are weak and even positions
strict; eta = 2 swaps the two. Framing hangs one leaf under every vertex.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exceptions import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class TreeVertex:
    seq: Tuple[int, ...]
    framed: bool = False

    @property
    def depth(self) -> int:
        return len(self.seq) - 1

    def prefix(self, length: int) -> "TreeVertex":
        return TreeVertex(self.seq[:length])

    def __str__(self) -> str:
        body = "(" + ",".join(str(v) for v in self.seq) + ")"
        return f"~{body}" if self.framed else body


@dataclass(frozen=True)
class FibTree:
    eta: int
    nu: int
    mu: int
    n: int
    vertices: Tuple[TreeVertex, ...]
    children: Dict[TreeVertex, Tuple[TreeVertex, ...]] = field(compare=False)
    framed: bool = False

    @property
    def root(self) -> TreeVertex:
        return TreeVertex((self.mu,))

    def plain_vertices(self) -> List[TreeVertex]:
        return [v for v in self.vertices if not v.framed]

    def parent(self, vertex: TreeVertex) -> Optional[TreeVertex]:
        if vertex.framed:
            return TreeVertex(vertex.seq)
        if vertex.depth == 0:
            return None
        return vertex.prefix(len(vertex.seq) - 1)

    def __len__(self) -> int:
        return len(self.vertices)


def _step_is_weak(eta: int, position: int) -> bool:
    odd = position % 2 == 1
    return odd if eta == 1 else not odd


def build_tree(eta: int, nu: int, mu: int, n: int) -> FibTree:
    if eta not in (1, 2):
        raise InvalidParameterError(f"eta must be 1 or 2, got {eta}")
    if nu > mu:
        raise InvalidParameterError(f"Need nu <= mu, got nu={nu}, mu={mu}")
    if nu < 1 or mu > n:
        raise InvalidParameterError(f"Need 1 <= nu <= mu <= n, got ({nu}, {mu}, {n})")
    max_depth = 2 * n - 1
    order: List[TreeVertex] = []
    children: Dict[TreeVertex, Tuple[TreeVertex, ...]] = {}

    def grow(vertex: TreeVertex) -> None:
        order.append(vertex)
        position = len(vertex.seq)
        kids: List[TreeVertex] = []
        if vertex.depth < max_depth:
            last = vertex.seq[-1]
            ceiling = last if _step_is_weak(eta, position) else last - 1
            for value in range(ceiling, nu - 1, -1):
                kids.append(TreeVertex(vertex.seq + (value,)))
        children[vertex] = tuple(kids)
        for kid in kids:
            grow(kid)

    grow(TreeVertex((mu,)))
    logger.debug(f"F_{eta}^({nu},{mu}) has {len(order)} vertices")
    return FibTree(eta, nu, mu, n, tuple(order), children)


def frame(tree: FibTree) -> FibTree:
    if tree.framed:
        return tree
    order: List[TreeVertex] = []
    children: Dict[TreeVertex, Tuple[TreeVertex, ...]] = {}
    for vertex in tree.vertices:
        leaf = TreeVertex(vertex.seq, framed=True)
        order.extend((vertex, leaf))
        children[vertex] = tree.children[vertex] + (leaf,)
        children[leaf] = ()
    return FibTree(tree.eta, tree.nu, tree.mu, tree.n, tuple(order), children, framed=True)


def render_tree(tree: FibTree) -> str:
    lines: List[str] = []

    def walk(vertex: TreeVertex, indent: int) -> None:
        lines.append("  " * indent + str(vertex))
        for kid in tree.children.get(vertex, ()):
            walk(kid, indent + 1)

    walk(tree.root, 0)
    return "\n".join(lines)
