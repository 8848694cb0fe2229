"""Graph family generators and the generalized power hypergraph (blow-up)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ._bits import CAPACITY
from .errors import CapacityError, ParameterError
from .graph import Edge, Graph
from .hypergraph import Hypergraph, validate


@dataclass(frozen=True)
class BlowupHypergraph:
    """A k-uniform blow-up of ``base`` together with its provenance maps.

    ``vertex_blocks[v]`` is the s-set replacing base vertex ``v`` and
    ``edge_blocks[(u, v)]`` the (k - 2s)-set added to base edge ``(u, v)``.
    Hyperedge ``i`` comes from ``base.sorted_edges()[i]``.
    """

    base: Graph
    hypergraph: Hypergraph
    vertex_blocks: Mapping[int, frozenset[int]]
    edge_blocks: Mapping[Edge, frozenset[int]]
    k: int
    s: int

    @property
    def order(self) -> int:
        return self.hypergraph.order


def check_blowup_params(k: int, s: int) -> None:
    if k < 3:
        raise ParameterError(f"edge size k must be >= 3, got {k}")
    if not 1 <= s or 2 * s > k:
        raise ParameterError(f"blow-up factor s must satisfy 1 <= s <= k/2, got k={k}, s={s}")


def blowup_order(g: Graph, k: int, s: int) -> int:
    return s * g.order + (k - 2 * s) * g.size


def blow_up(g: Graph, k: int, s: int) -> BlowupHypergraph:
    """Generalized power hypergraph: each vertex becomes an s-set, each edge a k-set.

    Vertex ids: the block of base vertex ``v`` is ``s*v .. s*v + s - 1``; edge
    blocks follow in sorted base-edge order.
    """
    check_blowup_params(k, s)
    if g.order == 0 or any(row == 0 for row in g.adj):
        raise ParameterError("blow-up needs a graph without isolated vertices")
    order = blowup_order(g, k, s)
    if order > CAPACITY:
        raise CapacityError(f"blow-up order {order} exceeds capacity {CAPACITY}")

    vertex_blocks = {v: frozenset(range(s * v, s * v + s)) for v in range(g.order)}
    t = k - 2 * s
    nxt = s * g.order
    edge_blocks: dict[Edge, frozenset[int]] = {}
    hyperedges = []
    for e in g.sorted_edges():
        edge_blocks[e] = frozenset(range(nxt, nxt + t))
        nxt += t
        u, v = e
        hyperedges.append(vertex_blocks[u] | vertex_blocks[v] | edge_blocks[e])
    h = Hypergraph.from_edges(order, hyperedges, k)
    validate(h, k)
    return BlowupHypergraph(g, h, vertex_blocks, edge_blocks, k, s)


# named graphs --------------------------------------------------------------


def cycle(p: int) -> Graph:
    if p < 3:
        raise ParameterError(f"cycle length must be >= 3, got {p}")
    return Graph.from_edges(p, [(i, (i + 1) % p) for i in range(p)])


def path(p: int) -> Graph:
    """Path on ``p`` vertices."""
    if p < 1:
        raise ParameterError(f"path order must be >= 1, got {p}")
    return Graph.from_edges(p, [(i, i + 1) for i in range(p - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterError(f"complete graph order must be >= 1, got {n}")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ParameterError(f"complete bipartite sides must be >= 1, got ({a}, {b})")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wedge_cycles(p: int, q: int) -> Graph:
    """C_p and C_q sharing vertex 0; the second cycle uses ids ``p .. p+q-2``."""
    if p < 3 or q < 3:
        raise ParameterError(f"wedge cycle lengths must be >= 3, got ({p}, {q})")
    edges = [(i, (i + 1) % p) for i in range(p)]
    ring = [0] + list(range(p, p + q - 1))
    edges += [(ring[i], ring[(i + 1) % q]) for i in range(q)]
    return Graph.from_edges(p + q - 1, edges)


def generalized_corona(g: Graph, pendants: Mapping[int, int]) -> Graph:
    """Attach ``pendants[v]`` new leaves to every vertex ``v`` of ``g``."""
    edges = list(g.edges)
    nxt = g.order
    for v in range(g.order):
        count = pendants.get(v, 0)
        if count < 1:
            raise ParameterError(f"vertex {v} needs at least one pendant, got {count}")
        for _ in range(count):
            edges.append((v, nxt))
            nxt += 1
    if nxt > CAPACITY:
        raise CapacityError(f"corona order {nxt} exceeds capacity {CAPACITY}")
    return Graph.from_edges(nxt, edges)


def corona(g: Graph) -> Graph:
    return generalized_corona(g, {v: 1 for v in range(g.order)})


GENERATORS = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "wedge_cycles": wedge_cycles,
    "corona": corona,
    "generalized_corona": generalized_corona,
}
