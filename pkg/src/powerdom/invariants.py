"""Exact domination, matching and transversal numbers with certificates.

Every solver returns an :class:`InvariantCertificate` whose witness is
re-validated against the defining predicate before it is handed out. The
``oracle_*`` functions are deliberately naive: they enumerate subsets in
increasing (or decreasing) cardinality using plain Python sets and share
no code with the solvers, so they can serve as independent ground truth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from ._bits import bits, iter_bits, lowest, mask_of
from .errors import BudgetExceeded, ParameterError
from .graph import Graph
from .hypergraph import Hypergraph, primal_graph, validate

DEFAULT_NODE_BUDGET = 10**8
ORACLE_SUBSET_CAP = 2**24

DOMINATION = "domination"
MATCHING = "matching"
TRANSVERSAL = "transversal"


@dataclass(frozen=True)
class InvariantCertificate:
    """An invariant value plus a witness attaining it.

    The witness holds vertices for domination and transversal, and edge
    indices for matching (into ``Graph.sorted_edges()`` or
    ``Hypergraph.hyperedges``).
    """

    kind: str
    value: int
    witness: frozenset[int]

    def as_dict(self) -> dict:
        return {"value": self.value, "witness": sorted(self.witness)}


class CertificateError(AssertionError):
    """A solver produced a witness that fails its defining predicate."""


# definitional predicates ---------------------------------------------------


def _edge_sets(obj: Union[Graph, Hypergraph]) -> list[frozenset[int]]:
    if isinstance(obj, Graph):
        return [frozenset(e) for e in obj.sorted_edges()]
    return list(obj.hyperedges)


def is_dominating(obj: Union[Graph, Hypergraph], vertices) -> bool:
    d = set(vertices)
    edges = _edge_sets(obj)
    for v in range(obj.order):
        if v in d:
            continue
        if not any(v in e and (e - {v}) & d for e in edges):
            return False
    return True


def is_transversal(obj: Union[Graph, Hypergraph], vertices) -> bool:
    t = set(vertices)
    return all(e & t for e in _edge_sets(obj))


def is_matching(obj: Union[Graph, Hypergraph], edge_indices) -> bool:
    edges = _edge_sets(obj)
    used: set[int] = set()
    for i in edge_indices:
        if not 0 <= i < len(edges) or edges[i] & used:
            return False
        used |= edges[i]
    return True


def check_certificate(obj: Union[Graph, Hypergraph], cert: InvariantCertificate) -> None:
    if len(cert.witness) != cert.value:
        raise CertificateError(f"{cert.kind}: |witness| = {len(cert.witness)} != value {cert.value}")
    ok = {
        DOMINATION: is_dominating,
        TRANSVERSAL: is_transversal,
        MATCHING: is_matching,
    }[cert.kind](obj, cert.witness)
    if not ok:
        raise CertificateError(f"{cert.kind} witness {sorted(cert.witness)} fails validation")


def _certify(obj, kind: str, witness) -> InvariantCertificate:
    w = frozenset(witness)
    cert = InvariantCertificate(kind, len(w), w)
    check_certificate(obj, cert)
    return cert


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded(f"search exceeded node budget of {self.limit}")


# minimum dominating set ----------------------------------------------------


def _min_dominating_set(closed: list[int], node_budget: int) -> int:
    """Branch and bound on closed neighbourhood masks; returns the optimal set mask.

    Branches on the lowest undominated vertex, trying each of its possible
    dominators (largest gain first, ties by lowest id). Dominators already
    tried at an ancestor are forbidden in later siblings.
    """
    n = len(closed)
    full = (1 << n) - 1
    budget = _Budget(node_budget)

    # greedy upper bound
    dom = chosen = 0
    while dom != full:
        best = max(range(n), key=lambda w: ((closed[w] & ~dom).bit_count(), -w))
        chosen |= 1 << best
        dom |= closed[best]
    best_set = [chosen]
    best_size = [chosen.bit_count()]

    def lower_bound(undom: int, allowed: int) -> int:
        used = 0
        packed = 0
        x = undom
        while x:
            b = x & -x
            reach = closed[b.bit_length() - 1] & allowed
            if not reach:
                return n + 1
            if not reach & used:
                packed += 1
                used |= reach
            x ^= b
        gain = max(((closed[w] & undom).bit_count() for w in iter_bits(allowed)), default=0)
        if gain == 0:
            return n + 1
        by_gain = -(-undom.bit_count() // gain)
        return max(packed, by_gain)

    def rec(dom: int, chosen: int, size: int, allowed: int) -> None:
        budget.tick()
        undom = full & ~dom
        if not undom:
            if size < best_size[0]:
                best_size[0], best_set[0] = size, chosen
            return
        if size + lower_bound(undom, allowed) >= best_size[0]:
            return
        u = lowest(undom)
        options = sorted(iter_bits(closed[u] & allowed), key=lambda w: (-(closed[w] & undom).bit_count(), w))
        for w in options:
            rec(dom | closed[w], chosen | (1 << w), size + 1, allowed)
            allowed &= ~(1 << w)

    rec(0, 0, 0, full)
    return best_set[0]


def _twin_classes(closed: list[int]) -> list[int]:
    """Representatives: one lowest-id vertex per class of equal closed neighbourhoods."""
    seen: dict[int, int] = {}
    for v, c in enumerate(closed):
        seen.setdefault(c, v)
    return sorted(seen.values())


def _dominating_mask(g: Graph, node_budget: int, twin_reduce: bool) -> int:
    if g.order == 0:
        return 0
    closed = [row | (1 << v) for v, row in enumerate(g.adj)]
    if not twin_reduce:
        return _min_dominating_set(closed, node_budget)
    reps = _twin_classes(closed)
    if len(reps) == g.order:
        return _min_dominating_set(closed, node_budget)
    index = {v: i for i, v in enumerate(reps)}
    keep = mask_of(reps)
    reduced = [mask_of(index[w] for w in iter_bits(closed[v] & keep)) for v in reps]
    sol = _min_dominating_set(reduced, node_budget)
    return mask_of(reps[i] for i in iter_bits(sol))


def domination_number_graph(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> InvariantCertificate:
    if g.order < 1:
        raise ParameterError("domination number needs order >= 1")
    return _certify(g, DOMINATION, bits(_dominating_mask(g, node_budget, twin_reduce=False)))


def domination_number_hypergraph(h: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET) -> InvariantCertificate:
    """Domination number through the primal graph, after collapsing closed twins."""
    validate(h)
    if h.order < 1:
        raise ParameterError("domination number needs order >= 1")
    mask = _dominating_mask(primal_graph(h), node_budget, twin_reduce=True)
    return _certify(h, DOMINATION, bits(mask))


# minimum hitting set -------------------------------------------------------


def _min_hitting_set(edge_masks: list[int], node_budget: int) -> int:
    """Minimum transversal of a set system given as bitsets.

    Branches on the lowest-index un-hit edge: its i-th vertex is taken with
    the earlier ones excluded, so every transversal is reached once.
    """
    budget = _Budget(node_budget)
    edges = list(edge_masks)

    chosen = 0
    for e in edges:
        if not e & chosen:
            chosen |= 1 << max(
                iter_bits(e), key=lambda v: (sum(1 for f in edges if f >> v & 1 and not f & chosen), -v)
            )
    best = [chosen, chosen.bit_count()]

    def lower_bound(open_edges: list[int]) -> int:
        used = 0
        packed = 0
        for e in open_edges:
            if not e & used:
                packed += 1
                used |= e
        return packed

    def rec(open_edges: list[int], chosen: int, size: int) -> None:
        budget.tick()
        if not open_edges:
            if size < best[1]:
                best[0], best[1] = chosen, size
            return
        if size + lower_bound(open_edges) >= best[1]:
            return
        first = open_edges[0]
        excluded = 0
        for v in iter_bits(first):
            b = 1 << v
            rest = []
            dead = False
            for e in open_edges:
                if e & b:
                    continue
                e &= ~excluded
                if not e:
                    dead = True
                    break
                rest.append(e)
            if not dead:
                rec(rest, chosen | b, size + 1)
            excluded |= b

    rec(edges, 0, 0)
    return best[0]


def transversal_number_graph(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> InvariantCertificate:
    masks = [(1 << u) | (1 << v) for u, v in g.sorted_edges()]
    return _certify(g, TRANSVERSAL, bits(_min_hitting_set(masks, node_budget)))


def transversal_number_hypergraph(h: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET) -> InvariantCertificate:
    validate(h)
    return _certify(h, TRANSVERSAL, bits(_min_hitting_set(list(h.masks), node_budget)))


# maximum matching: graphs (blossom) ------------------------------------------


def _blossom_matching(n: int, nbrs: list[list[int]]) -> list[int]:
    """Edmonds' augmenting-path search with blossom contraction; returns the mate array."""
    mate = [-1] * n
    for u in range(n):
        if mate[u] == -1:
            for w in nbrs[u]:
                if mate[w] == -1:
                    mate[u], mate[w] = w, u
                    break

    def augment_from(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = [root]

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in nbrs[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        while to != -1:
                            pv = parent[to]
                            nxt = mate[pv]
                            mate[to], mate[pv] = pv, to
                            to = nxt
                        return True
                    used[mate[to]] = True
                    queue.append(mate[to])
        return False

    for root in range(n):
        if mate[root] == -1:
            augment_from(root)
    return mate


def matching_number_graph(g: Graph) -> InvariantCertificate:
    nbrs = [bits(row) for row in g.adj]
    mate = _blossom_matching(g.order, nbrs)
    index = {e: i for i, e in enumerate(g.sorted_edges())}
    witness = [index[(u, w)] for u, w in enumerate(mate) if u < w]
    return _certify(g, MATCHING, witness)


# maximum matching: hypergraphs (set packing) --------------------------------


def _max_packing(edge_masks: list[int], node_budget: int) -> int:
    """Maximum set of pairwise disjoint edges; returns a bitset of edge indices.

    Branches on the lowest vertex still covered by an available edge: either
    one of the available edges through it is taken, or none is (the vertex
    is dropped). Bound: available edges, and free vertices over the smallest
    edge size.
    """
    budget = _Budget(node_budget)
    m = len(edge_masks)
    best = [0, 0]

    def upper_bound(avail: int) -> int:
        union = 0
        smallest = None
        for i in iter_bits(avail):
            union |= edge_masks[i]
            size = edge_masks[i].bit_count()
            smallest = size if smallest is None or size < smallest else smallest
        if smallest is None:
            return 0
        return min(avail.bit_count(), union.bit_count() // smallest)

    def rec(avail: int, taken: int, count: int) -> None:
        budget.tick()
        if count > best[1]:
            best[0], best[1] = taken, count
        if not avail or count + upper_bound(avail) <= best[1]:
            return
        union = 0
        for i in iter_bits(avail):
            union |= edge_masks[i]
        v = lowest(union)
        through = [i for i in iter_bits(avail) if edge_masks[i] >> v & 1]
        for i in through:
            e = edge_masks[i]
            rest = 0
            for j in iter_bits(avail):
                if not edge_masks[j] & e:
                    rest |= 1 << j
            rec(rest, taken | (1 << i), count + 1)
        rec(avail & ~mask_of(through), taken, count)

    rec((1 << m) - 1, 0, 0)
    return best[0]


def matching_number_hypergraph(h: Hypergraph, node_budget: int = DEFAULT_NODE_BUDGET) -> InvariantCertificate:
    validate(h)
    return _certify(h, MATCHING, bits(_max_packing(list(h.masks), node_budget)))


# exhaustive oracles ----------------------------------------------------------


class _SubsetCounter:
    def __init__(self, cap: int):
        self.cap = cap
        self.count = 0

    def tick(self) -> None:
        self.count += 1
        if self.count > self.cap:
            raise BudgetExceeded(f"oracle exceeded its cap of {self.cap} subsets")


def oracle_domination(obj: Union[Graph, Hypergraph], cap: int = ORACLE_SUBSET_CAP) -> int:
    """Smallest dominating set size by trying every vertex subset by increasing size."""
    edges = _edge_sets(obj)
    nbr: dict[int, set[int]] = {v: set() for v in range(obj.order)}
    for e in edges:
        for v in e:
            nbr[v] |= e - {v}
    counter = _SubsetCounter(cap)
    for size in range(obj.order + 1):
        for d in itertools.combinations(range(obj.order), size):
            counter.tick()
            ds = set(d)
            if all(v in ds or nbr[v] & ds for v in range(obj.order)):
                return size
    raise AssertionError("unreachable: the full vertex set dominates")


def oracle_transversal(obj: Union[Graph, Hypergraph], cap: int = ORACLE_SUBSET_CAP) -> int:
    edges = _edge_sets(obj)
    counter = _SubsetCounter(cap)
    for size in range(obj.order + 1):
        for t in itertools.combinations(range(obj.order), size):
            counter.tick()
            ts = set(t)
            if all(e & ts for e in edges):
                return size
    raise AssertionError("unreachable: the full vertex set is a transversal")


def oracle_matching(obj: Union[Graph, Hypergraph], cap: int = ORACLE_SUBSET_CAP) -> int:
    """Largest pairwise-disjoint edge subset, trying sizes from the top down."""
    edges = _edge_sets(obj)
    counter = _SubsetCounter(cap)
    for size in range(len(edges), 0, -1):
        for sub in itertools.combinations(edges, size):
            counter.tick()
            if sum(len(e) for e in sub) == len(set().union(*sub)):
                return size
    return 0
