"""Simple undirected graphs on dense vertex ids, with bitset adjacency.

Besides the :class:`Graph` type this module holds the graph6 codec, the
structural predicates used by the family checks, a small canonical labeler
(partition refinement plus backtracking with automorphism pruning) and the
exhaustive generator of connected graphs up to isomorphism.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence

from ._bits import CAPACITY, bits, iter_bits, lowest, mask_of
from .errors import CapacityError, Graph6Error, ParameterError

GRAPH6_MAX_ORDER = 62
CANON_MAX_ORDER = 12
ENUM_MAX_ORDER = 9

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph with vertices ``0..order-1``.

    ``edges`` is normalised to a frozenset of ``(u, v)`` pairs with ``u < v``.
    Instances are immutable; derived data (adjacency masks) is cached.
    """

    order: int
    edges: frozenset

    def __post_init__(self):
        if self.order < 0:
            raise ParameterError(f"negative order {self.order}")
        if self.order > CAPACITY:
            raise CapacityError(f"order {self.order} exceeds bitset capacity {CAPACITY}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ParameterError(f"edge {e} has an endpoint outside [0, {self.order})")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(order, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "Graph":
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in iter_bits(adj[u] >> (u + 1) << (u + 1))]
        g = cls(n, frozenset(edges))
        g.__dict__["adj"] = tuple(adj)
        return g

    @cached_property
    def adj(self) -> tuple[int, ...]:
        rows = [0] * self.order
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.order, frozenset(_norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def without_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.order, self.edges - {_norm_edge(u, v)})

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabeled to ``0..k-1``; also returns the new-to-old id list."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges), keep

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class Bipartition:
    """Two-colouring of a bipartite graph, normalised so ``|side_x| <= |side_y|``."""

    side_x: frozenset[int]
    side_y: frozenset[int]


# graph6 codec -------------------------------------------------------------


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as a header-less graph6 line (without the trailing newline)."""
    n = g.order
    if n > GRAPH6_MAX_ORDER:
        raise CapacityError(f"graph6 codec supports order <= {GRAPH6_MAX_ORDER}, got {n}")
    adj = g.adj
    out = [chr(n + 63)]
    acc = nbits = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line. A single trailing newline is tolerated."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    if text.endswith("\n"):
        text = text[:-1]
        if text.endswith("\r"):
            text = text[:-1]
    if not text:
        raise Graph6Error("empty graph6 line", 0)
    head = ord(text[0])
    if head == 126:
        raise Graph6Error(f"orders above {GRAPH6_MAX_ORDER} are not supported", 0)
    if not 63 <= head <= 125:
        raise Graph6Error(f"invalid header byte {text[0]!r}", 0)
    n = head - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = text[1:]
    for i, ch in enumerate(body):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid data byte {ch!r}", i + 1)
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit vector: need {nbytes} data bytes, got {len(body)}", len(text))
    if len(body) > nbytes:
        raise Graph6Error("trailing garbage after bit vector", 1 + nbytes)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbytes and nbits % 6:
        pad = (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("non-zero padding bits", len(text) - 1)
    return Graph.from_edges(n, edges)


# structural predicates ----------------------------------------------------


def _reach(adj: Sequence[int], start: int, within: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph) -> bool:
    if g.order < 1:
        raise ParameterError("connectivity is defined for order >= 1")
    return _reach(g.adj, 0, g.vertex_mask) == g.vertex_mask


def components(g: Graph, within: Optional[int] = None) -> list[frozenset[int]]:
    """Vertex sets of the connected components of ``g`` restricted to ``within``."""
    rest = g.vertex_mask if within is None else within
    out = []
    while rest:
        comp = _reach(g.adj, lowest(rest), rest)
        out.append(frozenset(iter_bits(comp)))
        rest &= ~comp
    return out


def is_bipartite(g: Graph) -> Optional[Bipartition]:
    """Return a normalised bipartition, or ``None`` when ``g`` has an odd cycle.

    Each component is two-coloured by BFS; in every component the colour
    class containing its lowest vertex goes to the first side, then the sides
    are swapped if needed so that ``side_x`` is the smaller one.
    """
    color: dict[int, int] = {}
    for s in range(g.order):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in iter_bits(g.adj[u]):
                if w not in color:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    a = frozenset(v for v, c in color.items() if c == 0)
    b = frozenset(v for v, c in color.items() if c == 1)
    if len(a) > len(b):
        a, b = b, a
    return Bipartition(a, b)


def min_degree(g: Graph) -> int:
    if g.order < 1:
        raise ParameterError("minimum degree of the null graph is undefined")
    return min(row.bit_count() for row in g.adj)


def end_vertices(g: Graph) -> frozenset[int]:
    return frozenset(v for v, row in enumerate(g.adj) if row.bit_count() == 1)


def stems(g: Graph) -> frozenset[int]:
    out = 0
    for v in end_vertices(g):
        out |= g.adj[v]
    return frozenset(iter_bits(out))


# canonical labeling -------------------------------------------------------


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Refine an ordered partition (list of cell masks) to an equitable one.

    Each round gives every vertex the signature (its cell position, its
    neighbour counts into every cell) and regroups by signature. Signatures
    only mention positions, so refinement commutes with relabeling.
    """
    while True:
        k = len(cells)
        if k == len(adj):
            return cells
        groups: dict[tuple, int] = {}
        for i, x in enumerate(cells):
            if x & (x - 1):
                while x:
                    b = x & -x
                    row = adj[b.bit_length() - 1]
                    sig = (i, *[(row & c).bit_count() for c in cells])
                    groups[sig] = groups.get(sig, 0) | b
                    x ^= b
            else:
                groups[(i,)] = x
        if len(groups) == k:
            return cells
        cells = [groups[s] for s in sorted(groups)]


def _orbit_reps(gens: list[list[int]], n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for v in range(n):
            a, b = find(v), find(p[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Canonizer:
    """One canonical-labeling search over a fixed adjacency."""

    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.n = len(adj)
        self.first_path: Optional[list[int]] = None
        self.first_perm: Optional[list[int]] = None
        self.first_code: Optional[tuple[int, ...]] = None
        self.best_code: Optional[tuple[int, ...]] = None
        self.best_perm: Optional[list[int]] = None
        self.gens: list[list[int]] = []

    def _leaf(self, cells: list[int], path: list[int]) -> Optional[int]:
        adj = self.adj
        perm = [c.bit_length() - 1 for c in cells]
        posbit = [0] * self.n
        for i, v in enumerate(perm):
            posbit[v] = 1 << i
        rows = []
        for v in perm:
            r = 0
            x = adj[v]
            while x:
                b = x & -x
                r |= posbit[b.bit_length() - 1]
                x ^= b
            rows.append(r)
        code = tuple(rows)
        if self.first_code is None:
            self.first_path, self.first_perm, self.first_code = list(path), perm, code
            self.best_code, self.best_perm = code, perm
            return None
        if code == self.first_code:
            self._add_auto(self.first_perm, perm)
            d = 0
            while path[d] == self.first_path[d]:
                d += 1
            return d
        if code == self.best_code:
            self._add_auto(self.best_perm, perm)
        elif code < self.best_code:
            self.best_code, self.best_perm = code, perm
        return None

    def _add_auto(self, src: list[int], dst: list[int]) -> None:
        auto = [0] * self.n
        for a, b in zip(src, dst):
            auto[a] = b
        self.gens.append(auto)

    def visit(self, cells: list[int], path: list[int]) -> Optional[int]:
        target = -1
        for i, c in enumerate(cells):
            if c & (c - 1):
                target = i
                break
        if target < 0:
            return self._leaf(cells, path)
        cell = cells[target]
        depth = len(path)
        explored: list[int] = []
        for v in iter_bits(cell):
            if explored:
                fixing = [p for p in self.gens if all(p[u] == u for u in path)]
                if fixing:
                    rep = _orbit_reps(fixing, self.n)
                    if any(rep[v] == rep[u] for u in explored):
                        continue
            explored.append(v)
            b = 1 << v
            child = cells[:target] + [b, cell ^ b] + cells[target + 1:]
            jump = self.visit(_refine(self.adj, child), path + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    def run(self) -> "_Canonizer":
        cells = [(1 << self.n) - 1] if self.n else []
        self.visit(_refine(self.adj, cells), [])
        return self


def _canonize(adj: Sequence[int]) -> _Canonizer:
    if len(adj) == 0:
        c = _Canonizer(adj)
        c.best_code, c.best_perm = (), []
        return c
    return _Canonizer(adj).run()


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``perm`` with ``perm[i]`` the vertex placed at canonical position ``i``."""
    if g.order > CANON_MAX_ORDER:
        raise CapacityError(f"canonical labeling supports order <= {CANON_MAX_ORDER}, got {g.order}")
    return list(_canonize(g.adj).best_perm)


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative of ``g``'s isomorphism class."""
    if g.order > CANON_MAX_ORDER:
        raise CapacityError(f"canonical labeling supports order <= {CANON_MAX_ORDER}, got {g.order}")
    return Graph.from_adjacency(_canonize(g.adj).best_code)


def canonical_form(g: Graph) -> str:
    """Isomorphism-invariant label: graph6 of the canonically relabeled graph."""
    return write_graph6(canonical_graph(g))


def automorphism_generators(g: Graph) -> list[list[int]]:
    """Automorphisms met during canonical search (generate a subgroup of Aut(g))."""
    if g.order > CANON_MAX_ORDER:
        raise CapacityError(f"canonical labeling supports order <= {CANON_MAX_ORDER}, got {g.order}")
    return [list(p) for p in _canonize(g.adj).gens]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.order == h.order and g.size == h.size and canonical_form(g) == canonical_form(h)


# enumeration --------------------------------------------------------------


def _with_edge(adj: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    rows = list(adj)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return tuple(rows)


def _augment(level: dict[tuple[int, ...], tuple[int, ...]], children_of) -> dict:
    nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
    for code in sorted(level):
        for child in children_of(code):
            c = _canonize(child)
            nxt.setdefault(c.best_code, c.best_code)
    return nxt


def _trees(order: int) -> list[tuple[int, ...]]:
    """Canonical adjacency codes of all trees of the given order."""
    level = {(0,): (0,)}
    for n in range(2, order + 1):

        def add_leaf(code, n=n):
            rep = _orbit_reps(_canonize(code).gens, n - 1)
            for v in sorted(set(rep)):
                rows = list(code) + [1 << v]
                rows[v] |= 1 << (n - 1)
                yield tuple(rows)

        level = _augment(level, add_leaf)
    return sorted(level)


def _edge_children(code: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    n = len(code)
    gens = _canonize(code).gens
    seen = set()
    for u, v in itertools.combinations(range(n), 2):
        if code[u] >> v & 1 or (u, v) in seen:
            continue
        # one candidate per orbit of non-edges under the known automorphisms
        orbit = [(u, v)]
        seen.add((u, v))
        while orbit:
            a, b = orbit.pop()
            for p in gens:
                e = _norm_edge(p[a], p[b])
                if e not in seen:
                    seen.add(e)
                    orbit.append(e)
        yield _with_edge(code, u, v)


def enumerate_connected_graphs(
    order: int, filter: Optional[Callable[[Graph], bool]] = None
) -> Iterator[Graph]:
    """Yield one canonical representative per isomorphism class of connected graphs.

    Graphs are produced by edge augmentation starting from the trees of the
    given order, deduplicated by canonical form. Output is grouped by edge
    count and sorted by canonical code inside each group, so it is
    deterministic. ``filter`` is applied to each representative before it is
    yielded.
    """
    if not 1 <= order <= ENUM_MAX_ORDER:
        raise CapacityError(f"enumeration supports 1 <= order <= {ENUM_MAX_ORDER}, got {order}")
    level = {c: c for c in _trees(order)}
    max_edges = order * (order - 1) // 2
    m = order - 1
    while True:
        for code in sorted(level):
            g = Graph.from_adjacency(code)
            if filter is None or filter(g):
                yield g
        if m == max_edges:
            return
        level = _augment(level, _edge_children)
        m += 1


def count_connected_graphs(order: int) -> int:
    return sum(1 for _ in enumerate_connected_graphs(order))
