"""Finite hypergraphs with bitset hyperedges, and their primal graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, TextIO

from ._bits import CAPACITY, iter_bits, mask_of
from .errors import (
    CapacityError,
    DuplicateEdgeError,
    EmptyEdgeError,
    UniformityError,
    ValidationError,
    VertexRangeError,
)
from .graph import Graph


@dataclass(frozen=True)
class KUniformTag:
    """Marks a hypergraph whose hyperedges all have exactly ``k`` vertices."""

    k: int


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus an ordered sequence of hyperedges.

    Hyperedge ``i`` is ``hyperedges[i]``; solvers report matchings as index
    sets into this sequence. Construction does not check the structural
    invariants, :func:`validate` does.
    """

    order: int
    hyperedges: tuple[frozenset[int], ...]
    uniform: Optional[KUniformTag] = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Iterable[int]], k: Optional[int] = None) -> "Hypergraph":
        return cls(order, tuple(frozenset(e) for e in edges), KUniformTag(k) if k is not None else None)

    @property
    def k(self) -> Optional[int]:
        return self.uniform.k if self.uniform else None

    @property
    def size(self) -> int:
        return len(self.hyperedges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(e) for e in self.hyperedges)

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """``incidence[v]`` is the bitset of hyperedge indices containing ``v``."""
        rows = [0] * self.order
        for i, e in enumerate(self.hyperedges):
            for v in e:
                if 0 <= v < self.order:
                    rows[v] |= 1 << i
        return tuple(rows)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1


def validate(h: Hypergraph, k: Optional[int] = None) -> None:
    """Raise a :class:`ValidationError` subclass unless ``h`` is well formed.

    When ``k`` is omitted the hypergraph's own uniformity tag (if any) is
    checked instead.
    """
    if h.order < 0:
        raise ValidationError(f"negative order {h.order}")
    if h.order > CAPACITY:
        raise CapacityError(f"order {h.order} exceeds bitset capacity {CAPACITY}")
    if k is None:
        k = h.k
    seen: dict[frozenset[int], int] = {}
    for i, e in enumerate(h.hyperedges):
        if not e:
            raise EmptyEdgeError(f"hyperedge {i} is empty")
        bad = [v for v in e if not 0 <= v < h.order]
        if bad:
            raise VertexRangeError(f"hyperedge {i} has vertices {sorted(bad)} outside [0, {h.order})")
        if e in seen:
            raise DuplicateEdgeError(f"hyperedge {i} duplicates hyperedge {seen[e]}")
        seen[e] = i
        if k is not None and len(e) != k:
            raise UniformityError(f"hyperedge {i} has {len(e)} vertices, expected {k}")


def vertex_degree(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.order:
        raise VertexRangeError(f"vertex {v} outside [0, {h.order})")
    return sum(1 for e in h.hyperedges if v in e)


def primal_graph(h: Hypergraph) -> Graph:
    """Graph on the same vertices with ``u ~ v`` iff some hyperedge holds both."""
    rows = [0] * h.order
    for m in h.masks:
        for v in iter_bits(m):
            rows[v] |= m
    return Graph.from_adjacency([r & ~(1 << v) for v, r in enumerate(rows)])


# text format: "order k" header, then one hyperedge per line -----------------


def write_hypergraph_text(h: Hypergraph) -> str:
    """Serialise ``h``; a ``k`` of 0 in the header marks a non-uniform hypergraph."""
    k = h.k or 0
    lines = [f"{h.order} {k}"]
    lines.extend(" ".join(str(v) for v in sorted(e)) for e in h.hyperedges)
    return "\n".join(lines) + "\n"


def read_hypergraph_text(source: str | TextIO) -> Hypergraph:
    text = source if isinstance(source, str) else source.read()
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValidationError("empty hypergraph text")
    head = rows[0].split()
    if len(head) != 2:
        raise ValidationError(f"header must be 'order k', got {rows[0]!r}")
    try:
        order, k = int(head[0]), int(head[1])
        edges = [[int(t) for t in ln.split()] for ln in rows[1:]]
    except ValueError as exc:
        raise ValidationError(f"non-integer token in hypergraph text: {exc}") from None
    h = Hypergraph.from_edges(order, edges, k or None)
    for i, e in enumerate(edges):
        if len(set(e)) != len(e):
            raise ValidationError(f"hyperedge {i} repeats a vertex")
    validate(h)
    return h
