import math

import pytest

from powerdom.constructions import (
    blow_up,
    blowup_order,
    complete,
    complete_bipartite,
    corona,
    cycle,
    generalized_corona,
    path,
    wedge_cycles,
)
from powerdom.errors import CapacityError, ParameterError
from powerdom.graph import Graph, end_vertices, is_bipartite, is_isomorphic, stems
from powerdom.hypergraph import validate, vertex_degree
from powerdom.invariants import (
    domination_number_graph,
    domination_number_hypergraph,
    matching_number_graph,
    matching_number_hypergraph,
    oracle_domination,
    oracle_matching,
    transversal_number_graph,
    transversal_number_hypergraph,
)

VALID_PARAMS = [(k, s) for k in (3, 4, 5, 6) for s in range(1, k // 2 + 1)]


def test_blowup_examples():
    b = blow_up(complete(2), 3, 1)
    assert b.order == 3 and b.hypergraph.size == 1 and b.hypergraph.hyperedges[0] == frozenset({0, 1, 2})

    b = blow_up(cycle(4), 4, 2)
    assert b.order == 8 and b.hypergraph.size == 4
    assert all(not block for block in b.edge_blocks.values())
    for (u, v), edge in zip(cycle(4).sorted_edges(), b.hypergraph.hyperedges):
        assert edge == b.vertex_blocks[u] | b.vertex_blocks[v]

    b = blow_up(wedge_cycles(3, 3), 3, 1)
    assert b.order == 11 and b.hypergraph.size == 6
    assert all(len(e) == 3 for e in b.hypergraph.hyperedges)


def test_blowup_layout_is_deterministic():
    g = wedge_cycles(4, 3)
    b = blow_up(g, 5, 2)
    assert b.vertex_blocks[3] == frozenset({6, 7})
    first = g.sorted_edges()[0]
    assert b.edge_blocks[first] == frozenset({2 * g.order})
    assert blow_up(g, 5, 2) == b


def test_blowup_invariants(connected_upto):
    for g in connected_upto(5)[1:]:
        for k, s in VALID_PARAMS:
            b = blow_up(g, k, s)
            h = b.hypergraph
            validate(h, k)
            assert h.order == s * g.order + (k - 2 * s) * g.size == blowup_order(g, k, s)
            blocks = list(b.vertex_blocks.values()) + list(b.edge_blocks.values())
            assert sum(map(len, blocks)) == h.order
            assert frozenset().union(*blocks) == frozenset(range(h.order))
            assert all(len(blk) == s for blk in b.vertex_blocks.values())
            assert all(len(blk) == k - 2 * s for blk in b.edge_blocks.values())
            for (u, v), edge in zip(g.sorted_edges(), h.hyperedges):
                assert edge == b.vertex_blocks[u] | b.vertex_blocks[v] | b.edge_blocks[(u, v)]
            if 2 * s < k:
                for blk in b.edge_blocks.values():
                    assert all(vertex_degree(h, x) == 1 for x in blk)


def test_blowup_parameter_errors():
    g = cycle(4)
    for k, s in ((2, 1), (3, 0), (3, 2), (5, 3), (4, -1)):
        with pytest.raises(ParameterError):
            blow_up(g, k, s)
    with pytest.raises(ParameterError):
        blow_up(Graph.from_edges(3, [(0, 1)]), 3, 1)


def test_blowup_capacity():
    # 8 vertices, 28 edges: 8 + 28 = 36 fits at k = 3, 8 + 56 = 64 fits at k = 4, k = 5 does not
    assert blow_up(complete(8), 4, 1).order == 64
    with pytest.raises(CapacityError):
        blow_up(complete(8), 5, 1)


def test_named_graphs():
    assert is_isomorphic(cycle(3), complete(3))
    assert is_isomorphic(complete_bipartite(2, 2), cycle(4))
    k23 = complete_bipartite(2, 3)
    assert (k23.order, k23.size) == (5, 6)
    assert (path(4).order, path(4).size) == (4, 3)
    for bad in (lambda: cycle(2), lambda: path(0), lambda: complete(0),
                lambda: complete_bipartite(0, 3), lambda: wedge_cycles(2, 5)):
        with pytest.raises(ParameterError):
            bad()


def test_wedge_examples():
    g = wedge_cycles(3, 3)
    assert (g.order, g.size) == (5, 6)
    assert sorted(g.degree(v) for v in range(g.order)) == [2, 2, 2, 2, 4]
    assert is_bipartite(wedge_cycles(4, 3)) is None
    assert matching_number_graph(g).value == 2
    assert transversal_number_graph(g).value == 3


@pytest.mark.parametrize("p", range(3, 9))
@pytest.mark.parametrize("q", range(3, 9))
def test_wedge_shape(p, q):
    g = wedge_cycles(p, q)
    assert (g.order, g.size) == (p + q - 1, p + q)
    assert [v for v in range(g.order) if g.degree(v) == 4] == [0]
    assert transversal_number_graph(g).value == math.ceil(p / 2) + math.ceil(q / 2) - 1


def test_corona_examples():
    assert is_isomorphic(corona(complete(2)), path(4))
    c3 = corona(cycle(3))
    assert c3.order == 6
    assert oracle_domination(c3) == oracle_matching(c3) == 3
    gc = generalized_corona(complete(2), {0: 2, 1: 1})
    assert gc.order == 5
    assert end_vertices(gc) | stems(gc) == frozenset(range(gc.order))


def test_corona_errors():
    with pytest.raises(ParameterError):
        generalized_corona(complete(2), {0: 1})
    with pytest.raises(ParameterError):
        generalized_corona(complete(2), {0: 1, 1: 0})
    with pytest.raises(CapacityError):
        corona(complete(33))


def test_corona_covers_every_vertex(connected_upto):
    for g in connected_upto(5)[1:]:
        c = corona(g)
        assert end_vertices(c) | stems(c) == frozenset(range(c.order))


def test_blowup_identities(connected_upto):
    """nu and tau survive the blow-up; gamma becomes tau (s < k/2) or stays gamma (s = k/2)."""
    for g in connected_upto(6)[1:]:
        if g.size > 10:
            continue
        nu = matching_number_graph(g).value
        tau = transversal_number_graph(g).value
        gamma = domination_number_graph(g).value
        for k, s in VALID_PARAMS:
            if blowup_order(g, k, s) > 64:
                continue
            h = blow_up(g, k, s).hypergraph
            assert matching_number_hypergraph(h).value == nu
            assert transversal_number_hypergraph(h).value == tau
            expected = gamma if 2 * s == k else tau
            assert domination_number_hypergraph(h).value == expected
