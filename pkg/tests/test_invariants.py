import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerdom.constructions import blow_up, complete, complete_bipartite, cycle, path, wedge_cycles
from powerdom.errors import BudgetExceeded
from powerdom.graph import Graph, is_bipartite, is_connected
from powerdom.hypergraph import Hypergraph, primal_graph
from powerdom.invariants import (
    CertificateError,
    InvariantCertificate,
    check_certificate,
    domination_number_graph,
    domination_number_hypergraph,
    is_dominating,
    matching_number_graph,
    matching_number_hypergraph,
    oracle_domination,
    oracle_matching,
    oracle_transversal,
    transversal_number_graph,
    transversal_number_hypergraph,
)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@st.composite
def graphs(draw, max_order=8):
    n = draw(st.integers(1, max_order))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


# examples --------------------------------------------------------------------


def test_domination_examples():
    assert domination_number_graph(complete(2)).value == 1
    for n in (2, 3, 4, 5):
        assert domination_number_graph(complete_bipartite(2, n)).value == 2
    assert oracle_domination(cycle(7)) == 3
    assert domination_number_graph(cycle(7)).value == 3


def test_matching_examples():
    assert matching_number_graph(complete(2)).value == 1
    p = petersen()
    assert oracle_matching(p) == 5
    assert matching_number_graph(p).value == 5


WEDGES = list(itertools.product(range(3, 9), repeat=2))


@pytest.mark.parametrize("p, q", [w for w in WEDGES if w[0] % 2 or w[1] % 2])
def test_wedge_matching_and_transversal(p, q):
    g = wedge_cycles(p, q)
    assert matching_number_graph(g).value == p // 2 + q // 2
    assert transversal_number_graph(g).value == math.ceil(p / 2) + math.ceil(q / 2) - 1


@pytest.mark.parametrize("p, q", [w for w in WEDGES if not (w[0] % 2 or w[1] % 2)])
def test_wedge_of_two_even_cycles(p, q):
    # p + q - 1 vertices leave one exposed, so the odd-cycle formula overcounts by one
    g = wedge_cycles(p, q)
    assert oracle_matching(g) == matching_number_graph(g).value == (p + q) // 2 - 1
    assert transversal_number_graph(g).value == math.ceil(p / 2) + math.ceil(q / 2) - 1


def test_transversal_examples():
    assert transversal_number_graph(complete(2)).value == 1


def test_hypergraph_examples():
    single = Hypergraph.from_edges(3, [{0, 1, 2}], k=3)
    assert domination_number_hypergraph(single).value == 1
    assert transversal_number_hypergraph(single).value == 1
    two = Hypergraph.from_edges(4, [{0, 1}, {2, 3}], k=2)
    assert matching_number_hypergraph(two).value == 2
    # odd-odd wedge: gamma = nu + 1 with nu = 2
    assert domination_number_hypergraph(blow_up(wedge_cycles(3, 3), 3, 1).hypergraph).value == 3
    # even-odd wedge: gamma = nu = 3
    assert domination_number_hypergraph(blow_up(wedge_cycles(4, 3), 3, 1).hypergraph).value == 3
    assert oracle_matching(cycle(5)) == 2
    assert matching_number_hypergraph(blow_up(cycle(5), 3, 1).hypergraph).value == 2
    assert matching_number_hypergraph(blow_up(complete_bipartite(2, 3), 4, 2).hypergraph).value == 2
    assert transversal_number_hypergraph(blow_up(wedge_cycles(3, 3), 3, 1).hypergraph).value == 3


def test_oracle_examples():
    assert oracle_domination(cycle(4)) == 2
    assert oracle_matching(complete(4)) == 2
    assert oracle_transversal(complete(4)) == 3


def test_edgeless_and_trivial_graphs():
    k1 = Graph(1, frozenset())
    assert domination_number_graph(k1).value == 1
    assert matching_number_graph(k1).value == 0
    assert transversal_number_graph(k1).value == 0
    empty3 = Graph(3, frozenset())
    assert domination_number_graph(empty3).value == 3 == oracle_domination(empty3)


# certificates ----------------------------------------------------------------


def test_certificate_shapes():
    g = cycle(6)
    d = domination_number_graph(g)
    assert d.kind == "domination" and len(d.witness) == d.value
    m = matching_number_graph(g)
    edges = g.sorted_edges()
    used = [v for i in m.witness for v in edges[i]]
    assert len(used) == len(set(used)) == 6


def test_check_certificate_rejects_bad_witness():
    g = path(3)
    with pytest.raises(CertificateError):
        check_certificate(g, InvariantCertificate("domination", 1, frozenset({0})))
    with pytest.raises(CertificateError):
        check_certificate(g, InvariantCertificate("matching", 2, frozenset({0, 1})))
    with pytest.raises(CertificateError):
        check_certificate(g, InvariantCertificate("transversal", 2, frozenset({1})))


# oracle equivalence (the full order-7 sweep lives in the acceptance suite) ----


def test_solvers_match_oracles_order_6(connected_upto):
    for g in connected_upto(6):
        assert domination_number_graph(g).value == oracle_domination(g)
        assert matching_number_graph(g).value == oracle_matching(g)
        assert transversal_number_graph(g).value == oracle_transversal(g)


@given(graphs())
@settings(max_examples=300, deadline=None)
def test_solvers_match_oracles_on_random_graphs(g):
    assert domination_number_graph(g).value == oracle_domination(g)
    assert matching_number_graph(g).value == oracle_matching(g)
    assert transversal_number_graph(g).value == oracle_transversal(g)


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(1, 9))
    edges = draw(st.lists(st.frozensets(st.integers(0, n - 1), min_size=1, max_size=4), max_size=7, unique=True))
    return Hypergraph(n, tuple(edges))


@given(hypergraphs())
@settings(max_examples=300, deadline=None)
def test_hypergraph_solvers_match_oracles_on_random_hypergraphs(h):
    assert domination_number_hypergraph(h).value == oracle_domination(h)
    assert matching_number_hypergraph(h).value == oracle_matching(h)
    assert transversal_number_hypergraph(h).value == oracle_transversal(h)


def test_twin_reduction_preserves_domination(connected_upto):
    for g in connected_upto(5)[1:]:
        for k, s in ((3, 1), (4, 1), (4, 2), (5, 2)):
            h = blow_up(g, k, s).hypergraph
            reduced = domination_number_hypergraph(h)
            plain = domination_number_graph(primal_graph(h))
            assert reduced.value == plain.value
            assert is_dominating(h, reduced.witness)


# properties --------------------------------------------------------------------


def test_konig_on_bipartite_graphs(connected_upto):
    for g in connected_upto(7):
        if is_bipartite(g) is not None:
            assert transversal_number_graph(g).value == matching_number_graph(g).value


def test_removing_an_edge_drops_matching_by_at_most_one(connected_upto):
    for g in connected_upto(6):
        nu = matching_number_graph(g).value
        for u, v in g.edges:
            assert matching_number_graph(g.without_edge(u, v)).value in (nu, nu - 1)


def test_domination_at_most_transversal(connected_upto):
    for g in connected_upto(7)[1:]:
        assert domination_number_graph(g).value <= transversal_number_graph(g).value


# budgets -----------------------------------------------------------------------


def test_node_budget_raises_instead_of_guessing():
    g = wedge_cycles(7, 8)
    with pytest.raises(BudgetExceeded):
        domination_number_graph(g, node_budget=2)
    with pytest.raises(BudgetExceeded):
        transversal_number_graph(g, node_budget=2)
    h = blow_up(cycle(8), 3, 1).hypergraph
    with pytest.raises(BudgetExceeded):
        matching_number_hypergraph(h, node_budget=2)


def test_oracle_cap():
    with pytest.raises(BudgetExceeded):
        oracle_domination(Graph(30, frozenset()), cap=1000)
