"""Exact domination, matching and transversal numbers of generalized power hypergraphs."""

from .constructions import (
    BlowupHypergraph,
    blow_up,
    complete,
    complete_bipartite,
    corona,
    cycle,
    generalized_corona,
    path,
    wedge_cycles,
)
from .graph import (
    Bipartition,
    Graph,
    canonical_form,
    end_vertices,
    enumerate_connected_graphs,
    is_bipartite,
    is_connected,
    min_degree,
    parse_graph6,
    stems,
    write_graph6,
)
from .hypergraph import Hypergraph, KUniformTag, primal_graph, validate, vertex_degree
from .invariants import (
    InvariantCertificate,
    domination_number_graph,
    domination_number_hypergraph,
    matching_number_graph,
    matching_number_hypergraph,
    oracle_domination,
    oracle_matching,
    oracle_transversal,
    transversal_number_graph,
    transversal_number_hypergraph,
)

__version__ = "0.1.0"
