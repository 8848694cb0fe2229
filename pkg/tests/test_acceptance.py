"""Acceptance criteria 1-11, each at its stated tolerance and time limit.

Every test appends one PASS/FAIL line to the "acceptance criteria" section
of the terminal summary.
"""

import math
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES
from powerdom.audit import PASS, TheoremVerdict, audit_corpus, audit_graph, verify_proposition2
from powerdom.constructions import blow_up, complete_bipartite, wedge_cycles
from powerdom.families import is_in_g1, is_in_g_ge2, is_konig_egervary, load_catalog, satisfies_lemma6
from powerdom.graph import canonical_form, enumerate_connected_graphs, is_bipartite, min_degree, write_graph6
from powerdom.invariants import (
    check_certificate,
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

pytestmark = pytest.mark.acceptance

BLOWUP_PARAMS = [(3, 1), (4, 1), (5, 2)]
IDENTITY_PARAMS = [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (6, 3)]


@contextmanager
def criterion(number, title, limit=None):
    """Record one PASS/FAIL line; the body fails by raising, or by overrunning ``limit`` seconds."""
    start = time.perf_counter()
    detail = []
    status = "FAIL"
    try:
        yield detail
        elapsed = time.perf_counter() - start
        assert limit is None or elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    except BaseException as exc:
        detail.append(str(exc).splitlines()[0][:200] if str(exc) else type(exc).__name__)
        raise
    finally:
        elapsed = time.perf_counter() - start
        bound = f" (limit {limit}s)" if limit else ""
        extra = f": {'; '.join(detail)}" if detail else ""
        ACCEPTANCE_LINES.append(f"[{status}] {number:>2}. {title} in {elapsed:.1f}s{bound}{extra}")


def g_eq_nu_h(g, k, s):
    h = blow_up(g, k, s).hypergraph
    return domination_number_hypergraph(h).value, matching_number_hypergraph(h).value


def test_1_wedge_formulas():
    with criterion(1, "wedge nu/tau closed forms", limit=1) as detail:
        pairs = [(p, q) for p in range(3, 9) for q in range(3, 9)]
        odd = [(p, q) for p, q in pairs if p % 2 or q % 2]
        for p, q in pairs:
            g = wedge_cycles(p, q)
            nu = matching_number_graph(g).value
            tau = transversal_number_graph(g).value
            assert tau == math.ceil(p / 2) + math.ceil(q / 2) - 1, (p, q, tau)
            if (p, q) in odd:
                assert nu == p // 2 + q // 2, (p, q, nu)
            else:
                # p + q - 1 vertices: the stated nu formula exceeds the vertex bound here
                assert nu == (p + q) // 2 - 1, (p, q, nu)
        detail.append(
            f"tau on all {len(pairs)} pairs; nu on the {len(odd)} pairs with p or q odd "
            f"(the {len(pairs) - len(odd)} even/even pairs have nu = (p+q)/2 - 1, one below the formula)"
        )


def test_2_odd_wedges_miss_equality():
    with criterion(2, "odd/odd wedges: gamma_h = nu_h + 1", limit=60) as detail:
        n = 0
        for p, q in ((3, 3), (3, 5), (5, 5)):
            for k, s in BLOWUP_PARAMS:
                gamma, nu = g_eq_nu_h(wedge_cycles(p, q), k, s)
                assert gamma == nu + 1, (p, q, k, s, gamma, nu)
                n += 1
        detail.append(f"{n} instances")


def test_3_even_odd_wedges_refute():
    with criterion(3, "even/odd wedges: gamma_h = nu_h, non-bipartite base, REFUTED", limit=60) as detail:
        n = 0
        for p, q in ((4, 3), (4, 5), (6, 3)):
            g = wedge_cycles(p, q)
            assert is_bipartite(g) is None
            for k, s in BLOWUP_PARAMS:
                r = audit_graph(g, k, s)
                assert r.gamma_h.value == r.nu_h.value, (p, q, k, s)
                verdict = r.verdict_thm2 if s == 1 else r.verdict_thm3
                assert verdict is TheoremVerdict.REFUTED, (p, q, k, s, verdict)
                n += 1
        detail.append(f"{n} instances")


def test_4_complete_bipartite_refutes():
    with criterion(4, "K_{2,n} at k=4, s=2: gamma = nu = 2, outside both families, REFUTED", limit=10):
        for n in (2, 3, 4):
            g = complete_bipartite(2, n)
            gamma, nu = g_eq_nu_h(g, 4, 2)
            assert gamma == nu == 2, (n, gamma, nu)
            assert not is_in_g1(g) and not is_in_g_ge2(g)
            assert audit_graph(g, 4, 2).verdict_thm3 is TheoremVerdict.REFUTED


def identity_corpus():
    for n in range(2, 7):
        for g in enumerate_connected_graphs(n):
            if n <= 5 or g.size <= 10:
                yield g


def test_5_blowup_identities():
    with criterion(5, "blow-up identities over the order <= 6 corpus", limit=1800) as detail:
        summary = verify_proposition2(identity_corpus(), IDENTITY_PARAMS)
        detail.append(f"{summary.instances} instances, 0 failures, passes {summary.passes}")


def test_6_bounds():
    with criterion(6, "nu_h <= gamma_h <= 2 nu_h (s < k/2), gamma_h <= nu_h (s = k/2)", limit=1800) as detail:
        n = 0
        for r in audit_corpus(identity_corpus(), IDENTITY_PARAMS):
            gamma, nu = r.gamma_h.value, r.nu_h.value
            if r.half:
                assert gamma <= nu, r.to_json()
            else:
                assert nu <= gamma <= 2 * nu, r.to_json()
            assert r.verdict_bounds == PASS
            n += 1
        detail.append(f"{n} instances, 0 failures")


def test_7_corrected_characterization():
    with criterion(7, "gamma_h = nu_h at (3,1) iff base is Konig-Egervary, order <= 6") as detail:
        n = 0
        for size in range(2, 7):
            for g in enumerate_connected_graphs(size):
                gamma, nu = g_eq_nu_h(g, 3, 1)
                assert (gamma == nu) == is_konig_egervary(g), write_graph6(g)
                n += 1
        detail.append(f"{n} graphs")


@pytest.mark.slow
def test_8_min_degree_two_enumeration():
    with criterion(8, "non-bipartite delta >= 2 graphs with gamma = nu up to order 9 vs catalog", limit=600) as detail:
        def keep(g):
            return min_degree(g) >= 2 and is_bipartite(g) is None

        found = {}
        for n in range(3, 10):
            for g in enumerate_connected_graphs(n, keep):
                if domination_number_graph(g).value == matching_number_graph(g).value:
                    found[canonical_form(g)] = write_graph6(g)
        catalog = {canonical_form(e.graph): (e.label, write_graph6(e.graph)) for e in load_catalog()}
        missing = sorted(code for form, (_, code) in catalog.items() if form not in found)
        extra = sorted(code for form, code in found.items() if form not in catalog)
        detail.append(f"found {len(found)}: {' '.join(sorted(found.values()))}")
        assert not missing and not extra, f"catalog entries not found {missing}; unlisted graphs {extra}"
        assert len(found) == 9


@pytest.mark.slow
def test_9_pendant_graphs(connected_upto):
    with criterion(9, "G1 membership iff gamma = nu, delta = 1, order <= 8", limit=1800) as detail:
        n = 0
        for g in connected_upto(8):
            if g.order >= 2 and min_degree(g) == 1:
                equal = oracle_domination(g) == oracle_matching(g)
                assert bool(is_in_g1(g)) == equal, write_graph6(g)
                n += 1
        detail.append(f"{n} graphs, 0 failures")


@pytest.mark.slow
def test_10_bipartite_min_degree_two(connected_upto):
    with criterion(10, "bipartite condition iff gamma = nu, bipartite delta >= 2, order <= 8", limit=600) as detail:
        n = 0
        for g in connected_upto(8):
            if g.order >= 2 and min_degree(g) >= 2 and is_bipartite(g) is not None:
                equal = oracle_domination(g) == oracle_matching(g)
                assert satisfies_lemma6(g) == equal, write_graph6(g)
                n += 1
        detail.append(f"{n} graphs, 0 failures")


@pytest.mark.slow
def test_11_solvers_match_oracles(connected_upto):
    with criterion(11, "solvers equal exhaustive oracles, certificates re-validated", limit=1200) as detail:
        graphs = 0
        for g in connected_upto(7):
            for solve, oracle in (
                (domination_number_graph, oracle_domination),
                (matching_number_graph, oracle_matching),
                (transversal_number_graph, oracle_transversal),
            ):
                cert = solve(g)
                check_certificate(g, cert)
                assert cert.value == oracle(g), (write_graph6(g), cert.kind)
            graphs += 1
        hypergraphs = 0
        for g in connected_upto(5):
            if g.order < 2:
                continue
            for k, s in ((3, 1), (4, 1), (4, 2)):
                h = blow_up(g, k, s).hypergraph
                for solve, oracle in (
                    (domination_number_hypergraph, oracle_domination),
                    (matching_number_hypergraph, oracle_matching),
                    (transversal_number_hypergraph, oracle_transversal),
                ):
                    cert = solve(h)
                    check_certificate(h, cert)
                    assert cert.value == oracle(h), (write_graph6(g), k, s, cert.kind)
                hypergraphs += 1
        detail.append(f"{graphs} graphs, {hypergraphs} blow-ups")
