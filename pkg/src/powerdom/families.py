"""Membership tests for the graph families that characterise gamma = nu.

* :func:`is_konig_egervary` is the definitional test tau = nu.
* :func:`is_in_g1` decides the structural family for graphs with pendant
  vertices (K2, generalized coronas, and the three component clauses).
* :func:`is_in_g_ge2` decides the non-bipartite minimum-degree-2 family
  semantically and cross-checks against the nine-graph catalog.
* :func:`satisfies_lemma6` is the two-condition test for bipartite graphs
  of minimum degree at least 2.
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .constructions import BlowupHypergraph
from .errors import CatalogError, ConfigurationError, Graph6Error, ParameterError
from .graph import (
    Graph,
    canonical_form,
    components,
    end_vertices,
    is_bipartite,
    is_connected,
    min_degree,
    parse_graph6,
    stems,
)
from .invariants import domination_number_graph, matching_number_graph, transversal_number_graph
from ._bits import iter_bits, mask_of

log = logging.getLogger(__name__)

CATALOG_ENV = "POWERDOM_CATALOG"
CATALOG_LABELS = tuple("abcdefghi")
CLAUSE_III_LABELS = ("f", "g", "h", "i")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    graph: Graph


@dataclass(frozen=True)
class Membership:
    """Truth value plus the clause that decided it. Truthiness follows ``member``."""

    member: bool
    reason: str

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class FamilyVerdict:
    bipartite: bool
    in_g1: bool
    in_g_ge2: bool
    satisfies_lemma6: bool
    konig_egervary: bool
    gamma_equals_nu: bool
    reasons: tuple[str, ...] = field(default=())

    @property
    def in_h1(self) -> bool:
        """Blow-up of a connected bipartite base."""
        return self.bipartite

    @property
    def in_ke1(self) -> bool:
        """Blow-up of a König-Egerváry base."""
        return self.konig_egervary

    @property
    def in_g1_or_g_ge2(self) -> bool:
        return self.in_g1 or self.in_g_ge2

    @property
    def characterized(self) -> bool:
        return self.in_g1 or self.in_g_ge2 or self.satisfies_lemma6

    @property
    def consistent(self) -> bool:
        return self.gamma_equals_nu == self.characterized

    def as_dict(self) -> dict:
        return {
            "bipartite": self.bipartite,
            "in_g1": self.in_g1,
            "in_g_ge2": self.in_g_ge2,
            "satisfies_lemma6": self.satisfies_lemma6,
            "konig_egervary": self.konig_egervary,
            "gamma_equals_nu": self.gamma_equals_nu,
            "reasons": list(self.reasons),
        }


# catalog ---------------------------------------------------------------------


def _gamma(g: Graph) -> int:
    return domination_number_graph(g).value


def _nu(g: Graph) -> int:
    return matching_number_graph(g).value


def _check_entry(label: str, g: Graph) -> None:
    if not is_connected(g):
        raise CatalogError(f"catalog entry ({label}) is disconnected")
    if is_bipartite(g) is not None:
        raise CatalogError(f"catalog entry ({label}) is bipartite")
    if min_degree(g) < 2:
        raise CatalogError(f"catalog entry ({label}) has minimum degree < 2")
    if _gamma(g) != _nu(g):
        raise CatalogError(f"catalog entry ({label}) has gamma != nu")


def parse_catalog(text: str) -> list[CatalogEntry]:
    """Parse ``label<TAB>graph6`` lines and validate every entry."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise CatalogError(f"line {lineno}: expected 'label<TAB>graph6'")
        label, code = parts
        label = label.strip("()")
        try:
            g = parse_graph6(code)
        except Graph6Error as exc:
            raise CatalogError(f"line {lineno}: {exc}") from None
        _check_entry(label, g)
        entries.append(CatalogEntry(label, g))
    if len(entries) != len(CATALOG_LABELS):
        raise CatalogError(f"catalog must hold {len(CATALOG_LABELS)} entries, found {len(entries)}")
    if sorted(e.label for e in entries) != list(CATALOG_LABELS):
        raise CatalogError(f"catalog labels must be exactly {', '.join(CATALOG_LABELS)}")
    forms = [canonical_form(e.graph) for e in entries]
    if len(set(forms)) != len(forms):
        raise CatalogError("catalog contains isomorphic entries")
    return entries


def load_catalog(source: Optional[str | os.PathLike] = None) -> list[CatalogEntry]:
    """Load the catalog from ``source``, ``$POWERDOM_CATALOG`` or the bundled file."""
    if source is None:
        source = os.environ.get(CATALOG_ENV)
    if source is None:
        text = resources.files("powerdom").joinpath("data/g_ge2_catalog.tsv").read_text()
    else:
        path = Path(source)
        if not path.is_file():
            raise ConfigurationError(f"catalog file {path} not found")
        text = path.read_text()
    return parse_catalog(text)


@lru_cache(maxsize=1)
def _default_catalog() -> tuple[CatalogEntry, ...]:
    return tuple(load_catalog())


def default_catalog() -> Optional[tuple[CatalogEntry, ...]]:
    try:
        return _default_catalog()
    except (ConfigurationError, CatalogError, OSError) as exc:
        log.warning("catalog unavailable: %s", exc)
        return None


def catalog_match(g: Graph, catalog: Sequence[CatalogEntry]) -> Optional[str]:
    """Label of the catalog entry isomorphic to ``g``, if any."""
    if g.order > 12:
        return None
    form = canonical_form(g)
    for e in catalog:
        if e.graph.order == g.order and e.graph.size == g.size and canonical_form(e.graph) == form:
            return e.label
    return None


# König-Egerváry ----------------------------------------------------------------


def is_konig_egervary(g: Graph) -> bool:
    return transversal_number_graph(g).value == _nu(g)


# G_1 -------------------------------------------------------------------------


def _clause_ii(g: Graph, comp: Graph, labels: list[int], u_mask: int) -> Optional[str]:
    """Return None when the bipartite clause holds, else the failure reason."""
    if not is_connected(comp):
        return "component disconnected"
    part = is_bipartite(comp)
    if part is None:
        return "component not bipartite"
    v1, v2 = part.side_x, part.side_y
    if not 1 <= len(v1) < len(v2):
        return "bipartition sides not 1 <= |V1| < |V2|"
    u_local = {i for i, old in enumerate(labels) if u_mask >> old & 1}
    if not u_local:
        return "U is empty"
    if not u_local <= v2:
        return "U not inside V2"
    free = [y for y in v2 if y not in u_local]
    for x1, x2 in itertools.combinations(sorted(v1), 2):
        if not comp.adj[x1] & comp.adj[x2]:
            continue
        pair = (1 << x1) | (1 << x2)
        witnesses = [y for y in free if comp.adj[y] == pair]
        if len(witnesses) < 2:
            return f"pair ({labels[x1]}, {labels[x2]}) lacks two private common neighbours outside U"
    return None


def _clause_iii(comp: Graph, labels: list[int], u_mask: int, catalog) -> Optional[str]:
    label = catalog_match(comp, [e for e in catalog if e.label in CLAUSE_III_LABELS])
    if label is None:
        return "component not isomorphic to catalog (f)-(i)"
    u_local = [i for i, old in enumerate(labels) if u_mask >> old & 1]
    if len(u_local) >= comp.order:
        return "U is not a proper subset of the component"
    gamma = _gamma(comp)
    for r in range(1, len(u_local) + 1):
        for removed in itertools.combinations(u_local, r):
            rest, _ = comp.induced(set(range(comp.order)) - set(removed))
            if _gamma(rest) != gamma:
                return f"gamma drops after deleting {sorted(labels[i] for i in removed)}"
    return None


def is_in_g1(g: Graph, catalog: Optional[Sequence[CatalogEntry]] = None) -> Membership:
    """Structural membership in G_1, read as a literal three-way disjunction.

    Clause iii needs catalog entries (f)-(i); when no catalog is available
    and a component reaches that clause a :class:`ConfigurationError` is
    raised instead of guessing.
    """
    if g.order < 1 or not is_connected(g):
        raise ParameterError("G_1 membership is defined for connected graphs")
    if g.order < 2:
        return Membership(False, "trivial graph (no edges)")
    if g.order == 2:
        return Membership(True, "K2")
    ends = end_vertices(g)
    stem = stems(g)
    core = g.vertex_mask & ~mask_of(ends | stem)
    if not core:
        return Membership(True, "generalized corona")
    u_mask = 0
    for s in stem:
        u_mask |= g.adj[s]
    u_mask &= core

    reasons = []
    for j, comp_vertices in enumerate(components(g, core)):
        if len(comp_vertices) == 1:
            reasons.append(f"G_{j + 1}: i) trivial")
            continue
        comp, labels = g.induced(comp_vertices)
        local_u = u_mask & mask_of(comp_vertices)
        why_ii = _clause_ii(g, comp, labels, local_u)
        if why_ii is None:
            reasons.append(f"G_{j + 1}: ii) bipartite")
            continue
        if catalog is None:
            catalog = default_catalog()
            if catalog is None:
                raise ConfigurationError(f"indeterminate-without-catalog: component G_{j + 1} reaches clause iii")
        why_iii = _clause_iii(comp, labels, local_u, catalog)
        if why_iii is None:
            reasons.append(f"G_{j + 1}: iii) catalog graph")
            continue
        return Membership(False, f"G_{j + 1} fails i) non-trivial; ii) {why_ii}; iii) {why_iii}")
    return Membership(True, "; ".join(reasons))


# G_{>=2} ---------------------------------------------------------------------


def is_in_g_ge2(g: Graph, catalog: Optional[Sequence[CatalogEntry]] = None) -> bool:
    """Connected, minimum degree >= 2, non-bipartite and gamma = nu.

    When a catalog is available the answer is compared with catalog
    isomorphism for graphs no larger than the biggest entry; a disagreement
    raises :class:`CatalogError`.
    """
    if g.order < 1 or not is_connected(g):
        raise ParameterError("G_>=2 membership is defined for connected graphs")
    semantic = (
        g.order >= 3 and min_degree(g) >= 2 and is_bipartite(g) is None and _gamma(g) == _nu(g)
    )
    if catalog is None:
        catalog = default_catalog()
    if catalog:
        bound = max(e.graph.order for e in catalog)
        if g.order <= bound:
            listed = catalog_match(g, catalog) is not None
            if listed != semantic:
                raise CatalogError(
                    f"catalog disagrees with gamma = nu test on graph {sorted(g.edges)}: "
                    f"catalog={listed}, semantic={semantic}"
                )
    return semantic


# bipartite, minimum degree >= 2 -----------------------------------------------


def _lemma6_sides(g: Graph, x_side: frozenset[int], y_side: frozenset[int]) -> bool:
    if not _gamma(g) == _nu(g) == len(x_side):
        return False
    for x1, x2 in itertools.combinations(sorted(x_side), 2):
        if not g.adj[x1] & g.adj[x2]:
            continue
        pair = (1 << x1) | (1 << x2)
        if sum(1 for y in y_side if g.adj[y] == pair) < 2:
            return False
    return True


def satisfies_lemma6(g: Graph) -> bool:
    """Both conditions for bipartite graphs of minimum degree >= 2.

    With equal sides either side may play X; the graph qualifies if one
    choice satisfies both conditions.
    """
    if g.order < 1 or not is_connected(g):
        raise ParameterError("bipartite equality test needs a connected graph")
    part = is_bipartite(g)
    if part is None:
        raise ParameterError("bipartite equality test needs a bipartite graph")
    if min_degree(g) < 2:
        raise ParameterError("bipartite equality test needs minimum degree >= 2")
    if _lemma6_sides(g, part.side_x, part.side_y):
        return True
    if len(part.side_x) == len(part.side_y):
        return _lemma6_sides(g, part.side_y, part.side_x)
    return False


# verdicts ----------------------------------------------------------------------


def classify_graph(g: Graph, catalog: Optional[Sequence[CatalogEntry]] = None) -> FamilyVerdict:
    """Every family flag for a connected graph, plus the reasons behind them."""
    if g.order < 1 or not is_connected(g):
        raise ParameterError("family classification needs a connected graph")
    reasons = []
    bip = is_bipartite(g) is not None
    delta = min_degree(g)
    gamma, nu, tau = _gamma(g), _nu(g), transversal_number_graph(g).value
    g1 = is_in_g1(g, catalog)
    reasons.append(f"G1: {g1.reason}")
    ge2 = is_in_g_ge2(g, catalog)
    if delta >= 2 and not bip:
        reasons.append("G>=2: " + ("member" if ge2 else "gamma != nu"))
    lemma6 = False
    if bip and delta >= 2:
        lemma6 = satisfies_lemma6(g)
        reasons.append("bipartite condition: " + ("holds" if lemma6 else "fails"))
    verdict = FamilyVerdict(
        bipartite=bip,
        in_g1=g1.member,
        in_g_ge2=ge2,
        satisfies_lemma6=lemma6,
        konig_egervary=tau == nu,
        gamma_equals_nu=gamma == nu,
        reasons=tuple(reasons),
    )
    if g.order >= 2 and not verdict.consistent:
        verdict = FamilyVerdict(**{**verdict.__dict__, "reasons": verdict.reasons + ("characterization mismatch",)})
    return verdict


def classify_hypergraph_family(b: BlowupHypergraph, catalog: Optional[Sequence[CatalogEntry]] = None) -> FamilyVerdict:
    """Family flags of a blow-up, all decided on its base graph."""
    return classify_graph(b.base, catalog)
