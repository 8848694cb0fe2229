"""Auditing the domination/matching claims for generalized power hypergraphs.

:func:`audit_graph` measures every invariant of a base graph and of its
blow-up independently and turns them into verdicts:

``prop2``
    nu_h = nu_g, tau_h = tau_g, and gamma_h = tau_h (s < k/2) or
    gamma_h = gamma_g (s = k/2).
``bounds``
    nu_h <= gamma_h <= 2 nu_h (s < k/2), gamma_h <= nu_h (s = k/2).
``thm2`` / ``thm3``
    the published "gamma_h = nu_h iff bipartite base" claim (s = 1) and its
    generalisation (s > 1; for s = k/2 the base family is G1 u G>=2).
``corrected``
    gamma_h = nu_h iff the base is König-Egerváry (s < k/2), iff
    gamma_g = nu_g (s = k/2).

:func:`hunt_counterexamples` streams the records that refute a theorem or
fail a check, and :func:`verify_proposition2` aggregates pass counts.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .constructions import blow_up, blowup_order, check_blowup_params
from .errors import BudgetExceeded, CapacityError, Graph6Error, ParameterError, PowerdomError
from .families import FamilyVerdict, classify_graph
from .graph import Graph, enumerate_connected_graphs, is_connected, parse_graph6, write_graph6
from .invariants import (
    DEFAULT_NODE_BUDGET,
    InvariantCertificate,
    check_certificate,
    domination_number_graph,
    domination_number_hypergraph,
    matching_number_graph,
    matching_number_hypergraph,
    transversal_number_graph,
    transversal_number_hypergraph,
)
from ._bits import CAPACITY

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
PASS = "PASS"
FAIL = "FAIL"


class TheoremVerdict(str, enum.Enum):
    CONFIRMED = "CONFIRMED"
    # gamma_h = nu_h although the base is outside the claimed family
    REFUTED = "REFUTED"
    # base inside the claimed family but gamma_h != nu_h
    REFUTED_CONVERSE = "REFUTED_CONVERSE"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    INCOMPLETE = "INCOMPLETE"

    @property
    def is_refutation(self) -> bool:
        return self in (TheoremVerdict.REFUTED, TheoremVerdict.REFUTED_CONVERSE)


def _theorem_verdict(equality: bool, member: bool) -> TheoremVerdict:
    if equality == member:
        return TheoremVerdict.CONFIRMED
    return TheoremVerdict.REFUTED if equality else TheoremVerdict.REFUTED_CONVERSE


@dataclass(frozen=True)
class AuditRecord:
    base_graph: str
    k: int
    s: int
    gamma_h: Optional[InvariantCertificate]
    nu_h: Optional[InvariantCertificate]
    tau_h: Optional[InvariantCertificate]
    gamma_g: Optional[InvariantCertificate]
    nu_g: Optional[InvariantCertificate]
    tau_g: Optional[InvariantCertificate]
    verdict_prop2: dict
    verdict_bounds: Optional[str]
    verdict_thm2: TheoremVerdict
    verdict_thm3: TheoremVerdict
    verdict_corrected: Optional[str]
    family: Optional[FamilyVerdict]
    errors: dict = field(default_factory=dict)
    mode: str = "measured"

    @property
    def complete(self) -> bool:
        return not self.errors

    @property
    def half(self) -> bool:
        return 2 * self.s == self.k

    @property
    def check_failures(self) -> list[str]:
        """Names of failed checks; any entry here points at an implementation bug."""
        out = [f"prop2.{name}" for name, v in self.verdict_prop2.items() if v == FAIL]
        if self.verdict_bounds == FAIL:
            out.append("bounds")
        if self.verdict_corrected == FAIL:
            out.append("corrected")
        if self.family is not None and self.family.reasons and "characterization mismatch" in self.family.reasons:
            out.append("family")
        return out

    @property
    def refutes(self) -> list[str]:
        out = []
        if self.verdict_thm2.is_refutation:
            out.append("thm2")
        if self.verdict_thm3.is_refutation:
            out.append("thm3")
        return out

    def as_dict(self) -> dict:
        def cert(c):
            return None if c is None else c.as_dict()

        return {
            "schema": SCHEMA_VERSION,
            "base_graph": self.base_graph,
            "k": self.k,
            "s": self.s,
            "mode": self.mode,
            "complete": self.complete,
            "gamma_h": cert(self.gamma_h),
            "nu_h": cert(self.nu_h),
            "tau_h": cert(self.tau_h),
            "gamma_g": cert(self.gamma_g),
            "nu_g": cert(self.nu_g),
            "tau_g": cert(self.tau_g),
            "verdict_prop2": dict(self.verdict_prop2),
            "verdict_bounds": self.verdict_bounds,
            "verdict_thm2": self.verdict_thm2.value,
            "verdict_thm3": self.verdict_thm3.value,
            "verdict_corrected": self.verdict_corrected,
            "family": None if self.family is None else self.family.as_dict(),
            "check_failures": self.check_failures,
            "errors": dict(self.errors),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))


def _value(c: Optional[InvariantCertificate]) -> Optional[int]:
    return None if c is None else c.value


def audit_graph(
    g: Graph,
    k: int,
    s: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    catalog=None,
    fast: bool = False,
) -> AuditRecord:
    """Audit one (base graph, k, s) instance.

    Hypergraph invariants are measured on the blow-up itself. ``fast=True``
    instead derives them from the base graph through the identity
    nu_h = nu_g, tau_h = tau_g, gamma_h = tau_g or gamma_g; such records are
    marked ``mode="fast"`` and must never feed a verification run.
    """
    check_blowup_params(k, s)
    if g.order < 2 or not is_connected(g):
        raise ParameterError("audit needs a connected base graph with at least one edge")
    if blowup_order(g, k, s) > CAPACITY:
        raise CapacityError(f"blow-up of order {blowup_order(g, k, s)} exceeds capacity {CAPACITY}")
    b = blow_up(g, k, s)
    h = b.hypergraph
    half = 2 * s == k
    errors: dict[str, str] = {}

    def measure(name, fn, obj):
        try:
            cert = fn(obj, node_budget) if fn is not matching_number_graph else fn(obj)
        except BudgetExceeded as exc:
            errors[name] = str(exc)
            return None
        check_certificate(obj, cert)
        return cert

    gamma_g = measure("gamma_g", domination_number_graph, g)
    nu_g = measure("nu_g", matching_number_graph, g)
    tau_g = measure("tau_g", transversal_number_graph, g)
    if fast:
        nu_h, tau_h = nu_g, tau_g
        gamma_h = gamma_g if half else tau_g
    else:
        gamma_h = measure("gamma_h", domination_number_hypergraph, h)
        nu_h = measure("nu_h", matching_number_hypergraph, h)
        tau_h = measure("tau_h", transversal_number_hypergraph, h)
    vg, ng, tg = _value(gamma_g), _value(nu_g), _value(tau_g)
    vh, nh, th = _value(gamma_h), _value(nu_h), _value(tau_h)

    def check(*vals, cond):
        if any(v is None for v in vals):
            return None
        return PASS if cond() else FAIL

    prop2 = {
        "nu": check(nh, ng, cond=lambda: nh == ng),
        "tau": check(th, tg, cond=lambda: th == tg),
        "gamma_tau": None if half else check(vh, th, cond=lambda: vh == th),
        "gamma_base": check(vh, vg, cond=lambda: vh == vg) if half else None,
    }
    if half:
        bounds = check(vh, nh, cond=lambda: vh <= nh)
    else:
        bounds = check(vh, nh, cond=lambda: nh <= vh <= 2 * nh)

    try:
        family = classify_graph(g, catalog)
    except BudgetExceeded as exc:
        errors["family"] = str(exc)
        family = None

    equality = None if vh is None or nh is None else vh == nh
    thm2 = thm3 = TheoremVerdict.NOT_APPLICABLE
    if equality is None or family is None:
        if s == 1:
            thm2 = TheoremVerdict.INCOMPLETE
        else:
            thm3 = TheoremVerdict.INCOMPLETE
    elif s == 1:
        thm2 = _theorem_verdict(equality, family.bipartite)
    elif half:
        thm3 = _theorem_verdict(equality, family.in_g1_or_g_ge2)
    else:
        thm3 = _theorem_verdict(equality, family.bipartite)

    if equality is None or family is None:
        corrected = None
    elif half:
        corrected = check(vg, ng, cond=lambda: equality == (vg == ng))
    else:
        corrected = PASS if equality == family.konig_egervary else FAIL

    if not half and vh is not None and tg is not None and vh != tg:
        log.error("gamma_h != tau_g for %s with k=%d, s=%d", write_graph6(g), k, s)

    return AuditRecord(
        base_graph=write_graph6(g),
        k=k,
        s=s,
        gamma_h=gamma_h,
        nu_h=nu_h,
        tau_h=tau_h,
        gamma_g=gamma_g,
        nu_g=nu_g,
        tau_g=tau_g,
        verdict_prop2=prop2,
        verdict_bounds=bounds,
        verdict_thm2=thm2,
        verdict_thm3=thm3,
        verdict_corrected=corrected,
        family=family,
        errors=errors,
        mode="fast" if fast else "measured",
    )


# corpora -----------------------------------------------------------------------


def enumeration_corpus(
    max_order: int,
    max_edges: Optional[int] = None,
    min_order: int = 2,
    filter: Optional[Callable[[Graph], bool]] = None,
) -> Iterator[Graph]:
    """Connected graphs of order ``min_order..max_order`` up to isomorphism."""
    for n in range(min_order, max_order + 1):
        for g in enumerate_connected_graphs(n, filter):
            if max_edges is None or g.size <= max_edges:
                yield g


def default_corpus() -> Iterator[Graph]:
    """All connected graphs of order <= 6 with at most 10 edges."""
    return enumeration_corpus(6, max_edges=10)


def graph6_corpus(lines: Iterable[str], connected_only: bool = True) -> Iterator[Graph]:
    """Parse a graph6 stream, skipping (and logging) malformed or unusable lines."""
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith(">>"):
            continue
        try:
            g = parse_graph6(line)
        except Graph6Error as exc:
            log.warning("line %d skipped: %s", lineno, exc)
            continue
        if connected_only and (g.order < 2 or not is_connected(g)):
            log.warning("line %d skipped: base graph must be connected with an edge", lineno)
            continue
        yield g


CorpusItem = Union[Graph, str]


def _as_graph(item: CorpusItem) -> Optional[Graph]:
    if isinstance(item, Graph):
        return item
    try:
        return parse_graph6(item.strip())
    except Graph6Error as exc:
        log.warning("corpus item skipped: %s", exc)
        return None


def _audit_task(args) -> list[AuditRecord]:
    g, params, node_budget, catalog = args
    out = []
    for k, s in params:
        if blowup_order(g, k, s) > CAPACITY:
            log.warning("skipping %s at k=%d, s=%d: blow-up exceeds capacity", write_graph6(g), k, s)
            continue
        out.append(audit_graph(g, k, s, node_budget=node_budget, catalog=catalog))
    return out


def audit_corpus(
    corpus: Iterable[CorpusItem],
    params: Sequence[tuple[int, int]],
    jobs: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
    catalog=None,
) -> Iterator[AuditRecord]:
    """Audit every corpus graph under every (k, s), in corpus order.

    With ``jobs > 1`` graphs are audited in worker processes; results are
    still yielded in corpus order.
    """
    for k, s in params:
        check_blowup_params(k, s)
    graphs = (g for g in map(_as_graph, corpus) if g is not None)
    tasks = ((g, tuple(params), node_budget, catalog) for g in graphs)
    if jobs <= 1:
        for task in tasks:
            yield from _audit_task(task)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for records in pool.map(_audit_task, tasks, chunksize=4):
            yield from records


def hunt_counterexamples(
    corpus: Iterable[CorpusItem],
    params: Sequence[tuple[int, int]],
    jobs: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
    catalog=None,
) -> Iterator[AuditRecord]:
    """Yield the records that refute a theorem or fail a check."""
    for rec in audit_corpus(corpus, params, jobs=jobs, node_budget=node_budget, catalog=catalog):
        if rec.refutes or rec.check_failures:
            if rec.check_failures:
                log.error("implementation bug suspected: %s", rec.to_json())
            yield rec


class Proposition2Failure(PowerdomError, AssertionError):
    def __init__(self, record: AuditRecord):
        super().__init__(f"identity failed on instance {record.to_json()}")
        self.record = record


@dataclass
class Proposition2Summary:
    instances: int = 0
    passes: dict = field(default_factory=lambda: {"nu": 0, "tau": 0, "gamma_tau": 0, "gamma_base": 0})
    bounds_passes: int = 0

    def as_dict(self) -> dict:
        return {"instances": self.instances, "passes": dict(self.passes), "bounds_passes": self.bounds_passes}


def verify_proposition2(
    corpus: Iterable[CorpusItem],
    params: Sequence[tuple[int, int]],
    jobs: int = 1,
    node_budget: int = DEFAULT_NODE_BUDGET,
    catalog=None,
) -> Proposition2Summary:
    """Count passes of each identity; the first failure raises with the instance attached."""
    summary = Proposition2Summary()
    for rec in audit_corpus(corpus, params, jobs=jobs, node_budget=node_budget, catalog=catalog):
        if not rec.complete:
            raise Proposition2Failure(rec)
        summary.instances += 1
        for name, v in rec.verdict_prop2.items():
            if v == FAIL:
                raise Proposition2Failure(rec)
            if v == PASS:
                summary.passes[name] += 1
        if rec.verdict_bounds == FAIL:
            raise Proposition2Failure(rec)
        summary.bounds_passes += 1
    return summary


CSV_COLUMNS = (
    "base_graph", "k", "s", "gamma_h", "nu_h", "tau_h", "gamma_g", "nu_g", "tau_g",
    "prop2", "bounds", "thm2", "thm3", "corrected",
)


def csv_summary(records: Iterable[AuditRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        prop2 = FAIL if FAIL in r.verdict_prop2.values() else PASS
        w.writerow([
            r.base_graph, r.k, r.s,
            _value(r.gamma_h), _value(r.nu_h), _value(r.tau_h),
            _value(r.gamma_g), _value(r.nu_g), _value(r.tau_g),
            prop2, r.verdict_bounds, r.verdict_thm2.value, r.verdict_thm3.value, r.verdict_corrected,
        ])
    return buf.getvalue()
