"""Command-line front end.

Exit status: 0 on success, 1 when a verification check fails (a
blow-up identity, a bound, or the corrected characterization), 2 on
usage, input, capacity, configuration or solver-budget errors.
"""

from __future__ import annotations

import argparse
import functools
import itertools
import json
import logging
import os
import sys
from typing import Iterable, Iterator, Optional, Sequence, TextIO

from . import constructions
from .audit import (
    Proposition2Failure,
    audit_corpus,
    csv_summary,
    enumeration_corpus,
    graph6_corpus,
    hunt_counterexamples,
    verify_proposition2,
)
from .constructions import blow_up, check_blowup_params
from .errors import (
    BudgetExceeded,
    CapacityError,
    CatalogError,
    ConfigurationError,
    Graph6Error,
    ParameterError,
    PowerdomError,
    ValidationError,
)
from .families import CATALOG_ENV, classify_graph, load_catalog
from .graph import Graph, enumerate_connected_graphs, is_bipartite, is_connected, min_degree, write_graph6
from .hypergraph import write_hypergraph_text
from .invariants import (
    DEFAULT_NODE_BUDGET,
    domination_number_graph,
    domination_number_hypergraph,
    matching_number_graph,
    matching_number_hypergraph,
    transversal_number_graph,
    transversal_number_hypergraph,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

log = logging.getLogger("powerdom")


class UsageError(PowerdomError):
    pass


# construction expressions --------------------------------------------------


class ExpressionError(UsageError):
    def __init__(self, text: str, pos: int, message: str):
        self.text, self.pos, self.message = text, pos, message
        super().__init__(f"{message}\n  {text}\n  {' ' * pos}^")


class _Parser:
    """expr := NAME '(' [arg (',' arg)*] ')';  arg := INT | expr"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise ExpressionError(self.text, self.pos, message)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        word = self.text[start:self.pos]
        if not word or word[0].isdigit():
            self.pos = start
            self.fail("expected a construction name")
        if word not in constructions.GENERATORS:
            self.pos = start
            self.fail(f"unknown construction {word!r} (known: {', '.join(sorted(constructions.GENERATORS))})")
        return word

    def arg(self):
        ch = self.peek()
        if ch.isdigit() or ch == "-":
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            try:
                return int(self.text[start:self.pos])
            except ValueError:
                self.pos = start
                self.fail("expected an integer")
        if ch.isalpha() or ch == "_":
            return self.expr()
        self.fail("expected an integer or a construction")

    def expr(self):
        start = self.pos
        word = self.name()
        self.expect("(")
        args = []
        if self.peek() != ")":
            args.append(self.arg())
            while self.peek() == ",":
                self.pos += 1
                args.append(self.arg())
        self.expect(")")
        return self.apply(word, args, start)

    def apply(self, word: str, args: list, start: int):
        fn = constructions.GENERATORS[word]
        try:
            if word == "corona":
                (g,) = args
                if not isinstance(g, Graph):
                    raise TypeError
                return fn(g)
            if word == "generalized_corona":
                g, *counts = args
                if not isinstance(g, Graph) or len(counts) != g.order:
                    raise TypeError
                return fn(g, dict(enumerate(counts)))
            if any(not isinstance(a, int) for a in args):
                raise TypeError
            return fn(*args)
        except CapacityError:
            raise
        except ParameterError as exc:
            raise ExpressionError(self.text, start, f"{word}: {exc}") from None
        except (TypeError, ValueError):
            raise ExpressionError(self.text, start, f"bad arguments for {word}") from None

    def parse(self) -> Graph:
        g = self.expr()
        if self.peek():
            self.fail("unexpected trailing input")
        if not isinstance(g, Graph):
            self.fail("expression does not denote a graph")
        return g


def parse_construction(text: str) -> Graph:
    """Evaluate an expression such as ``corona(cycle(3))`` or ``wedge_cycles(4,3)``."""
    return _Parser(text).parse()


# argument handling -----------------------------------------------------------


def _pair(text: str) -> tuple[int, int]:
    try:
        k, s = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'k,s', got {text!r}") from None
    return k, s


def _add_input(p: argparse.ArgumentParser, corpus: bool = True) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--construct", metavar="EXPR", help="construction expression, e.g. 'wedge_cycles(4,3)'")
    src.add_argument("--graph6", metavar="CODE", help="a single graph6 string")
    src.add_argument("--input", metavar="FILE", help="graph6 lines ('-' for stdin)")
    if corpus:
        src.add_argument("--enumerate", type=int, metavar="N", help="all connected graphs of order 2..N")
        p.add_argument("--max-edges", type=int, help="with --enumerate, skip graphs with more edges")


def _add_params(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--k", type=int, nargs="+", help="edge sizes")
    p.add_argument("--s", type=int, nargs="+", help="blow-up factors")
    p.add_argument("--params", type=_pair, nargs="+", metavar="K,S", help="explicit (k, s) pairs")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default=None, help="output format")
    common.add_argument("--catalog", help=f"catalog file (default: ${CATALOG_ENV} or the bundled one)")
    common.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for audits")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="powerdom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    add = functools.partial(sub.add_parser, parents=[common])

    p = add("invariants", help="gamma, nu, tau with certificates")
    _add_input(p)
    _add_params(p)

    p = add("blowup", help="emit the generalized power hypergraph")
    _add_input(p, corpus=False)
    _add_params(p)

    p = add("families", help="family memberships of a connected graph")
    _add_input(p)

    p = add("enumerate", help="connected graphs up to isomorphism, as graph6")
    p.add_argument("order", type=int)
    p.add_argument("--min-degree", type=int, default=None)
    p.add_argument("--bipartite", choices=("yes", "no"), default=None)

    for name, helptext in (
        ("audit", "full audit records"),
        ("hunt", "only refuting or failing records"),
        ("verify-prop2", "check the blow-up identities over a corpus"),
    ):
        p = add(name, help=helptext)
        _add_input(p)
        _add_params(p)
    return parser


def _graphs(args, connected_only: bool = True) -> Iterator[Graph]:
    if getattr(args, "construct", None):
        yield parse_construction(args.construct)
    elif getattr(args, "graph6", None):
        from .graph import parse_graph6

        yield parse_graph6(args.graph6)
    elif getattr(args, "input", None):
        stream = sys.stdin if args.input == "-" else open(args.input)
        try:
            yield from graph6_corpus(stream, connected_only=connected_only)
        finally:
            if stream is not sys.stdin:
                stream.close()
    elif getattr(args, "enumerate", None):
        yield from enumeration_corpus(args.enumerate, max_edges=args.max_edges)
    else:
        raise UsageError("no input: give --construct, --graph6, --input or --enumerate")


def _param_list(args, required: bool) -> list[tuple[int, int]]:
    pairs = list(args.params or [])
    if args.k or args.s:
        if not (args.k and args.s):
            raise UsageError("--k and --s must be given together")
        pairs += list(itertools.product(args.k, args.s))
    if required and not pairs:
        raise UsageError("blow-up parameters required: --k/--s or --params")
    for k, s in pairs:
        try:
            check_blowup_params(k, s)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
    return pairs


# subcommands -----------------------------------------------------------------


def _cert_text(name: str, cert, edges=None) -> str:
    witness = sorted(cert.witness)
    if name == "nu" and edges is not None:
        return f"{name} = {cert.value}  matching {[tuple(sorted(edges[i])) for i in witness]}"
    return f"{name} = {cert.value}  witness {witness}"


def cmd_invariants(args, out: TextIO) -> int:
    params = _param_list(args, required=False)
    fmt = args.format or "human"
    budget = args.node_budget
    for g in _graphs(args, connected_only=False):
        row = {
            "graph": write_graph6(g),
            "gamma": domination_number_graph(g, budget),
            "nu": matching_number_graph(g),
            "tau": transversal_number_graph(g, budget),
        }
        blown = []
        for k, s in params:
            h = blow_up(g, k, s).hypergraph
            blown.append({
                "k": k,
                "s": s,
                "gamma": domination_number_hypergraph(h, budget),
                "nu": matching_number_hypergraph(h, budget),
                "tau": transversal_number_hypergraph(h, budget),
                "edges": h.hyperedges,
            })
        if fmt == "human":
            out.write(f"graph {row['graph']} (order {g.order}, size {g.size})\n")
            out.write(f"  edges {g.sorted_edges()}\n")
            for name in ("gamma", "nu", "tau"):
                out.write("  " + _cert_text(name, row[name], g.sorted_edges()) + "\n")
            for b in blown:
                out.write(f"  blow-up k={b['k']} s={b['s']}\n")
                for name in ("gamma", "nu", "tau"):
                    out.write("    " + _cert_text(name, b[name], b["edges"]) + "\n")
        elif fmt == "json":
            doc = {"graph": row["graph"], **{n: row[n].as_dict() for n in ("gamma", "nu", "tau")}}
            doc["blowups"] = [{"k": b["k"], "s": b["s"], **{n: b[n].as_dict() for n in ("gamma", "nu", "tau")}} for b in blown]
            out.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            raise UsageError("invariants supports --format human or json")
    return EXIT_OK


def cmd_blowup(args, out: TextIO) -> int:
    params = _param_list(args, required=True)
    fmt = args.format or "human"
    for g in _graphs(args):
        for k, s in params:
            b = blow_up(g, k, s)
            if fmt == "json":
                doc = {
                    "base_graph": write_graph6(g),
                    "k": k,
                    "s": s,
                    "order": b.order,
                    "hyperedges": [sorted(e) for e in b.hypergraph.hyperedges],
                    "vertex_blocks": {str(v): sorted(blk) for v, blk in b.vertex_blocks.items()},
                    "edge_blocks": {f"{u}-{v}": sorted(blk) for (u, v), blk in b.edge_blocks.items()},
                }
                out.write(json.dumps(doc, sort_keys=True) + "\n")
            else:
                out.write(write_hypergraph_text(b.hypergraph))
    return EXIT_OK


def cmd_families(args, out: TextIO, catalog) -> int:
    fmt = args.format or "human"
    for g in _graphs(args):
        if not is_connected(g):
            raise UsageError(f"graph {write_graph6(g)} is not connected")
        v = classify_graph(g, catalog)
        if fmt == "json":
            out.write(json.dumps({"graph": write_graph6(g), **v.as_dict()}, sort_keys=True) + "\n")
        else:
            out.write(f"graph {write_graph6(g)}\n")
            for key, val in v.as_dict().items():
                if key != "reasons":
                    out.write(f"  {key}: {val}\n")
            for r in v.reasons:
                out.write(f"  reason: {r}\n")
    return EXIT_OK


def cmd_enumerate(args, out: TextIO) -> int:
    def keep(g: Graph) -> bool:
        if args.min_degree is not None and min_degree(g) < args.min_degree:
            return False
        if args.bipartite is not None and (is_bipartite(g) is not None) != (args.bipartite == "yes"):
            return False
        return True

    for g in enumerate_connected_graphs(args.order, keep):
        out.write(write_graph6(g) + "\n")
    return EXIT_OK


def _write_records(records: Iterable, fmt: str, out: TextIO) -> int:
    status = EXIT_OK
    if fmt == "csv":
        records = list(records)
        out.write(csv_summary(records))
        return EXIT_FAILED if any(r.check_failures for r in records) else EXIT_OK
    for r in records:
        if r.check_failures:
            status = EXIT_FAILED
        if fmt == "json":
            out.write(r.to_json() + "\n")
        else:
            tags = r.refutes + [f"FAILED:{c}" for c in r.check_failures]
            out.write(
                f"{r.base_graph} k={r.k} s={r.s}: gamma_h={_v(r.gamma_h)} nu_h={_v(r.nu_h)} tau_h={_v(r.tau_h)} "
                f"| gamma={_v(r.gamma_g)} nu={_v(r.nu_g)} tau={_v(r.tau_g)} "
                f"| thm2={r.verdict_thm2.value} thm3={r.verdict_thm3.value} corrected={r.verdict_corrected}"
                + (f" [{', '.join(tags)}]" if tags else "")
                + "\n"
            )
            if r.gamma_h is not None:
                out.write(f"    gamma_h witness {sorted(r.gamma_h.witness)}; nu_h witness {sorted(r.nu_h.witness)}\n")
    return status


def _v(c) -> str:
    return "?" if c is None else str(c.value)


def cmd_audit(args, out: TextIO, catalog, hunt: bool) -> int:
    params = _param_list(args, required=True)
    fmt = args.format or "json"
    fn = hunt_counterexamples if hunt else audit_corpus
    records = fn(_graphs(args), params, jobs=args.jobs, node_budget=args.node_budget, catalog=catalog)
    return _write_records(records, fmt, out)


def cmd_verify_prop2(args, out: TextIO, catalog) -> int:
    params = _param_list(args, required=True)
    try:
        summary = verify_proposition2(
            _graphs(args), params, jobs=args.jobs, node_budget=args.node_budget, catalog=catalog
        )
    except Proposition2Failure as exc:
        out.write(json.dumps({"status": "FAILED", "instance": exc.record.as_dict()}, sort_keys=True) + "\n")
        return EXIT_FAILED
    doc = {"status": "PASS", "params": [list(p) for p in params], **summary.as_dict()}
    if (args.format or "json") == "human":
        out.write(f"blow-up identities: PASS on {summary.instances} instances\n")
        for name, n in summary.passes.items():
            out.write(f"  {name}: {n} passes\n")
        out.write(f"  bounds: {summary.bounds_passes} passes\n")
    else:
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err)
    try:
        catalog = None
        if args.catalog or os.environ.get(CATALOG_ENV):
            catalog = load_catalog(args.catalog)
        if args.subcommand == "invariants":
            return cmd_invariants(args, out)
        if args.subcommand == "blowup":
            return cmd_blowup(args, out)
        if args.subcommand == "families":
            return cmd_families(args, out, catalog)
        if args.subcommand == "enumerate":
            return cmd_enumerate(args, out)
        if args.subcommand in ("audit", "hunt"):
            return cmd_audit(args, out, catalog, hunt=args.subcommand == "hunt")
        if args.subcommand == "verify-prop2":
            return cmd_verify_prop2(args, out, catalog)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
    except Graph6Error as exc:
        err.write(f"parse error: {exc}\n")
    except CapacityError as exc:
        err.write(f"capacity error: {exc}\n")
    except BudgetExceeded as exc:
        err.write(f"solver budget error: {exc}\n")
    except (ConfigurationError, CatalogError) as exc:
        err.write(f"configuration error: {exc}\n")
    except (ParameterError, ValidationError) as exc:
        err.write(f"usage error: {exc}\n")
    except OSError as exc:
        err.write(f"input error: {exc}\n")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())
