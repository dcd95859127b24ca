"""Command-line front end: ``pktroute <subcommand> ...``.

Exit codes: 0 success, 1 input error (bad file, flag or script), 2 capability
error (state budget or packet-count cap).  Output is line-oriented text, or
one JSON document with ``--format json``.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bindex, bottleneck, connectivity, graph, kpacket, lexpath, nonlinear, obnoxious, pareto
from .errors import CapabilityError, InputError
from .graph import fmt_value

# module operation -> subcommand that exercises it
OPERATIONS = {
    "parse_graph": "graph-normalize",
    "to_directed": "graph-normalize",
    "serialize_graph": "graph-normalize",
    "max_capacity_dijkstra": "maxcap-path",
    "max_capacity_buckets": "maxcap-path",
    "max_capacity_bsearch": "maxcap-path",
    "feasibility_reachable": "maxcap-path",
    "multicast_tree_from_labels": "maxcap-tree",
    "multicast_tree_bsearch": "maxcap-tree",
    "build_index": "index-build",
    "query_levelwise": "index-query",
    "lca_sqrt": "index-query",
    "query_via_lca": "index-query",
    "compute_dmin": "farthest-path",
    "transform_split": "farthest-path",
    "transform_edge_min": "farthest-path",
    "farthest_path": "farthest-path",
    "farthest_tree": "farthest-tree",
    "build_farthest_index": "farthest-index",
    "lex_compare": "lexpath",
    "generalized_dijkstra": "lexpath",
    "first_component_bsearch": "lexpath",
    "metric_closure": "kpacket-cover",
    "kpacket_cover": "kpacket-cover",
    "kflow_requests": "kflow",
    "nonlinear_chain_dp": "nonlinear-chain",
    "nonlinear_bsearch_max": "nonlinear-chain",
    "nonlinear_graph_sp": "nonlinear-graph",
    "enumerate_reachable": "pareto",
    "pareto_front": "pareto",
    "monotone_sp": "pareto",
    "run_offline": "connectivity",
    "validate_script": "connectivity",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> graph.Graph:
    return graph.parse_graph(_read(path))


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> tuple:
    vals = _ints(text)
    if len(vals) != 2:
        raise InputError(f"expected 'u,v', got {text!r}")
    return tuple(vals)


def _path(p) -> str:
    return " ".join(map(str, p))


class Output:
    def __init__(self):
        self.lines = []
        self.data = {}

    def put(self, key, value, line=None):
        self.data[key] = value
        self.lines.append(line if line is not None else f"{key} {value}")

    def add(self, key, item, line):
        self.data.setdefault(key, []).append(item)
        self.lines.append(line)


def cmd_graph_normalize(args, out):
    g = _graph(args.graph)
    if args.directed:
        g = graph.to_directed(g)
    text = graph.serialize_graph(g)
    out.put("graph", text, text.rstrip("\n"))


def cmd_maxcap_path(args, out):
    g = _graph(args.graph)
    s, t = args.source, args.target
    if args.method == "bsearch":
        res = bottleneck.max_capacity_bsearch(g, s, t, args.column)
        cap, path = res.capacity, res.path
    else:
        if args.method == "buckets":
            labels = bottleneck.max_capacity_buckets(g, s, args.column, lazy=not args.eager)
        else:
            labels = bottleneck.max_capacity_dijkstra(g, s, args.column)
        if not 1 <= t <= g.n:
            raise InputError(f"target {t} outside 1..{g.n}")
        cap = labels.cmx[t] if labels.reachable(t) else None
        path = labels.path_to(t)
    if cap is None:
        out.put("unreachable", True, "unreachable")
        return
    out.put("cap", fmt_value(cap))
    out.put("path", path, f"path {_path(path)}")


def _emit_tree(tree, out, key="cap"):
    out.put(key, fmt_value(tree.capacity))
    for p, c, cap in tree.tree_edges:
        out.add("edges", [p, c, fmt_value(cap)], f"edge {p} {c} {fmt_value(cap)}")


def cmd_maxcap_tree(args, out):
    g = _graph(args.graph)
    dests = _ints(args.dest)
    if args.method == "bsearch":
        tree = bottleneck.multicast_tree_bsearch(g, args.source, dests, args.column)
    else:
        labels = bottleneck.max_capacity_dijkstra(g, args.source, args.column)
        tree = bottleneck.multicast_tree_from_labels(g, labels, args.source, dests, args.column)
    _emit_tree(tree, out)


def _emit_index(index, args, out):
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(bindex.serialize_index(index))
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
        out.put("index", f"n {index.n} H {index.H} k {index.k}")
    else:
        text = bindex.serialize_index(index)
        out.put("index", text, text.rstrip("\n"))


def cmd_index_build(args, out):
    _emit_index(bindex.build_index(_graph(args.graph), args.column), args, out)


def _answer_pairs(index, pairs, method, out):
    for u, v in pairs:
        for x in (u, v):
            if not 1 <= x <= index.n:
                raise InputError(f"vertex {x} outside 1..{index.n}")
        if method == "lca":
            cap = bindex.query_via_lca(index, u, v)
        else:
            cap = bindex.query_levelwise(index, u, v)
        if u == v:
            line = "inf"
        elif bindex.disconnected(index, u, v):
            line = "disconnected cap 0"
        else:
            line = f"cap {fmt_value(cap)}"
        out.add("answers", [u, v, fmt_value(cap)], line)


def _pairs(args) -> list:
    pairs = [_pair(p) for p in args.pair or []]
    if args.pairs:
        for ln in _read(args.pairs).splitlines():
            ln = ln.split("#", 1)[0].split()
            if ln and ln[0] == "query":
                ln = ln[1:]
            if ln:
                if len(ln) != 2:
                    raise InputError(f"query line must be 'query u v': {' '.join(ln)!r}")
                pairs.append(_pair(",".join(ln)))
    return pairs


def cmd_index_query(args, out):
    if bool(args.index) == bool(args.graph):
        raise InputError("give exactly one of --index or --graph")
    if args.index:
        index = bindex.load_index(_read(args.index))
    else:
        index = bindex.build_index(_graph(args.graph), args.column)
    _answer_pairs(index, _pairs(args), args.method, out)


def cmd_farthest_path(args, out):
    g = _graph(args.graph)
    res = obnoxious.farthest_path(g, _ints(args.obnoxious), args.source, args.target,
                                  args.column, args.transform)
    if res.capacity is None:
        out.put("unreachable", True, "unreachable")
        return
    out.put("safety", fmt_value(res.capacity))
    out.put("path", res.path, f"path {_path(res.path)}")


def cmd_farthest_tree(args, out):
    g = _graph(args.graph)
    tree = obnoxious.farthest_tree(g, _ints(args.obnoxious), args.source, _ints(args.dest), args.column)
    _emit_tree(tree, out, "safety")


def cmd_farthest_index(args, out):
    index = obnoxious.build_farthest_index(_graph(args.graph), _ints(args.obnoxious), args.column)
    pairs = _pairs(args)
    if pairs:
        _answer_pairs(index, pairs, args.method, out)
    else:
        _emit_index(index, args, out)


def _vector(vec) -> str:
    return " ".join(fmt_value(x) for x in vec)


def cmd_lexpath(args, out):
    spec = lexpath.AggregatorSpec.parse(args.spec)
    if args.compare:
        a, b = (_ints(x) for x in args.compare)
        out.put("order", lexpath.lex_compare(spec, a, b).value)
        return
    if args.source is None:
        raise InputError("--source is required unless --compare is given")
    g = _graph(args.graph)
    cols = _ints(args.columns) if args.columns else None
    if args.method == "bsearch":
        if args.target is None:
            raise InputError("--method bsearch needs --target")
        vec = lexpath.first_component_bsearch(g, spec, args.source, args.target, cols)
        if vec is None:
            out.put("unreachable", True, "unreachable")
        else:
            out.put("vector", list(map(fmt_value, vec)), f"vector {_vector(vec)}")
        return
    solve = lexpath.lex_dijkstra if args.method == "single" else lexpath.generalized_dijkstra
    labels = solve(g, spec, args.source, cols)
    if args.target is not None:
        if not 1 <= args.target <= g.n:
            raise InputError(f"target {args.target} outside 1..{g.n}")
        vec = labels.vectors[args.target]
        if vec is None:
            out.put("unreachable", True, "unreachable")
            return
        out.put("vector", list(map(fmt_value, vec)), f"vector {_vector(vec)}")
        path = labels.path_to(args.target)
        out.put("path", path, f"path {_path(path)}")
        return
    for v in range(1, g.n + 1):
        vec = labels.vectors[v]
        if vec is None:
            out.add("vertices", [v, None], f"{v} unreachable")
        else:
            out.add("vertices", [v, list(map(fmt_value, vec))], f"{v} {_vector(vec)}")


def _matrix(args) -> list:
    if bool(args.matrix) == bool(args.graph):
        raise InputError("give exactly one of --matrix or --graph")
    if args.matrix:
        return kpacket.metric_closure(kpacket.parse_matrix(_read(args.matrix)))
    return kpacket.matrix_from_graph(_graph(args.graph), args.column)


def cmd_kpacket_cover(args, out):
    c = _matrix(args)
    vinit = _ints(args.init)
    cost, moves = kpacket.kpacket_cover(len(c), len(vinit), vinit, c)
    out.put("cost", fmt_value(cost))
    for a, b in moves:
        out.add("moves", [a, b], f"move {a} {b}")


def cmd_kflow(args, out):
    c = _matrix(args)
    vinit = _ints(args.init)
    cost, assignment = kpacket.kflow_requests(len(c), len(vinit), vinit, _ints(args.requests), c,
                                              distinct=args.distinct)
    out.put("cost", fmt_value(cost))
    out.put("assign", assignment, f"assign {_path(assignment)}")


def _aggregate(args, k) -> nonlinear.AggregateCost:
    coef = _ints(args.coef) if args.coef else [1] * k
    power = _ints(args.power) if args.power else [1] * k
    if len(coef) != k or len(power) != k:
        raise InputError(f"--coef and --power need {k} values")
    return nonlinear.AggregateCost.parametric(args.form, coef, power)


def cmd_nonlinear_chain(args, out):
    chain = nonlinear.parse_chain(_read(args.chain))
    cost = _aggregate(args, chain.k)
    if args.bsearch:
        res = nonlinear.nonlinear_bsearch_max(chain, cost, args.epsilon, args.budget)
    else:
        res = nonlinear.nonlinear_chain_dp(chain, cost, budget=args.budget)
    out.put("cost", res.cost)
    out.put("choices", res.choices, f"choices {_path(res.choices)}")
    out.put("totals", list(res.totals), f"totals {_path(res.totals)}")


def cmd_nonlinear_graph(args, out):
    tg = nonlinear.parse_typed_graph(_read(args.typed_graph))
    cost = _aggregate(args, tg.k)
    dests = _ints(args.dest)
    res = nonlinear.nonlinear_graph_sp(tg, _ints(args.source), dests, cost, budget=args.budget)
    for d in dests:
        if res.cost[d] is None:
            out.add("destinations", [d, None], f"{d} unreachable")
        else:
            out.add("destinations", [d, res.cost[d], list(res.totals[d])],
                    f"{d} cost {res.cost[d]} totals {_path(res.totals[d])}")


def cmd_pareto(args, out):
    g = _graph(args.graph)
    kinds = [k.strip() for k in args.objectives.split(",")]
    senses = [s.strip() for s in args.senses.split(",")] if args.senses else None
    cols = _ints(args.columns) if args.columns else None
    model = pareto.CostModel.from_kinds(kinds, args.vmax, senses, cols)
    sources, dests = _ints(args.source), _ints(args.dest)
    if args.method == "sp":
        table = pareto.monotone_sp(g, model, sources, args.budget)
        front = pareto.front_from_sp(table, dests, weak=True if args.weak is None else args.weak)
        discarded = table.discarded
    else:
        states = pareto.enumerate_reachable(g, model, sources, args.budget)
        front = pareto.pareto_front(states, dests, weak=bool(args.weak))
        discarded = states.discarded
    for e in front:
        out.add("front", {"scores": list(e.scores), "vertex": e.vertex, "path": e.path},
                f"front {_vector(e.scores)} path {_path(e.path)}")
    out.put("discarded", discarded)


def cmd_connectivity(args, out):
    g = _graph(args.graph)
    ops = connectivity.parse_script(_read(args.script))
    bad = connectivity.validate_script(g, ops)
    if args.validate:
        if bad is None:
            out.put("ok", True, "ok")
        else:
            out.put("violation", {"index": bad.index, "message": str(bad)}, f"violation {bad}")
        return
    if bad is not None:
        raise bad
    if args.weights:
        weights = _ints(",".join(_read(args.weights).split()))
    else:
        weights = [1] * g.n
    answers = connectivity.run_offline(g, weights, ops, connectivity.AggregatorPair.parse(args.aggs),
                                       compress=not args.no_compress)
    for a in answers:
        out.add("answers", a, str(a))


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pktroute", description="Packet routing path and connectivity solvers.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        return sp

    def with_graph(sp, required=True):
        sp.add_argument("--graph", required=required, help="edge-list graph file")
        sp.add_argument("--column", type=int, default=0, help="weight column (0-based)")

    sp = add("graph-normalize", cmd_graph_normalize, "Parse a graph and print it in canonical form.")
    with_graph(sp)
    sp.add_argument("--directed", action="store_true", help="replace undirected edges by arc pairs")

    sp = add("maxcap-path", cmd_maxcap_path, "Maximum-capacity path between two vertices.")
    with_graph(sp)
    sp.add_argument("--source", type=int, required=True)
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--method", choices=("dijkstra", "buckets", "bsearch"), default="dijkstra")
    sp.add_argument("--eager", action="store_true", help="buckets: unlink on improvement")

    sp = add("maxcap-tree", cmd_maxcap_tree, "Maximum-capacity multicast tree.")
    with_graph(sp)
    sp.add_argument("--source", type=int, required=True)
    sp.add_argument("--dest", required=True, help="comma-separated destinations")
    sp.add_argument("--method", choices=("labels", "bsearch"), default="labels")

    sp = add("index-build", cmd_index_build, "Build the bottleneck query index.")
    with_graph(sp)
    sp.add_argument("--out", help="write the index here instead of stdout")

    sp = add("index-query", cmd_index_query, "Answer bottleneck queries from an index or a graph.")
    with_graph(sp, required=False)
    sp.add_argument("--index", help="serialized index file")
    sp.add_argument("--pair", action="append", help="query 'u,v' (repeatable)")
    sp.add_argument("--pairs", help="file with one 'query u v' per line")
    sp.add_argument("--method", choices=("levelwise", "lca"), default="levelwise")

    for name, func, text in (("farthest-path", cmd_farthest_path, "Path farthest from obnoxious vertices."),
                             ("farthest-tree", cmd_farthest_tree, "Multicast tree farthest from obnoxious vertices."),
                             ("farthest-index", cmd_farthest_index, "Index of farthest-path safety values.")):
        sp = add(name, func, text)
        with_graph(sp)
        sp.add_argument("--obnoxious", required=True, help="comma-separated obnoxious vertices")
        if name == "farthest-path":
            sp.add_argument("--source", type=int, required=True)
            sp.add_argument("--target", type=int, required=True)
            sp.add_argument("--transform", choices=("edge-min", "split"), default="edge-min")
        elif name == "farthest-tree":
            sp.add_argument("--source", type=int, required=True)
            sp.add_argument("--dest", required=True)
        else:
            sp.add_argument("--pair", action="append")
            sp.add_argument("--pairs")
            sp.add_argument("--method", choices=("levelwise", "lca"), default="levelwise")
            sp.add_argument("--out")

    sp = add("lexpath", cmd_lexpath, "Lexicographically optimal paths under aggregated weights.")
    sp.add_argument("--graph")
    sp.add_argument("--spec", required=True, help="aggregators, e.g. min,sum")
    sp.add_argument("--columns", help="weight column per component")
    sp.add_argument("--source", type=int)
    sp.add_argument("--target", type=int)
    sp.add_argument("--method", choices=("generalized", "single", "bsearch"), default="generalized")
    sp.add_argument("--compare", nargs=2, metavar=("A", "B"), help="compare two vectors and exit")

    for name, func, text in (("kpacket-cover", cmd_kpacket_cover, "Cover all vertices with k forward-only packets."),
                             ("kflow", cmd_kflow, "Serve ordered requests with k packet flows.")):
        sp = add(name, func, text)
        with_graph(sp, required=False)
        sp.add_argument("--matrix", help="dense n x n cost matrix")
        sp.add_argument("--init", required=True, help="comma-separated initial vertices")
        if name == "kflow":
            sp.add_argument("--requests", required=True)
            sp.add_argument("--distinct", action="store_true", help="track packet identities")

    for name, func, text in (("nonlinear-chain", cmd_nonlinear_chain, "Minimum aggregate cost along a typed chain."),
                             ("nonlinear-graph", cmd_nonlinear_graph, "Minimum aggregate cost on a typed graph.")):
        sp = add(name, func, text)
        if name == "nonlinear-chain":
            sp.add_argument("--chain", required=True)
            sp.add_argument("--bsearch", action="store_true", help="binary search (max form only)")
            sp.add_argument("--epsilon", type=float, help="bisection precision instead of exact candidates")
        else:
            sp.add_argument("--typed-graph", required=True)
            sp.add_argument("--source", required=True)
            sp.add_argument("--dest", required=True)
        sp.add_argument("--form", choices=("sum", "max"), default="sum")
        sp.add_argument("--coef", help="coefficient per type")
        sp.add_argument("--power", help="exponent per type")
        sp.add_argument("--budget", type=int, default=nonlinear.DEFAULT_BUDGET)

    sp = add("pareto", cmd_pareto, "Pareto front of multi-objective paths.")
    with_graph(sp)
    sp.add_argument("--objectives", required=True, help="sum|max|min per objective")
    sp.add_argument("--senses", help="min|max per objective (better direction)")
    sp.add_argument("--columns")
    sp.add_argument("--vmax", type=int, required=True)
    sp.add_argument("--source", required=True)
    sp.add_argument("--dest", required=True)
    sp.add_argument("--weak", action="store_true", default=None, help="weak domination")
    sp.add_argument("--method", choices=("enumerate", "sp"), default="enumerate")
    sp.add_argument("--budget", type=int, default=pareto.DEFAULT_STATE_BUDGET)

    sp = add("connectivity", cmd_connectivity, "Offline component/graph weight queries under deletions.")
    with_graph(sp)
    sp.add_argument("--script", required=True)
    sp.add_argument("--weights", help="vertex weights file (n integers)")
    sp.add_argument("--aggs", default="sum,sum", help="'ccagg,gagg'")
    sp.add_argument("--no-compress", action="store_true")
    sp.add_argument("--validate", action="store_true", help="only check the script")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    out = Output()
    try:
        args = _build_parser().parse_args(argv)
        args.func(args, out)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        stdout.write(json.dumps({"command": args.command, **out.data}, sort_keys=True) + "\n")
    else:
        for line in out.lines:
            stdout.write(line + "\n")
    return 0


def main(argv=None) -> int:
    sys.exit(run(argv))
