"""Graph container, edge-list text format and the undirected-to-directed transform.

Vertices are numbered ``1..n`` everywhere in the public API.  Index 0 of the
per-vertex lists is unused (the bottleneck index reuses it for its super-root).

Text format::

    # comment
    n m directed|undirected arity
    u v w1 [w2 ...]        (m lines, arity weights each)
"""
from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import GraphParseError, InputError

#: +infinity sentinel: larger than any int64 weight the parser accepts.
INF = (1 << 63) - 1


def sat_add(a: int, b: int) -> int:
    s = a + b
    return INF if s >= INF else s


def fmt_value(x) -> str:
    return "inf" if x == INF else str(x)


class Edge(NamedTuple):
    u: int
    v: int
    eid: int
    weights: tuple


class Graph:
    """Immutable multigraph with integer weight columns.

    ``adj[u]`` lists ``(v, edge_index)`` pairs in input order.  An undirected
    edge shows up in both endpoint lists (a self-loop only once).
    """

    __slots__ = ("n", "directed", "arity", "edges", "adj", "_csr")

    def __init__(self, n: int, edges: Iterable, directed: bool = False, arity: int = 1):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        if arity < 1:
            raise InputError("weight arity must be at least 1")
        self.n = n
        self.directed = directed
        self.arity = arity
        self._csr = {}
        counters: dict = {}
        built = []
        adj: list = [[] for _ in range(n + 1)]
        for item in edges:
            u, v, weights = item[0], item[1], item[-1]
            if isinstance(weights, int):
                weights = (weights,)
            weights = tuple(weights)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            if len(weights) != arity:
                raise InputError(f"edge ({u}, {v}) has {len(weights)} weights, expected {arity}")
            if any(w < 0 for w in weights):
                raise InputError(f"edge ({u}, {v}) has a negative weight")
            key = (u, v) if directed else (min(u, v), max(u, v))
            eid = counters.get(key, 0) + 1
            counters[key] = eid
            idx = len(built)
            built.append(Edge(u, v, eid, weights))
            adj[u].append((v, idx))
            if not directed and u != v:
                adj[v].append((u, idx))
        self.edges = built
        self.adj = adj

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, idx: int, column: int = 0) -> int:
        return self.edges[idx].weights[column]

    def column_values(self, column: int = 0) -> list:
        self._check_column(column)
        return [e.weights[column] for e in self.edges]

    def _check_column(self, column: int) -> None:
        if not 0 <= column < self.arity:
            raise InputError(f"weight column {column} out of range for arity {self.arity}")

    def csr(self, column: int = 0):
        """Compressed adjacency ``(offsets, targets, weights, edge_ids)`` for one column.

        Cached; used by the compiled kernels.
        """
        if column not in self._csr:
            self._check_column(column)
            offsets = [0] * (self.n + 2)
            targets, weights, ids = [], [], []
            for u in range(1, self.n + 1):
                for v, idx in self.adj[u]:
                    targets.append(v)
                    weights.append(self.edges[idx].weights[column])
                    ids.append(idx)
                offsets[u + 1] = len(targets)
            offsets[0] = offsets[1] = 0
            self._csr[column] = (offsets, targets, weights, ids)
        return self._csr[column]

    def edge_multiset(self) -> list:
        """Sorted ``(u, v, weights)`` triples, orientation-normalised when undirected."""
        out = []
        for e in self.edges:
            u, v = (e.u, e.v) if self.directed else (min(e.u, e.v), max(e.u, e.v))
            out.append((u, v, e.weights))
        return sorted(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.arity, self.edge_multiset()) == (
            other.n, other.directed, other.arity, other.edge_multiset())

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.m}, {kind}, arity={self.arity})"


def check_consistency(g: Graph) -> list:
    """Return a list of problems where adjacency and edge list disagree (empty when fine)."""
    problems = []
    seen = {}
    for u in range(1, g.n + 1):
        for v, idx in g.adj[u]:
            e = g.edges[idx]
            if g.directed or e.u == e.v:
                ok = (e.u, e.v) == (u, v)
            else:
                ok = (e.u, e.v) in ((u, v), (v, u))
            if not ok:
                problems.append(f"adj[{u}] entry ({v}, {idx}) does not match edge {e}")
            seen[idx] = seen.get(idx, 0) + 1
    for idx, e in enumerate(g.edges):
        want = 1 if (g.directed or e.u == e.v) else 2
        if seen.get(idx, 0) != want:
            problems.append(f"edge {idx} appears {seen.get(idx, 0)} times in adjacency, expected {want}")
    return problems


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _int_field(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphParseError(lineno, f"{what} {tok!r} is not an integer") from None


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphParseError(0, "missing header line") from None
    if len(header) != 4 or header[2] not in ("directed", "undirected"):
        raise GraphParseError(lineno, "header must be 'n m directed|undirected arity'")
    n = _int_field(header[0], lineno, "vertex count")
    m = _int_field(header[1], lineno, "edge count")
    arity = _int_field(header[3], lineno, "arity")
    if n < 0 or m < 0 or arity < 1:
        raise GraphParseError(lineno, "n and m must be >= 0 and arity >= 1")
    directed = header[2] == "directed"
    edges = []
    for lineno, fields in lines:
        if len(edges) == m:
            raise GraphParseError(lineno, f"more than the declared {m} edges")
        if len(fields) != 2 + arity:
            raise GraphParseError(lineno, f"expected 2 endpoints and {arity} weights, got {len(fields)} fields")
        u = _int_field(fields[0], lineno, "vertex")
        v = _int_field(fields[1], lineno, "vertex")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(lineno, f"vertex out of range 1..{n}")
        ws = tuple(_int_field(t, lineno, "weight") for t in fields[2:])
        for w in ws:
            if w < 0:
                raise GraphParseError(lineno, "negative weight")
            if w >= INF:
                raise GraphParseError(lineno, "weight does not fit a signed 64-bit integer")
        edges.append((u, v, ws))
    if len(edges) != m:
        raise GraphParseError(lineno, f"declared {m} edges, found {len(edges)}")
    return Graph(n, edges, directed=directed, arity=arity)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def serialize_graph(g: Graph) -> str:
    kind = "directed" if g.directed else "undirected"
    out = [f"{g.n} {g.m} {kind} {g.arity}"]
    out.extend(f"{e.u} {e.v} " + " ".join(map(str, e.weights)) for e in g.edges)
    return "\n".join(out) + "\n"


def to_directed(g: Graph) -> Graph:
    """Replace every undirected edge by two opposite arcs with the same weights."""
    if g.directed:
        return g
    arcs = []
    for e in g.edges:
        arcs.append((e.u, e.v, e.weights))
        arcs.append((e.v, e.u, e.weights))
    return Graph(g.n, arcs, directed=True, arity=g.arity)


def from_edges(n: int, edges: Sequence, directed: bool = False) -> Graph:
    """Shorthand for single-column graphs: ``edges`` holds ``(u, v, w)`` triples."""
    return Graph(n, [(u, v, (w,)) for u, v, w in edges], directed=directed, arity=1)
