"""Routes that stay as far as possible from a set of obnoxious vertices.

Every vertex gets ``dmin``, its distance to the closest obnoxious vertex; the
safety of a path is the smallest ``dmin`` over its vertices.  Both graph
reductions below turn safety into edge capacity so the bottleneck solvers and
the bottleneck index apply unchanged.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable

from .bindex import BottleneckIndex, build_index
from .bottleneck import (MulticastTree, PathResult, max_capacity_dijkstra,
                         multicast_tree_from_labels)
from .errors import InputError
from .graph import INF, Graph


@dataclass
class DminLabels:
    dmin: list
    obnoxious: tuple


def _check_obnoxious(g: Graph, obnoxious: Iterable[int]) -> tuple:
    obn = tuple(sorted(set(obnoxious)))
    if not obn:
        raise InputError("obnoxious vertex set is empty")
    for o in obn:
        if not 1 <= o <= g.n:
            raise InputError(f"obnoxious vertex {o} outside 1..{g.n}")
    return obn


def compute_dmin(g: Graph, obnoxious: Iterable[int], column: int = 0,
                 method: str = "auto") -> DminLabels:
    """Multi-source shortest distances from the obnoxious set.

    ``method`` is ``"dijkstra"``, ``"bfs"`` (all lengths must be equal; hop
    count times that length) or ``"auto"`` (BFS when lengths are uniform).
    """
    obn = _check_obnoxious(g, obnoxious)
    lengths = g.column_values(column)
    uniform = len(set(lengths)) <= 1
    if method == "auto":
        method = "bfs" if uniform else "dijkstra"
    dist = [INF] * (g.n + 1)
    for o in obn:
        dist[o] = 0
    if method == "bfs":
        if not uniform:
            raise InputError("BFS distances need all edge lengths equal")
        unit = lengths[0] if lengths else 1
        hops = [-1] * (g.n + 1)
        queue = deque(obn)
        for o in obn:
            hops[o] = 0
        while queue:
            v = queue.popleft()
            for w, _ in g.adj[v]:
                if hops[w] < 0:
                    hops[w] = hops[v] + 1
                    queue.append(w)
        for v in range(1, g.n + 1):
            if hops[v] >= 0:
                dist[v] = hops[v] * unit
    elif method == "dijkstra":
        heap = [(0, o) for o in obn]
        while heap:
            d, v = heappop(heap)
            if d != dist[v]:
                continue
            for w, idx in g.adj[v]:
                nd = d + lengths[idx]
                if nd < dist[w]:
                    dist[w] = nd
                    heappush(heap, (nd, w))
    else:
        raise InputError(f"unknown dmin method {method!r}")
    dist[0] = INF
    return DminLabels(dist, obn)


def _dmin_list(dmin) -> list:
    return dmin.dmin if isinstance(dmin, DminLabels) else list(dmin)


def transform_split(g: Graph, dmin) -> Graph:
    """Directed graph on 2n vertices: ``u_in = u``, ``u_out = u + n``.

    Arc ``(u_in, u_out)`` carries ``dmin(u)``; every edge ``(u, v)`` becomes
    ``(u_out, v_in)`` and ``(v_out, u_in)`` with capacity +inf.
    """
    d = _dmin_list(dmin)
    n = g.n
    arcs = [(u, u + n, (d[u],)) for u in range(1, n + 1)]
    for e in g.edges:
        arcs.append((e.u + n, e.v, (INF,)))
        if not g.directed:
            arcs.append((e.v + n, e.u, (INF,)))
    return Graph(2 * n, arcs, directed=True, arity=1)


def transform_edge_min(g: Graph, dmin) -> Graph:
    """Same topology; each edge's capacity becomes ``min(dmin(u), dmin(v))``."""
    d = _dmin_list(dmin)
    return Graph(g.n, [(e.u, e.v, (min(d[e.u], d[e.v]),)) for e in g.edges],
                 directed=g.directed, arity=1)


def farthest_path(g: Graph, obnoxious, s: int, t: int, column: int = 0,
                  transform: str = "edge-min") -> PathResult:
    """Path from s to t maximising the smallest ``dmin`` of its vertices.

    The single-vertex path ``s == t`` has safety ``dmin(s)``.
    """
    labels = compute_dmin(g, obnoxious, column)
    d = labels.dmin
    for v in (s, t):
        if not 1 <= v <= g.n:
            raise InputError(f"vertex {v} outside 1..{g.n}")
    if s == t:
        return PathResult(d[s], [s])
    if transform == "edge-min":
        h = transform_edge_min(g, labels)
        res = max_capacity_dijkstra(h, s)
        if not res.reachable(t):
            return PathResult(None, None)
        return PathResult(res.cmx[t], res.path_to(t))
    if transform == "split":
        h = transform_split(g, labels)
        res = max_capacity_dijkstra(h, s)
        target = t + g.n
        if not res.reachable(target):
            return PathResult(None, None)
        path = [v for v in res.path_to(target) if v <= g.n]
        return PathResult(res.cmx[target], path)
    raise InputError(f"unknown transform {transform!r}")


def farthest_tree(g: Graph, obnoxious, s: int, destinations, column: int = 0) -> MulticastTree:
    labels = compute_dmin(g, obnoxious, column)
    destinations = list(dict.fromkeys(destinations))
    if all(dd == s for dd in destinations):
        return MulticastTree(s, [], labels.dmin[s])
    h = transform_edge_min(g, labels)
    return multicast_tree_from_labels(h, max_capacity_dijkstra(h, s), s, destinations)


def build_farthest_index(g: Graph, obnoxious, column: int = 0) -> BottleneckIndex:
    """Bottleneck index over the edge-min transform; ``u == v`` queries keep the +inf convention."""
    if g.directed:
        raise InputError("the farthest-distance index needs an undirected graph")
    return build_index(transform_edge_min(g, compute_dmin(g, obnoxious, column)))
