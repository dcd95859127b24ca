"""Maximum-capacity (widest) paths and multicast trees.

Three interchangeable strategies compute the per-vertex bottleneck labels:
a Dijkstra variant, capacity buckets for small integer capacities, and a
binary search over the sorted edge capacities driven by a reachability test.
Undirected graphs are handled directly since their adjacency already holds
both orientations of every edge.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import kernels
from .errors import InputError, UnreachableError
from .graph import INF, Graph


@dataclass
class CapacityLabels:
    """Per-vertex best bottleneck value plus parent links.

    ``parent[v]`` is ``(predecessor, edge_index)`` or ``None``.  A vertex with
    ``cmx == 0`` and no parent is unreachable; one reached only through
    zero-capacity edges still has a parent.
    """

    cmx: list
    parent: list
    sources: tuple

    def reachable(self, v: int) -> bool:
        return v in self.sources or self.parent[v] is not None

    def path_to(self, v: int) -> Optional[list]:
        if not self.reachable(v):
            return None
        path = [v]
        while self.parent[v] is not None:
            v = self.parent[v][0]
            path.append(v)
        path.reverse()
        return path


@dataclass
class PathResult:
    """Capacity of a best path and the path itself; ``capacity is None`` means unreachable."""

    capacity: Optional[int]
    path: Optional[list]

    @property
    def reachable(self) -> bool:
        return self.capacity is not None


@dataclass
class MulticastTree:
    root: int
    tree_edges: list = field(default_factory=list)  # (parent, child, capacity)
    capacity: int = INF

    def vertices(self) -> set:
        vs = {self.root}
        for p, c, _ in self.tree_edges:
            vs.add(p)
            vs.add(c)
        return vs


def _check_sources(g: Graph, sources) -> tuple:
    if isinstance(sources, int):
        sources = (sources,)
    sources = tuple(dict.fromkeys(sources))
    if not sources:
        raise InputError("source set is empty")
    for s in sources:
        if not 1 <= s <= g.n:
            raise InputError(f"source {s} outside 1..{g.n}")
    return sources


def _labels_from_kernel(g: Graph, column: int, sources: tuple, label, pred, pos) -> CapacityLabels:
    ids = g.csr(column)[3]
    cmx = [0] * (g.n + 1)
    parent: list = [None] * (g.n + 1)
    for v in range(1, g.n + 1):
        if label[v] > 0:
            cmx[v] = label[v]
        if pos[v] >= 0:
            parent[v] = (pred[v], ids[pos[v]])
    return CapacityLabels(cmx, parent, sources)


def max_capacity_dijkstra(g: Graph, sources, column: int = 0) -> CapacityLabels:
    """Widest-path labels from a source set, O(m log n) with a binary heap.

    Update rule: ``cmx(j) <- max(cmx(j), min(cmx(i), c(i, j)))``; sources start
    at +inf.  Self-loops are ignored.
    """
    sources = _check_sources(g, sources)
    offsets, targets, caps, _ = g.csr(column)
    label, pred, pos = kernels.widest_path(g.n, offsets, targets, caps, sources)
    return _labels_from_kernel(g, column, sources, label, pred, pos)


def max_capacity_buckets(g: Graph, sources, column: int = 0, capmax: Optional[int] = None,
                         lazy: bool = True) -> CapacityLabels:
    """Widest-path labels using one list per capacity value in ``[0, capmax]``.

    Capacities are scanned from ``capmax`` down to 0; every vertex in the list
    of the current capacity is expanded.  With ``lazy`` an improved vertex is
    only appended to its new list and stale copies are skipped on extraction;
    otherwise it is unlinked from its old (doubly linked) list first.
    """
    sources = _check_sources(g, sources)
    caps = g.column_values(column)
    if capmax is None:
        capmax = max(caps, default=0)
    for c in caps:
        if not (isinstance(c, int) and 0 <= c <= capmax):
            raise InputError(f"capacity {c} outside [0, {capmax}]")
    n = g.n
    label = [-1] * (n + 1)   # -1: not reached yet
    parent: list = [None] * (n + 1)

    def key(v):
        return capmax if label[v] == INF else label[v]

    if lazy:
        buckets = [[] for _ in range(capmax + 1)]
        for s in sources:
            label[s] = INF
            buckets[capmax].append(s)
        for c in range(capmax, -1, -1):
            lst = buckets[c]
            i = 0
            while i < len(lst):   # the list may grow while scanned
                v = lst[i]
                i += 1
                if key(v) != c:
                    continue  # stale occurrence
                for w, idx in g.adj[v]:
                    if w == v:
                        continue
                    cap = g.edges[idx].weights[column]
                    nl = label[v] if label[v] < cap else cap
                    if nl > label[w]:
                        label[w] = nl
                        parent[w] = (v, idx)
                        buckets[nl].append(w)
            buckets[c] = []
    else:
        head = [0] * (capmax + 1)
        tail = [0] * (capmax + 1)
        nxt = [0] * (n + 1)
        prv = [0] * (n + 1)
        where = [-1] * (n + 1)

        def push(c, v):
            where[v] = c
            nxt[v] = 0
            prv[v] = tail[c]
            if tail[c]:
                nxt[tail[c]] = v
            else:
                head[c] = v
            tail[c] = v

        def unlink(v):
            c = where[v]
            if prv[v]:
                nxt[prv[v]] = nxt[v]
            else:
                head[c] = nxt[v]
            if nxt[v]:
                prv[nxt[v]] = prv[v]
            else:
                tail[c] = prv[v]
            where[v] = -1

        for s in sources:
            label[s] = INF
            push(capmax, s)
        for c in range(capmax, -1, -1):
            v = head[c]
            while v:
                for w, idx in g.adj[v]:
                    if w == v:
                        continue
                    cap = g.edges[idx].weights[column]
                    nl = label[v] if label[v] < cap else cap
                    if nl > label[w]:
                        if where[w] >= 0:
                            unlink(w)
                        label[w] = nl
                        parent[w] = (v, idx)
                        push(nl, w)
                v = nxt[v]
    cmx = [max(x, 0) for x in label]
    cmx[0] = 0
    return CapacityLabels(cmx, parent, sources)


def _bfs_tree(g: Graph, s: int, threshold: int, column: int) -> list:
    """Parent links ``(pred, edge_index)`` of a BFS from ``s`` over edges with capacity >= threshold."""
    parent: list = [None] * (g.n + 1)
    seen = [False] * (g.n + 1)
    seen[s] = True
    queue = deque([s])
    edges = g.edges
    while queue:
        v = queue.popleft()
        for w, idx in g.adj[v]:
            if not seen[w] and edges[idx].weights[column] >= threshold:
                seen[w] = True
                parent[w] = (v, idx)
                queue.append(w)
    return parent


def feasibility_reachable(g: Graph, threshold: int, s: int, targets: Iterable[int],
                          column: int = 0) -> set:
    """Targets reachable from ``s`` when edges below ``threshold`` are ignored."""
    parent = _bfs_tree(g, s, threshold, column)
    return {t for t in targets if t == s or parent[t] is not None}


def _candidates(g: Graph, column: int) -> list:
    return sorted(set(g.column_values(column)))


def _largest_feasible(cands: list, ok) -> Optional[int]:
    """Index of the largest candidate accepted by the monotone predicate ``ok``."""
    lo, hi, best = 0, len(cands) - 1, None
    while lo <= hi:
        mid = (lo + hi) // 2
        if ok(cands[mid]):
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return best


def max_capacity_bsearch(g: Graph, s: int, t: int, column: int = 0) -> PathResult:
    """Binary search over the distinct edge capacities with an O(n + m) BFS test."""
    _check_sources(g, (s, t))
    if s == t:
        return PathResult(INF, [s])
    cands = _candidates(g, column)
    best = _largest_feasible(cands, lambda c: t in feasibility_reachable(g, c, s, (t,), column))
    if best is None:
        return PathResult(None, None)
    parent = _bfs_tree(g, s, cands[best], column)
    path = [t]
    cap = INF
    while path[-1] != s:
        v, idx = parent[path[-1]]
        cap = min(cap, g.edges[idx].weights[column])
        path.append(v)
    path.reverse()
    return PathResult(cap, path)


def _tree_from_parents(g: Graph, parent: list, s: int, destinations, column: int) -> MulticastTree:
    marked = {s}
    tree_edges = []
    for d in destinations:
        v = d
        while v not in marked:
            marked.add(v)
            p, idx = parent[v]
            tree_edges.append((p, v, g.edges[idx].weights[column]))
            v = p
    cap = min((c for _, _, c in tree_edges), default=INF)
    return MulticastTree(s, tree_edges, cap)


def multicast_tree_from_labels(g: Graph, labels: CapacityLabels, s: int, destinations,
                               column: int = 0) -> MulticastTree:
    """Union of the labelled best paths to every destination, built in O(n).

    Parent links are followed from each destination until the source or an
    already marked vertex is met.  Capacity is ``min(cmx(d))`` over the
    destinations, +inf when the tree has no edge.
    """
    destinations = list(destinations)
    for d in destinations:
        if not labels.reachable(d):
            raise UnreachableError(d, "is unreachable from the source")
    tree = _tree_from_parents(g, labels.parent, s, destinations, column)
    tree.capacity = min((labels.cmx[d] for d in destinations if d != s), default=INF)
    return tree


def multicast_tree_bsearch(g: Graph, s: int, destinations, column: int = 0) -> MulticastTree:
    """Binary search the tree capacity, then prune non-destination leaves of the BFS tree."""
    destinations = list(dict.fromkeys(destinations))
    _check_sources(g, [s] + destinations)
    others = [d for d in destinations if d != s]
    if not others:
        return MulticastTree(s, [], INF)
    cands = _candidates(g, column)
    best = _largest_feasible(
        cands, lambda c: len(feasibility_reachable(g, c, s, others, column)) == len(others))
    if best is None:
        missing = sorted(set(others) - feasibility_reachable(g, cands[0] if cands else 0, s, others, column))
        raise UnreachableError(missing[0], "is unreachable from the source")
    parent = _bfs_tree(g, s, cands[best], column)
    keep = set(destinations) | {s}
    sons: list = [[] for _ in range(g.n + 1)]
    for v in range(1, g.n + 1):
        if parent[v] is not None:
            sons[parent[v][0]].append(v)
    # post-order walk; a vertex survives if it is kept or still has a surviving son
    alive = [False] * (g.n + 1)
    stack = [(s, False)]
    while stack:
        v, done = stack.pop()
        if not done:
            stack.append((v, True))
            stack.extend((w, False) for w in reversed(sons[v]))
        else:
            alive[v] = v in keep or any(alive[w] for w in sons[v])
    tree_edges = []
    order = [s]
    for v in order:
        for w in sons[v]:
            if alive[w]:
                idx = parent[w][1]
                tree_edges.append((v, w, g.edges[idx].weights[column]))
                order.append(w)
    cap = min((c for _, _, c in tree_edges), default=INF)
    return MulticastTree(s, tree_edges, cap)
