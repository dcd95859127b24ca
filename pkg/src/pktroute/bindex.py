"""Preprocessed maximum-capacity path queries on undirected graphs.

Edges are merged in non-increasing capacity order with union by height and
*no* path compression, so every union edge stays a tree edge.  A super-root
(vertex id 0) sits above all component roots through capacity-0 edges.  The
bottleneck between u and v is the smallest edge capacity on their tree path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import InputError
from .graph import INF, Graph

ROOT = 0


@dataclass(frozen=True)
class BottleneckIndex:
    n: int
    parent: list       # parent[ROOT] == -1
    parent_cap: list
    height: list       # union-by-rank subtree heights from the build (0 for the root slot)
    level: list
    dfsnum: list
    dfsmax: list
    anc1: list
    anc2: list
    k: int
    H: int

    def children(self) -> list:
        kids: list = [[] for _ in range(self.n + 1)]
        for v in range(1, self.n + 1):
            kids[self.parent[v]].append(v)
        return kids

    def is_ancestor(self, a: int, b: int) -> bool:
        """True when ``a`` is an ancestor of ``b`` or equal to it."""
        return self.dfsnum[a] <= self.dfsnum[b] <= self.dfsmax[a]


def index_from_parents(parent: Sequence[int], parent_cap: Sequence[int],
                       height: Sequence[int] | None = None) -> BottleneckIndex:
    """Finish an index from a forest given as parent links (0 = hang under the super-root).

    Runs the DFS from the super-root that assigns levels, DFS intervals and
    the two ancestor links, with the jump distance ``k = ceil(sqrt(H))``.
    """
    n = len(parent) - 1
    par = list(parent)
    par[ROOT] = -1
    cap = list(parent_cap)
    cap[ROOT] = 0
    for v in range(1, n + 1):
        if par[v] == ROOT:
            cap[v] = 0
    kids: list = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        if not 0 <= par[v] <= n or par[v] == v:
            raise InputError(f"bad parent link {v} -> {par[v]}")
        kids[par[v]].append(v)

    level = [0] * (n + 1)
    dfsnum = [0] * (n + 1)
    dfsmax = [0] * (n + 1)
    order = []
    stack = [ROOT]
    counter = 0
    while stack:
        v = stack.pop()
        counter += 1
        dfsnum[v] = counter
        order.append(v)
        for w in reversed(kids[v]):
            level[w] = level[v] + 1
            stack.append(w)
    if counter != n + 1:
        raise InputError("parent links contain a cycle")
    for v in reversed(order):
        m = dfsnum[v]
        for w in kids[v]:
            if dfsmax[w] > m:
                m = dfsmax[w]
        dfsmax[v] = m
    H = max(level)
    k = max(1, math.isqrt(H - 1) + 1) if H > 0 else 1

    anc1 = list(par)
    anc1[ROOT] = ROOT
    # second DFS keeping the explicit root-to-vertex stack; S[level] is the vertex at that depth
    anc2 = [ROOT] * (n + 1)
    path = []
    stack = [(ROOT, 0)]
    while stack:
        v, lv = stack.pop()
        del path[lv:]
        path.append(v)
        anc2[v] = path[lv - k] if lv - k >= 0 else ROOT
        for w in reversed(kids[v]):
            stack.append((w, lv + 1))
    h = list(height) if height is not None else [0] * (n + 1)
    return BottleneckIndex(n, par, cap, h, level, dfsnum, dfsmax, anc1, anc2, k, H)


def build_index(g: Graph, column: int = 0) -> BottleneckIndex:
    if g.directed:
        raise InputError("the bottleneck index needs an undirected graph")
    caps = g.column_values(column)
    order = sorted(range(g.m), key=lambda i: -caps[i])  # stable: ties keep input order
    us = [g.edges[i].u for i in order]
    vs = [g.edges[i].v for i in order]
    cs = [caps[i] for i in order]
    parent, pcap, height = kernels.kruskal_forest(g.n, us, vs, cs)
    return index_from_parents(parent, pcap, height)


def query_levelwise(index: BottleneckIndex, u: int, v: int) -> int:
    """Walk the deeper endpoint up until both meet; min edge capacity seen."""
    if u == v:
        return INF
    parent, cap, level = index.parent, index.parent_cap, index.level
    best = INF
    while u != v:
        if level[u] > level[v]:
            best = min(best, cap[u])
            u = parent[u]
        else:
            best = min(best, cap[v])
            v = parent[v]
    return best


def query_levelwise_batch(index: BottleneckIndex, pairs: Sequence) -> list:
    us = [p[0] for p in pairs]
    vs = [p[1] for p in pairs]
    return kernels.levelwise_batch(index.parent, index.parent_cap, index.level, us, vs)


def lca_naive(index: BottleneckIndex, u: int, v: int) -> int:
    while u != v:
        if index.level[u] > index.level[v]:
            u = index.parent[u]
        else:
            v = index.parent[v]
    return u


def lca_sqrt(index: BottleneckIndex, u: int, v: int) -> int:
    """LCA in O(k + H/k) steps: long jumps from u, then single steps from the overshoot."""
    num, mx = index.dfsnum, index.dfsmax
    dv = num[v]
    pu = u
    ppu = u
    while not (num[pu] <= dv <= mx[pu]):
        ppu = pu
        pu = index.anc2[pu]
    if ppu == pu:
        return pu
    while not (num[ppu] <= dv <= mx[ppu]):
        ppu = index.anc1[ppu]
    return ppu


def _son_toward(index: BottleneckIndex, x: int, anc: int) -> int:
    """Child of ``anc`` whose subtree holds ``x`` (``x`` a proper descendant of ``anc``)."""
    num, mx = index.dfsnum, index.dfsmax
    lo, hi = num[anc], mx[anc]

    def strictly_inside(a):
        return lo < num[a] and mx[a] <= hi

    a = x
    while strictly_inside(index.anc2[a]):
        a = index.anc2[a]
    while strictly_inside(index.anc1[a]):
        a = index.anc1[a]
    return a


def query_via_lca(index: BottleneckIndex, u: int, v: int) -> int:
    """Bottleneck from the two LCA-adjacent tree edges.

    Relies on parent capacities being non-increasing towards the root, so the
    edges next to the LCA are the smallest on each side.
    """
    if u == v:
        return INF
    lca = lca_sqrt(index, u, v)
    if lca == u:
        return index.parent_cap[_son_toward(index, v, u)]
    if lca == v:
        return index.parent_cap[_son_toward(index, u, v)]
    return min(index.parent_cap[_son_toward(index, u, lca)],
               index.parent_cap[_son_toward(index, v, lca)])


def disconnected(index: BottleneckIndex, u: int, v: int) -> bool:
    return u != v and lca_sqrt(index, u, v) == ROOT


def check_invariants(index: BottleneckIndex) -> list:
    """Structural checks: monotone capacities, levels, DFS intervals. Returns violations."""
    bad = []
    for v in range(1, index.n + 1):
        p = index.parent[v]
        if index.level[v] != index.level[p] + 1:
            bad.append(f"level of {v}")
        if p != ROOT and index.parent_cap[v] < index.parent_cap[p]:
            bad.append(f"capacity increases from {v} to parent {p}")
        if not (index.dfsnum[p] < index.dfsnum[v] <= index.dfsmax[v] <= index.dfsmax[p]):
            bad.append(f"DFS interval of {v} not nested in parent's")
    return bad


def serialize_index(index: BottleneckIndex) -> str:
    out = [f"index {index.n} H {index.H} k {index.k}"]
    for v in range(1, index.n + 1):
        out.append(f"{v} {index.parent[v]} {index.parent_cap[v]} {index.height[v]}")
    return "\n".join(out) + "\n"


def load_index(text: str) -> BottleneckIndex:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "index":
        raise InputError("not a serialized bottleneck index")
    try:
        n = int(lines[0][1])
        parent = [0] * (n + 1)
        cap = [0] * (n + 1)
        height = [0] * (n + 1)
        for fields in lines[1:]:
            v, p, c, h = map(int, fields)
            parent[v], cap[v], height[v] = p, c, h
    except (ValueError, IndexError):
        raise InputError("malformed serialized index") from None
    if len(lines) != n + 1:
        raise InputError(f"serialized index lists {len(lines) - 1} vertices, expected {n}")
    return index_from_parents(parent, cap, height)
