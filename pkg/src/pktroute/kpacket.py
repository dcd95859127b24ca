"""Dynamic programs for routing k identical packets under ordering constraints.

``kpacket_cover``: packets start at given vertices of 1..n and may only be
forwarded to higher-numbered vertices; every vertex must be visited.  With a
metric cost matrix some optimal schedule visits new vertices in increasing
order, one forward move per new vertex, so the state is the sorted tuple of
packet positions whose largest entry is the visit frontier.

``kflow_requests``: m requests must be served in order by k packet flows; the
state after request i is the positions of the k-1 packets not sitting on the
vertex of request i.
"""
from __future__ import annotations

from math import comb
from typing import Sequence

from .errors import CapabilityError, InputError
from .graph import INF, Graph, sat_add

MAX_PACKETS = 4


def metric_closure(c: Sequence[Sequence[int]]) -> list:
    """All-pairs shortest costs (Floyd-Warshall); the diagonal becomes 0."""
    n = len(c)
    d = [list(row) for row in c]
    for i, row in enumerate(d):
        if len(row) != n:
            raise InputError("cost matrix must be square")
        if any(x < 0 for x in row):
            raise InputError("costs must be non-negative")
        row[i] = 0
    for q in range(n):
        dq = d[q]
        for i in range(n):
            diq = d[i][q]
            if diq == INF:
                continue
            di = d[i]
            for j in range(n):
                alt = sat_add(diq, dq[j])
                if alt < di[j]:
                    di[j] = alt
    return d


def matrix_from_graph(g: Graph, column: int = 0) -> list:
    """Metric closure of the edge lengths of ``g`` (INF between disconnected vertices)."""
    c = [[INF] * g.n for _ in range(g.n)]
    for e in g.edges:
        w = e.weights[column]
        if w < c[e.u - 1][e.v - 1]:
            c[e.u - 1][e.v - 1] = w
        if not g.directed and w < c[e.v - 1][e.u - 1]:
            c[e.v - 1][e.u - 1] = w
    return metric_closure(c)


def parse_matrix(text: str) -> list:
    """Dense whitespace grid, one row per line; ``inf`` allowed."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([INF if tok == "inf" else int(tok) for tok in line.split()])
        except ValueError:
            raise InputError(f"line {lineno}: matrix entries must be integers or 'inf'") from None
    if any(len(r) != len(rows) for r in rows):
        raise InputError("cost matrix must be square")
    return rows


def rank_multiset(t: Sequence[int]) -> int:
    """Rank of a non-increasing tuple of values >= 1 among all such tuples of its length.

    Colex order of combinations with repetition; a table for tuples over
    ``1..f`` of length r needs ``comb(f + r - 1, r)`` slots.
    """
    r = len(t)
    return sum(comb(t[i] - 1 + (r - 1 - i), r - i) for i in range(r))


def unrank_multiset(rank: int, r: int) -> tuple:
    out = []
    for i in range(r):
        size = r - i
        c = size - 1
        while comb(c + 1, size) <= rank:
            c += 1
        rank -= comb(c, size)
        out.append(c - (r - 1 - i) + 1)
    return tuple(out)


def _check_common(n: int, k: int, vinit: Sequence[int], c) -> None:
    if k > MAX_PACKETS:
        raise CapabilityError(f"k = {k} exceeds the supported maximum of {MAX_PACKETS} packets")
    if k < 1 or len(vinit) != k:
        raise InputError(f"expected {k} initial vertices, got {len(vinit)}")
    if len(c) != n or any(len(row) != n for row in c):
        raise InputError(f"cost matrix must be {n} x {n}")
    for v in vinit:
        if not 1 <= v <= n:
            raise InputError(f"initial vertex {v} outside 1..{n}")


def kpacket_cover(n: int, k: int, vinit: Sequence[int], c: Sequence[Sequence[int]]):
    """Minimum total cost so that every vertex 1..n is visited.

    Returns ``(cost, moves)`` with ``moves`` a list of ``(from, to)`` forwards
    in execution order.  ``c`` is indexed ``c[i - 1][j - 1]`` and should
    satisfy the triangle inequality (apply ``metric_closure`` first).
    """
    _check_common(n, k, vinit, c)
    if min(vinit) != 1:
        raise InputError("the smallest initial vertex must be 1")
    at = [0] * (n + 2)
    for v in vinit:
        at[v] += 1

    def absorb(front, state):
        """Advance the frontier over initially occupied vertices, adding their packets."""
        while front < n and at[front + 1]:
            front += 1
            state = (front,) * at[front] + state
        return front, state

    f0, s0 = absorb(1, (1,) * at[1])
    # tables[f]: rank of the tail (state minus its frontier entry) -> [cost, back]
    tables: list = [None] * (n + 1)

    def table(f, r):
        if tables[f] is None:
            tables[f] = [None] * comb(f + r - 1, r)
        return tables[f]

    def put(front, state, cost, back):
        tail = state[1:]
        tab = table(front, len(tail))
        idx = rank_multiset(tail)
        cur = tab[idx]
        if cur is None or cost < cur[0]:
            tab[idx] = (cost, back)

    put(f0, s0, 0, None)
    for f in range(f0, n):
        tab = tables[f]
        if tab is None:
            continue
        r = sum(at[1:f + 1]) - 1
        x = f + 1
        cx = [row[x - 1] for row in c]
        for idx, entry in enumerate(tab):
            if entry is None:
                continue
            cost = entry[0]
            state = (f,) + unrank_multiset(idx, r)
            prev_pos = None
            for j, p in enumerate(state):
                if p == prev_pos:
                    continue  # identical packets on one vertex
                prev_pos = p
                # x is larger than every position, so the new tuple stays sorted
                moved = (x,) + state[:j] + state[j + 1:]
                front, moved = absorb(x, moved)
                put(front, moved, sat_add(cost, cx[p - 1]), (f, idx, p, x))
    final = tables[n]
    best = None
    for idx, entry in enumerate(final or ()):
        if entry is not None and (best is None or entry[0] < final[best][0]):
            best = idx
    if best is None:
        raise InputError("no covering schedule exists")
    total = final[best][0]
    moves = []
    back = final[best][1]
    while back is not None:
        f, idx, p, x = back
        moves.append((p, x))
        back = tables[f][idx][1]
    moves.reverse()
    return total, moves


def replay_cover(n: int, vinit: Sequence[int], c, moves) -> tuple:
    """Apply a move list; returns ``(cost, all_visited, monotone)``."""
    positions = list(vinit)
    visited = set(vinit)
    cost = 0
    monotone = True
    for a, b in moves:
        if a not in positions:
            return cost, False, False
        if b <= a:
            monotone = False
        positions[positions.index(a)] = b
        visited.add(b)
        cost = sat_add(cost, c[a - 1][b - 1])
    return cost, visited == set(range(1, n + 1)), monotone


def kflow_requests(n: int, k: int, vinit: Sequence[int], requests: Sequence[int],
                   c: Sequence[Sequence[int]], distinct: bool = False):
    """Serve ``requests`` in order with k packet flows at minimum total cost.

    Returns ``(cost, assignment)`` where ``assignment[i]`` is the 1-based
    index (into ``vinit``) of the packet that serves request i.  With
    ``distinct`` the state keeps every packet's identity instead of a sorted
    tuple; the optimal cost is the same.
    """
    _check_common(n, k, vinit, c)
    m = len(requests)
    if m < 1:
        raise InputError("need at least one request")
    for r in requests:
        if not 1 <= r <= n:
            raise InputError(f"request vertex {r} outside 1..{n}")
    if distinct:
        return _kflow_distinct(k, vinit, requests, c)
    # layer i: rank of ascending (k-1)-tuple -> (cost, back); packet k sits on r(i)
    start = tuple(sorted(vinit[:-1]))
    layers = [{start: (0, None)}]
    prev_r = vinit[-1]
    for i in range(m):
        target = requests[i]
        nxt: dict = {}
        for others, (cost, _) in layers[-1].items():
            # the packet sitting on the previous request's vertex
            cand = sat_add(cost, c[prev_r - 1][target - 1])
            if others not in nxt or cand < nxt[others][0]:
                nxt[others] = (cand, (others, prev_r))
            last = None
            for j, q in enumerate(others):
                if q == last:
                    continue
                last = q
                new = tuple(sorted(others[:j] + others[j + 1:] + (prev_r,)))
                cand = sat_add(cost, c[q - 1][target - 1])
                if new not in nxt or cand < nxt[new][0]:
                    nxt[new] = (cand, (others, q))
        layers.append(nxt)
        prev_r = target
    final = layers[-1]
    best_state = min(final, key=lambda s: (final[s][0], s))
    total = final[best_state][0]
    sources = []
    state = best_state
    for i in range(m, 0, -1):
        prev_state, frm = layers[i][state][1]
        sources.append(frm)
        state = prev_state
    sources.reverse()
    return total, _assign(vinit, requests, sources)


def _assign(vinit, requests, sources) -> list:
    positions = list(vinit)
    out = []
    for r, frm in zip(requests, sources):
        j = positions.index(frm)
        out.append(j + 1)
        positions[j] = r
    return out


def _kflow_distinct(k, vinit, requests, c):
    layer = {tuple(vinit): (0, None)}
    history = [layer]
    for target in requests:
        nxt: dict = {}
        for pos, (cost, _) in layer.items():
            for j in range(k):
                new = pos[:j] + (target,) + pos[j + 1:]
                cand = sat_add(cost, c[pos[j] - 1][target - 1])
                if new not in nxt or cand < nxt[new][0]:
                    nxt[new] = (cand, (pos, j))
        history.append(nxt)
        layer = nxt
    best = min(layer, key=lambda s: (layer[s][0], s))
    total = layer[best][0]
    assignment = []
    state = best
    for i in range(len(requests), 0, -1):
        prev, j = history[i][state][1]
        assignment.append(j + 1)
        state = prev
    assignment.reverse()
    return total, assignment


def replay_requests(vinit, requests, c, assignment) -> int:
    positions = list(vinit)
    cost = 0
    for r, j in zip(requests, assignment):
        cost = sat_add(cost, c[positions[j - 1] - 1][r - 1])
        positions[j - 1] = r
    return cost
