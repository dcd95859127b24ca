"""Brute-force reference solvers and random instance generators for the tests.

Everything here is deliberately naive (path enumeration, exhaustive search)
and shares no code with the package beyond the Graph container.
"""
from itertools import product
import random

from pktroute.graph import INF, Graph

# ---------------------------------------------------------------- generators


def random_graph(rng, n, m, directed=False, arity=1, lo=0, hi=10, connected=False):
    edges = []
    if connected and n > 1:
        order = list(range(1, n + 1))
        rng.shuffle(order)
        for i in range(1, n):
            u, v = order[rng.randrange(i)], order[i]
            edges.append((u, v, tuple(rng.randint(lo, hi) for _ in range(arity))))
    while len(edges) < m and n > 1:
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u == v:
            continue
        edges.append((u, v, tuple(rng.randint(lo, hi) for _ in range(arity))))
    return Graph(n, edges, directed=directed, arity=arity)


def all_connected_graphs(rng, count, nmax=6, hi=10):
    """Seeded stream of connected undirected graphs with 1..nmax vertices."""
    out = []
    while len(out) < count:
        n = rng.randint(1, nmax)
        extra = rng.randint(0, n * (n - 1) // 2)
        out.append(random_graph(rng, n, max(n - 1, 0) + extra, hi=hi, connected=True))
    return out


# ---------------------------------------------------------------- path enumeration


def simple_paths(g, s):
    """Yield (vertex list, edge index list) for every simple path starting at s."""
    stack = [(s, [s], [], {s})]
    while stack:
        v, path, eids, seen = stack.pop()
        yield path, eids
        for w, idx in g.adj[v]:
            if w not in seen:
                stack.append((w, path + [w], eids + [idx], seen | {w}))


def widest_brute(g, s, t, col=0):
    """Max over simple s-t paths of the min edge capacity; INF for s == t, None when unreachable."""
    if s == t:
        return INF
    best = None
    for path, eids in simple_paths(g, s):
        if path[-1] == t:
            cap = min(g.edges[i].weights[col] for i in eids)
            best = cap if best is None else max(best, cap)
    return best


def bottleneck_of(g, path, col=0):
    """Largest-capacity edge choice between consecutive path vertices, minimised along the path."""
    cap = INF
    for a, b in zip(path, path[1:]):
        choices = [g.edges[i].weights[col] for w, i in g.adj[a] if w == b]
        if not choices:
            return None
        cap = min(cap, max(choices))
    return cap


def floyd(g, col=0):
    n = g.n
    d = [[INF] * (n + 1) for _ in range(n + 1)]
    for v in range(1, n + 1):
        d[v][v] = 0
    for e in g.edges:
        w = e.weights[col]
        d[e.u][e.v] = min(d[e.u][e.v], w)
        if not g.directed:
            d[e.v][e.u] = min(d[e.v][e.u], w)
    for q in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if d[i][q] < INF and d[q][j] < INF and d[i][q] + d[q][j] < d[i][j]:
                    d[i][j] = d[i][q] + d[q][j]
    return d


def dmin_brute(g, obnoxious, col=0):
    d = floyd(g, col)
    return [INF] + [min(d[o][v] for o in obnoxious) for v in range(1, g.n + 1)]


def farthest_brute(g, obnoxious, s, t, col=0):
    dm = dmin_brute(g, obnoxious, col)
    best = None
    for path, _ in simple_paths(g, s):
        if path[-1] == t:
            val = min(dm[v] for v in path)
            best = val if best is None else max(best, val)
    return best


# ---------------------------------------------------------------- lexicographic


def lex_value(kinds, g, eids, cols):
    vec = []
    for a, c in zip(kinds, cols):
        ws = [g.edges[i].weights[c] for i in eids]
        if a == "sum":
            vec.append(sum(ws))
        elif a == "min":
            vec.append(min(ws, default=INF))
        else:
            vec.append(max(ws, default=0))
    return tuple(vec)


def lex_key(kinds, vec):
    return tuple(-x if a == "min" else x for a, x in zip(kinds, vec))


def lex_brute(g, kinds, s, cols=None):
    """Best vector per vertex over all simple paths from s (None when unreachable)."""
    cols = cols or tuple(range(len(kinds)))
    best = [None] * (g.n + 1)
    for path, eids in simple_paths(g, s):
        v = path[-1]
        vec = lex_value(kinds, g, eids, cols)
        if best[v] is None or lex_key(kinds, vec) < lex_key(kinds, best[v]):
            best[v] = vec
    return best


# ---------------------------------------------------------------- k packets


def line_metric(xs):
    return [[abs(a - b) for b in xs] for a in xs]


def random_metric(rng, n, hi=20):
    if rng.random() < 0.5:
        xs = [rng.randint(0, hi) for _ in range(n)]
        return line_metric(xs)
    pts = [(rng.randint(0, hi), rng.randint(0, hi)) for _ in range(n)]
    c = [[abs(a[0] - b[0]) + abs(a[1] - b[1]) for b in pts] for a in pts]
    return c


def cover_brute(n, vinit, c):
    """Cheapest schedule of forward-only moves visiting every vertex.

    Searches over (positions, visited set); a move takes any packet from p to
    any q > p, visited or not.
    """
    import heapq
    start = (tuple(sorted(vinit)), frozenset(vinit))
    dist = {start: 0}
    heap = [(0, start)]
    full = frozenset(range(1, n + 1))
    while heap:
        d, st = heapq.heappop(heap)
        if d != dist[st]:
            continue
        pos, seen = st
        if seen == full:
            return d
        for j, p in enumerate(pos):
            for q in range(p + 1, n + 1):
                npos = tuple(sorted(pos[:j] + (q,) + pos[j + 1:]))
                ns = (npos, seen | {q})
                nd = d + c[p - 1][q - 1]
                if nd < dist.get(ns, INF):
                    dist[ns] = nd
                    heapq.heappush(heap, (nd, ns))
    return None


def kflow_brute(vinit, requests, c):
    best = None
    for assign in product(range(len(vinit)), repeat=len(requests)):
        pos = list(vinit)
        cost = 0
        for r, j in zip(requests, assign):
            cost += c[pos[j] - 1][r - 1]
            pos[j] = r
        best = cost if best is None else min(best, cost)
    return best


# ---------------------------------------------------------------- typed chains


def chain_brute(lat, k, f):
    best = None
    for seq in product(range(k), repeat=len(lat)):
        totals = [0] * k
        for row, j in zip(lat, seq):
            totals[j] += row[j]
        val = f(tuple(totals))
        best = val if best is None else min(best, val)
    return best


def random_chain(rng, nmax=6, kmax=3, hi=4):
    n = rng.randint(2, nmax)
    k = rng.randint(1, kmax)
    return [tuple(rng.randint(0, hi) for _ in range(k)) for _ in range(n - 1)], k


# ---------------------------------------------------------------- pareto


def pareto_brute(g, s, dests, senses=("min", "min"), strict=True):
    """Non-dominated additive cost tuples over simple paths from s to any destination."""
    tuples = set()
    for path, eids in simple_paths(g, s):
        if path[-1] in dests:
            tuples.add(tuple(sum(g.edges[i].weights[j] for i in eids) for j in range(len(senses))))

    def better(j, a, b):
        return a < b if senses[j] == "min" else a > b

    def dom(a, b):
        if strict:
            return all(better(j, x, y) for j, (x, y) in enumerate(zip(a, b)))
        return a != b and all(not better(j, y, x) for j, (x, y) in enumerate(zip(a, b)))

    return sorted(t for t in tuples if not any(dom(o, t) for o in tuples))


def pareto_walks_brute(g, s, dests, maxlen, vmax, senses=("min", "min"), strict=True):
    """Same as ``pareto_brute`` but over all walks of at most ``maxlen`` edges within ``[0, vmax]``."""
    p = len(senses)
    tuples = set()
    frontier = {(s, (0,) * p)}
    seen = set(frontier)
    for _ in range(maxlen + 1):
        nxt = set()
        for v, sc in frontier:
            if v in dests:
                tuples.add(sc)
            for w, i in g.adj[v]:
                ns = tuple(a + g.edges[i].weights[j] for j, a in enumerate(sc))
                if max(ns) <= vmax and (w, ns) not in seen:
                    seen.add((w, ns))
                    nxt.add((w, ns))
        frontier = nxt

    def better(j, a, b):
        return a < b if senses[j] == "min" else a > b

    def dom(a, b):
        if strict:
            return all(better(j, x, y) for j, (x, y) in enumerate(zip(a, b)))
        return a != b and all(not better(j, y, x) for j, (x, y) in enumerate(zip(a, b)))

    return sorted(t for t in tuples if not any(dom(o, t) for o in tuples))


def random_dag(rng, n, m, arity=2, lo=0, hi=3):
    edges = []
    for _ in range(m):
        u, v = sorted(rng.sample(range(1, n + 1), 2))
        edges.append((u, v, tuple(rng.randint(lo, hi) for _ in range(arity))))
    return Graph(n, edges, directed=True, arity=arity)


# ---------------------------------------------------------------- offline connectivity


AGGS = {
    "sum": lambda a, b: a + b,
    "max": max,
    "min": min,
    "xor": lambda a, b: a ^ b,
    "product": lambda a, b: a * b,
}
IDENT = {"sum": 0, "xor": 0, "product": 1}


def naive_answers(n, edges, weights, ops, cc, gg):
    """Replays the script forward with an explicit edge list; components by DFS at each query."""
    live = [list(e) for e in edges]
    alive = set(range(1, n + 1))
    out = []
    for op in ops:
        kind = op[0]
        if kind == "delete":
            u, v = op[1], op[2]
            for i, (a, b) in enumerate(live):
                if (a, b) in ((u, v), (v, u)):
                    del live[i]
                    break
        elif kind == "deletevertex":
            x = op[1]
            alive.discard(x)
            live = [e for e in live if x not in e]
        else:
            nbr = {v: [] for v in alive}
            for a, b in live:
                nbr[a].append(b)
                nbr[b].append(a)
            comp = {}
            for r in sorted(alive):
                if r in comp:
                    continue
                comp[r] = r
                stack = [r]
                while stack:
                    x = stack.pop()
                    for y in nbr[x]:
                        if y not in comp:
                            comp[y] = r
                            stack.append(y)
            members = {}
            for v in sorted(alive):
                members.setdefault(comp[v], []).append(weights[v - 1])
            vals = {}
            for r, ws in members.items():
                acc = ws[0]
                for w in ws[1:]:
                    acc = AGGS[cc](acc, w)
                vals[r] = acc
            if kind == "qcomp":
                out.append(vals[comp[op[1]]])
            else:
                total = IDENT[gg]
                for r in sorted(vals):
                    total = AGGS[gg](total, vals[r])
                out.append(total)
    return out


def random_script(rng, n, edges, length):
    """Valid random deletion/query script as (kind, a, b) tuples."""
    live = [tuple(e) for e in edges]
    alive = set(range(1, n + 1))
    ops = []
    while len(ops) < length:
        r = rng.random()
        if r < 0.3 and live:
            u, v = live.pop(rng.randrange(len(live)))
            ops.append(("delete", u, v) if rng.random() < 0.5 else ("delete", v, u))
        elif r < 0.4 and len(alive) > 1:
            x = rng.choice(sorted(alive))
            alive.discard(x)
            live = [e for e in live if x not in e]
            ops.append(("deletevertex", x, 0))
        elif r < 0.75 and alive:
            ops.append(("qcomp", rng.choice(sorted(alive)), 0))
        else:
            ops.append(("qgraph", 0, 0))
    return ops


def large_script(rng, n, edges, length, vertex_share=0.02):
    """Linear-time valid script for big smoke runs (deletes, some vertex deletions, queries)."""
    pending = list(edges)
    rng.shuffle(pending)
    alive = list(range(1, n + 1))
    pos = {v: i for i, v in enumerate(alive)}
    dead = set()
    ops = []
    while len(ops) < length:
        r = rng.random()
        if r < vertex_share and len(alive) > 1:
            x = alive[rng.randrange(len(alive))]
            last = alive.pop()
            if last != x:
                alive[pos[x]] = last
                pos[last] = pos[x]
            del pos[x]
            dead.add(x)
            ops.append(("deletevertex", x, 0))
        elif r < 0.5:
            while pending and (pending[-1][0] in dead or pending[-1][1] in dead):
                pending.pop()
            if pending:
                u, v = pending.pop()
                ops.append(("delete", u, v))
        elif r < 0.95:
            ops.append(("qcomp", alive[rng.randrange(len(alive))], 0))
        else:
            ops.append(("qgraph", 0, 0))
    return ops


def seeded(seed):
    return random.Random(seed)
