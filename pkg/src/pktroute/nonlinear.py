"""Minimum aggregate-cost routing when every hop offers k typed connections.

The cost of a route is ``f(ltotal(1), ..., ltotal(k))`` where ``ltotal(j)`` is
the summed latency of the type-j connections used and ``f`` is non-decreasing
in every argument.  With integer latencies a pseudo-polynomial table
``Lmin[i][t_1, ..., t_{k-1}]`` (least type-k latency reaching hop i with the
given type-1..k-1 totals) solves the problem exactly.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import CapabilityError, GraphParseError, InputError
from .graph import INF, Graph

DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class TypedChain:
    """Hops ``v(1) .. v(n)``; ``lat[i][j]`` is the type-(j+1) latency of hop i+1."""

    n: int
    k: int
    lat: tuple

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InputError("a chain needs n >= 1 and k >= 1")
        if len(self.lat) != self.n - 1:
            raise InputError(f"expected {self.n - 1} hops of latencies, got {len(self.lat)}")
        for row in self.lat:
            if len(row) != self.k:
                raise InputError(f"every hop needs {self.k} latencies")
            if any((not isinstance(x, (int, np.integer))) or x < 0 for x in row):
                raise InputError("latencies must be non-negative integers")

    @classmethod
    def of(cls, lat) -> "TypedChain":
        lat = tuple(tuple(int(x) for x in row) for row in lat)
        if not lat:
            raise InputError("use TypedChain(1, k, ()) for a single-node chain")
        return cls(len(lat) + 1, len(lat[0]), lat)

    def type_sums(self) -> tuple:
        return tuple(sum(row[j] for row in self.lat) for j in range(self.k))


class AggregateCost:
    """Evaluator of ``f`` over integer total tuples.

    Use ``parametric`` for ``g(c_j * t_j ** p_j)`` with ``g`` in {sum, max};
    any other callable is accepted as a black box (see ``check_monotone``).
    """

    def __init__(self, func: Callable, form: Optional[str] = None,
                 coeffs: Sequence = (), powers: Sequence = ()):
        self.func = func
        self.form = form
        self.coeffs = tuple(coeffs)
        self.powers = tuple(powers)

    @classmethod
    def parametric(cls, form: str, coeffs: Sequence, powers: Sequence) -> "AggregateCost":
        if form not in ("sum", "max"):
            raise InputError(f"unknown aggregate form {form!r}; expected sum or max")
        if len(coeffs) != len(powers) or not coeffs:
            raise InputError("need one coefficient and one exponent per connection type")
        if any(c <= 0 for c in coeffs) or any(p < 1 for p in powers):
            raise InputError("coefficients must be > 0 and exponents >= 1")
        coeffs, powers = tuple(coeffs), tuple(powers)
        g = sum if form == "sum" else max

        def func(totals):
            return g(c * t ** p for c, t, p in zip(coeffs, totals, powers))

        return cls(func, form, coeffs, powers)

    @property
    def k(self) -> Optional[int]:
        return len(self.coeffs) if self.form else None

    def __call__(self, totals) -> float:
        return self.func(tuple(totals))

    def check_monotone(self, bounds: Sequence[int], samples: int = 200, seed: int = 0) -> None:
        """Spot-check non-decreasingness; raises InputError on a counterexample."""
        rng = random.Random(seed)
        for _ in range(samples):
            t = [rng.randint(0, b) for b in bounds]
            j = rng.randrange(len(bounds))
            if t[j] >= bounds[j]:
                continue
            bumped = list(t)
            bumped[j] += 1
            if self(bumped) < self(t):
                raise InputError(f"aggregate cost decreases from {tuple(t)} to {tuple(bumped)}")


@dataclass
class ChainResult:
    cost: float
    choices: list      # connection type (1-based) per hop
    totals: tuple


def _check_budget(cells: int, budget: int) -> None:
    if cells > budget:
        raise CapabilityError(f"state space of {cells} cells exceeds the budget of {budget}")


def _shift_add(prev: np.ndarray, axis: int, by: int) -> np.ndarray:
    """``out[.., t, ..] = prev[.., t - by, ..]`` along ``axis``; INF where t < by."""
    out = np.full_like(prev, INF)
    size = prev.shape[axis]
    if by < size:
        dst = [slice(None)] * prev.ndim
        src = [slice(None)] * prev.ndim
        dst[axis] = slice(by, size)
        src[axis] = slice(0, size - by)
        out[tuple(dst)] = prev[tuple(src)]
    return out


def lmin_tables(chain: TypedChain, bounds: Sequence[int], budget: int = DEFAULT_BUDGET) -> list:
    """All layers ``Lmin[1..n]`` as int64 arrays over the type-1..k-1 totals (INF = unreachable)."""
    k = chain.k
    shape = tuple(b + 1 for b in bounds[:k - 1])
    _check_budget(chain.n * math.prod(shape), budget)
    first = np.full(shape, INF, dtype=np.int64)
    first[(0,) * (k - 1)] = 0
    layers = [first]
    for row in chain.lat:
        prev = layers[-1]
        lk = row[k - 1]
        cur = np.where(prev == INF, INF, prev + lk)
        for j in range(k - 1):
            np.minimum(cur, _shift_add(prev, j, row[j]), out=cur)
        layers.append(cur)
    return layers


def _backwalk(chain: TypedChain, layers: list, coords: tuple) -> list:
    """Connection types reproducing ``layers[-1][coords]``, lowest type first on ties."""
    k = chain.k
    choices = []
    coords = list(coords)
    for i in range(chain.n - 2, -1, -1):
        prev, cur = layers[i], layers[i + 1]
        target = cur[tuple(coords)]
        row = chain.lat[i]
        for j in range(k - 1):
            if coords[j] >= row[j]:
                back = list(coords)
                back[j] -= row[j]
                if prev[tuple(back)] == target:
                    choices.append(j + 1)
                    coords = back
                    break
        else:
            assert prev[tuple(coords)] != INF and prev[tuple(coords)] + row[k - 1] == target
            choices.append(k)
    choices.reverse()
    return choices


def _totals_of(chain: TypedChain, choices: Sequence[int]) -> tuple:
    totals = [0] * chain.k
    for row, c in zip(chain.lat, choices):
        totals[c - 1] += row[c - 1]
    return tuple(totals)


def nonlinear_chain_dp(chain: TypedChain, cost: AggregateCost, bounds: Optional[Sequence[int]] = None,
                       budget: int = DEFAULT_BUDGET) -> ChainResult:
    """Exact minimum of ``f`` over all k^(n-1) connection choices."""
    if bounds is None:
        bounds = chain.type_sums()
    if len(bounds) != chain.k:
        raise InputError(f"need {chain.k} bounds")
    layers = lmin_tables(chain, bounds, budget)
    last = layers[-1]
    best = None
    for coords in np.argwhere((last != INF) & (last <= bounds[-1])):
        coords = tuple(int(x) for x in coords)
        value = cost(coords + (int(last[coords]),))
        if best is None or value < best[0]:
            best = (value, coords)
    if best is None:
        raise InputError("no connection sequence fits within the bounds")
    choices = _backwalk(chain, layers, best[1])
    return ChainResult(best[0], choices, _totals_of(chain, choices))


def _lmax(c, p, ccost, cap: int) -> int:
    """Largest integer t in [0, cap] with ``c * t**p <= ccost`` (-1 if none)."""
    lo, hi = -1, cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if c * mid ** p <= ccost:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _feasible(chain: TypedChain, cost: AggregateCost, ccost, sums, budget, strict: bool):
    k = chain.k
    lm = [_lmax(c, p, ccost, s) for c, p, s in zip(cost.coeffs, cost.powers, sums)]
    if min(lm) < 0:
        return None
    layers = lmin_tables(chain, lm, budget)
    last = layers[-1]
    ok = last < lm[k - 1] if strict else last <= lm[k - 1]
    hits = np.argwhere(ok & (last != INF))
    if len(hits) == 0:
        return None
    return _backwalk(chain, layers, tuple(int(x) for x in hits[0]))


def nonlinear_bsearch_max(chain: TypedChain, cost: AggregateCost, epsilon: Optional[float] = None,
                          budget: int = DEFAULT_BUDGET, strict: bool = False) -> ChainResult:
    """Binary search the optimum of the max-form cost with a bounded-index feasibility test.

    A candidate ``C`` is feasible when the table restricted to
    ``t_j <= lmax(j) = max{t : c_j * t**p_j <= C}`` has a final entry at most
    ``lmax(k)``.  By default the search runs over the finite set
    ``{c_j * t**p_j}`` of attainable costs and is exact; with ``epsilon`` it
    bisects ``[0, CMAX]`` until the interval is narrower than
    ``epsilon * max(1, CMAX)`` and returns the upper end.  ``strict`` uses
    ``< lmax(k)`` for the acceptance test instead, which rejects candidates
    hit exactly by the type-k total.
    """
    if cost.form != "max":
        raise InputError("the binary search needs the parametric max form")
    if cost.k != chain.k:
        raise InputError(f"cost has {cost.k} terms, chain has {chain.k} types")
    sums = chain.type_sums()
    if epsilon is None:
        cands = sorted({c * t ** p for c, p, s in zip(cost.coeffs, cost.powers, sums)
                        for t in range(s + 1)})
        lo, hi, best = 0, len(cands) - 1, None
        while lo <= hi:
            mid = (lo + hi) // 2
            ch = _feasible(chain, cost, cands[mid], sums, budget, strict)
            if ch is not None:
                best = (cands[mid], ch)
                hi = mid - 1
            else:
                lo = mid + 1
        if best is None:
            raise InputError("no candidate cost is feasible")
        return ChainResult(best[0], best[1], _totals_of(chain, best[1]))
    cmax = max(c * s ** p for c, p, s in zip(cost.coeffs, cost.powers, sums))
    lo, hi = 0.0, float(cmax)
    ch = _feasible(chain, cost, hi, sums, budget, strict)
    if ch is None:
        raise InputError("no candidate cost is feasible")
    width = epsilon * max(1.0, cmax)
    while hi - lo > width:
        mid = (lo + hi) / 2
        got = _feasible(chain, cost, mid, sums, budget, strict)
        if got is not None:
            hi, ch = mid, got
        else:
            lo = mid
    return ChainResult(hi, ch, _totals_of(chain, ch))


def enumerate_chain(chain: TypedChain, cost: AggregateCost) -> float:
    """Brute force over every connection sequence (small chains only)."""
    from itertools import product
    return min(cost(_totals_of(chain, seq))
               for seq in product(range(1, chain.k + 1), repeat=chain.n - 1))


@dataclass
class TypedGraph:
    graph: Graph      # weights per edge: (type, latency)
    k: int

    def type_sums(self) -> tuple:
        sums = [0] * self.k
        for e in self.graph.edges:
            sums[e.weights[0] - 1] += e.weights[1]
        return tuple(sums)


def chain_to_graph(chain: TypedChain) -> TypedGraph:
    edges = [(i + 1, i + 2, (j + 1, row[j])) for i, row in enumerate(chain.lat) for j in range(chain.k)]
    return TypedGraph(Graph(chain.n, edges, directed=True, arity=2), chain.k)


@dataclass
class GraphResult:
    cost: dict        # destination -> minimum f, or None when unreachable
    totals: dict      # destination -> total tuple achieving it


def nonlinear_graph_sp(tg: TypedGraph, sources, destinations, cost: AggregateCost,
                       bounds: Optional[Sequence[int]] = None,
                       budget: int = DEFAULT_BUDGET) -> GraphResult:
    """One Dijkstra over tuples ``(vertex, t_1, ..., t_{k-1})`` seeded from every source.

    Type-j arcs (j < k) cost 0 and raise coordinate j; type-k arcs cost their
    latency.  Tuples beyond ``bounds`` are not generated.
    """
    g, k = tg.graph, tg.k
    if isinstance(sources, int):
        sources = (sources,)
    if isinstance(destinations, int):
        destinations = (destinations,)
    for v in list(sources) + list(destinations):
        if not 1 <= v <= g.n:
            raise InputError(f"vertex {v} outside 1..{g.n}")
    if not sources:
        raise InputError("source set is empty")
    if bounds is None:
        bounds = tg.type_sums()
    if len(bounds) != k:
        raise InputError(f"need {k} bounds")
    _check_budget(g.n * math.prod(b + 1 for b in bounds[:k - 1]), budget)
    zero = (0,) * (k - 1)
    dist: dict = {}
    heap = []
    for s in dict.fromkeys(sources):
        dist[(s, zero)] = 0
        heappush(heap, (0, s, zero))
    while heap:
        d, v, coords = heappop(heap)
        if dist[(v, coords)] != d:
            continue
        for w, idx in g.adj[v]:
            e = g.edges[idx]
            typ, lat = e.weights
            if typ == k:
                nd, nc = d + lat, coords
                if nd > bounds[k - 1]:
                    continue
            else:
                j = typ - 1
                if coords[j] + lat > bounds[j]:
                    continue
                nd, nc = d, coords[:j] + (coords[j] + lat,) + coords[j + 1:]
            key = (w, nc)
            if key not in dist or nd < dist[key]:
                dist[key] = nd
                heappush(heap, (nd, w, nc))
    best: dict = {d: None for d in destinations}
    totals: dict = {d: None for d in destinations}
    for (v, coords), dv in sorted(dist.items()):
        if v in best:
            value = cost(coords + (dv,))
            if best[v] is None or value < best[v]:
                best[v] = value
                totals[v] = coords + (dv,)
    return GraphResult(best, totals)


def parse_typed_graph(text: str) -> TypedGraph:
    """Header ``n m k directed|undirected`` then ``m`` lines ``u v type latency``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphParseError(1, "empty typed graph")
    lineno, head = rows[0]
    if len(head) != 4 or head[3] not in ("directed", "undirected"):
        raise GraphParseError(lineno, "header must be 'n m k directed|undirected'")
    try:
        n, m, k = (int(x) for x in head[:3])
    except ValueError:
        raise GraphParseError(lineno, "n, m and k must be integers") from None
    if n < 1 or m < 0 or k < 1:
        raise GraphParseError(lineno, "need n >= 1, m >= 0, k >= 1")
    if len(rows) - 1 != m:
        raise GraphParseError(lineno, f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, f in rows[1:]:
        if len(f) != 4:
            raise GraphParseError(lineno, "edge line must be 'u v type latency'")
        try:
            u, v, t, lat = (int(x) for x in f)
        except ValueError:
            raise GraphParseError(lineno, "edge fields must be integers") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(lineno, f"endpoint outside 1..{n}")
        if not 1 <= t <= k:
            raise GraphParseError(lineno, f"type {t} outside 1..{k}")
        if lat < 0:
            raise GraphParseError(lineno, "latency must be non-negative")
        edges.append((u, v, (t, lat)))
    return TypedGraph(Graph(n, edges, directed=head[3] == "directed", arity=2), k)


def parse_chain(text: str) -> TypedChain:
    """Header ``n k`` then ``n - 1`` lines of k latencies each."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows or len(rows[0][1]) != 2:
        raise GraphParseError(rows[0][0] if rows else 1, "header must be 'n k'")
    try:
        n, k = (int(x) for x in rows[0][1])
    except ValueError:
        raise GraphParseError(rows[0][0], "n and k must be integers") from None
    lat = []
    for lineno, f in rows[1:]:
        if len(f) != k:
            raise GraphParseError(lineno, f"expected {k} latencies")
        try:
            lat.append(tuple(int(x) for x in f))
        except ValueError:
            raise GraphParseError(lineno, "latencies must be integers") from None
    if len(lat) != n - 1:
        raise GraphParseError(rows[0][0], f"header announces {n - 1} hops, found {len(lat)}")
    return TypedChain(n, k, tuple(lat))
