"""Multi-objective paths over the state graph of (vertex, score tuple) pairs.

Every objective i updates its score along an edge with ``f_i(previous scores,
edge costs)``; scores live in ``[0, VMAX]`` so the state graph is finite and a
breadth-first traversal enumerates every reachable state.  The non-dominated
tuples at the destinations form the Pareto front.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Callable, Optional, Sequence

from .errors import CapabilityError, InputError
from .graph import INF, Graph

DEFAULT_STATE_BUDGET = 5 * 10 ** 6

_UPDATES = {
    "sum": lambda prev, cost: prev + cost,
    "max": lambda prev, cost: prev if prev > cost else cost,
    "min": lambda prev, cost: prev if prev < cost else cost,
}


@dataclass(frozen=True)
class CostModel:
    """``updates[i](prev_scores, edge_costs) -> int``; ``senses[i]`` is ``"min"`` or ``"max"``
    (which direction is better).  ``columns`` picks the edge weight columns
    that make up the cost tuple passed to the updates."""

    updates: tuple
    senses: tuple
    seeds: tuple
    vmax: int
    columns: tuple

    def __post_init__(self):
        p = len(self.updates)
        if p < 1:
            raise InputError("need at least one objective")
        if not (len(self.senses) == len(self.seeds) == p):
            raise InputError("updates, senses and seeds must have one entry per objective")
        for s in self.senses:
            if s not in ("min", "max"):
                raise InputError(f"unknown direction {s!r}; expected min or max")
        if self.vmax < 0:
            raise InputError("VMAX must be non-negative")

    @property
    def p(self) -> int:
        return len(self.updates)

    @classmethod
    def from_kinds(cls, kinds: Sequence[str], vmax: int, senses: Optional[Sequence[str]] = None,
                   columns: Optional[Sequence[int]] = None) -> "CostModel":
        """Objective i aggregates column ``columns[i]`` with sum, max or min.

        Default directions: minimise sum and max objectives, maximise min
        objectives.  Min objectives start from +inf, the others from 0.
        """
        kinds = tuple(kinds)
        for k in kinds:
            if k not in _UPDATES:
                raise InputError(f"unknown objective kind {k!r}; expected sum, max or min")
        if senses is None:
            senses = tuple("max" if k == "min" else "min" for k in kinds)
        if columns is None:
            columns = tuple(range(len(kinds)))
        updates = tuple(_column_update(_UPDATES[k], i) for i, k in enumerate(kinds))
        seeds = tuple(INF if k == "min" else 0 for k in kinds)
        return cls(updates, tuple(senses), seeds, vmax, tuple(columns))

    def better(self, j: int, a: int, b: int) -> bool:
        return a < b if self.senses[j] == "min" else a > b

    def step(self, scores: tuple, costs: tuple) -> Optional[tuple]:
        """Successor scores, or ``None`` when some score leaves ``[0, VMAX]``."""
        out = tuple(f(scores, costs) for f in self.updates)
        for x in out:
            if not 0 <= x <= self.vmax:
                return None
        return out

    def dominates(self, a: tuple, b: tuple, weak: bool = False) -> bool:
        """Strict rule: better on every objective.  Weak: never worse and better somewhere."""
        if weak:
            return (a != b and all(not self.better(j, y, x) for j, (x, y) in enumerate(zip(a, b))))
        return all(self.better(j, x, y) for j, (x, y) in enumerate(zip(a, b)))


def _column_update(op: Callable, i: int) -> Callable:
    def update(prev, costs):
        return op(prev[i], costs[i])
    return update


@dataclass(frozen=True)
class StateSet:
    """Reachable ``(vertex, scores)`` states with predecessor links ``(state, edge_index)``."""

    model: CostModel
    pred: dict
    sources: tuple
    discarded: int = 0

    def __contains__(self, state) -> bool:
        return state in self.pred

    def __len__(self) -> int:
        return len(self.pred)

    def at(self, v: int) -> list:
        return sorted(s for (u, s) in self.pred if u == v)

    def path_to(self, state) -> tuple:
        """``(vertices, edge_indices)`` of the recorded walk to ``state``."""
        return _walk_back(self.pred, state)


def _walk_back(pred: dict, state) -> tuple:
    path, edges = [state[0]], []
    link = pred[state]
    while link is not None:
        state, idx = link
        path.append(state[0])
        edges.append(idx)
        link = pred[state]
    path.reverse()
    edges.reverse()
    return path, edges


def _arcs(g: Graph, model: CostModel):
    cols = model.columns
    for c in cols:
        if not 0 <= c < g.arity:
            raise InputError(f"cost column {c} out of range for arity {g.arity}")
    costs = [tuple(e.weights[c] for c in cols) for e in g.edges]
    for cs in costs:
        if any(not 0 <= x <= model.vmax for x in cs):
            raise InputError(f"edge costs must lie in [0, {model.vmax}]")
    return costs


def _sources(g: Graph, sources) -> tuple:
    if isinstance(sources, int):
        sources = (sources,)
    sources = tuple(dict.fromkeys(sources))
    if not sources:
        raise InputError("source set is empty")
    for s in sources:
        if not 1 <= s <= g.n:
            raise InputError(f"source {s} outside 1..{g.n}")
    return sources


def enumerate_reachable(g: Graph, model: CostModel, sources,
                        budget: int = DEFAULT_STATE_BUDGET) -> StateSet:
    """Breadth-first traversal of the state graph from every ``(source, seeds)``.

    Seed scores are exempt from the range check (a min objective starts at
    +inf).  Successors leaving ``[0, VMAX]`` are dropped and counted.
    """
    sources = _sources(g, sources)
    costs = _arcs(g, model)
    pred: dict = {}
    queue = deque()
    for s in sources:
        st = (s, model.seeds)
        pred[st] = None
        queue.append(st)
    discarded = 0
    while queue:
        st = queue.popleft()
        v, scores = st
        for w, idx in g.adj[v]:
            nxt = model.step(scores, costs[idx])
            if nxt is None:
                discarded += 1
                continue
            ns = (w, nxt)
            if ns not in pred:
                pred[ns] = (st, idx)
                if len(pred) > budget:
                    raise CapabilityError(f"more than {budget} reachable states")
                queue.append(ns)
    return StateSet(model, pred, sources, discarded)


@dataclass(frozen=True)
class FrontEntry:
    scores: tuple
    vertex: int
    path: list = field(compare=False)
    edges: list = field(compare=False)


def _non_dominated(model: CostModel, tuples: list, weak: bool) -> list:
    return [a for a in tuples if not any(model.dominates(b, a, weak) for b in tuples)]


def pareto_front(states: StateSet, destinations, weak: bool = False) -> list:
    """Non-dominated score tuples over the destination states, sorted lexicographically.

    Each tuple appears once with one witness path (from the smallest
    destination holding it).
    """
    if isinstance(destinations, int):
        destinations = (destinations,)
    dests = set(destinations)
    witness: dict = {}
    for st in sorted(st for st in states.pred if st[0] in dests):
        witness.setdefault(st[1], st)
    front = _non_dominated(states.model, sorted(witness), weak)
    return [FrontEntry(t, witness[t][0], *states.path_to(witness[t])) for t in front]


@dataclass(frozen=True)
class SpTable:
    """``value[(vertex, first p-1 scores)]`` = best p-th score, with predecessor links."""

    model: CostModel
    value: dict
    pred: dict
    discarded: int = 0

    def path_to(self, key) -> tuple:
        return _walk_back(self.pred, key)


def monotone_sp(g: Graph, model: CostModel, sources, budget: int = DEFAULT_STATE_BUDGET) -> SpTable:
    """Label-setting search over ``(vertex, s_1..s_{p-1})`` keyed by the p-th score.

    Requires the last update to be monotone and never to improve along an
    edge, as Dijkstra does.  Successor states are generated on the fly from
    the current best p-th score.
    """
    if model.p < 2:
        raise InputError("monotone_sp needs at least two objectives")
    sources = _sources(g, sources)
    costs = _arcs(g, model)
    last = model.p - 1
    sign = 1 if model.senses[last] == "min" else -1
    value: dict = {}
    pred: dict = {}
    heap = []
    for s in sources:
        key = (s, model.seeds[:last])
        value[key] = model.seeds[last]
        pred[key] = None
        heappush(heap, (sign * model.seeds[last], key))
    done = set()
    discarded = 0
    while heap:
        _, key = heappop(heap)
        if key in done:
            continue
        done.add(key)
        v, head = key
        scores = head + (value[key],)
        for w, idx in g.adj[v]:
            nxt = model.step(scores, costs[idx])
            if nxt is None:
                discarded += 1
                continue
            nk = (w, nxt[:last])
            if nk in done:
                continue
            if nk not in value or model.better(last, nxt[last], value[nk]):
                value[nk] = nxt[last]
                pred[nk] = (key, idx)
                if len(value) > budget:
                    raise CapabilityError(f"more than {budget} reachable states")
                heappush(heap, (sign * nxt[last], nk))
    return SpTable(model, value, pred, discarded)


def front_from_sp(table: SpTable, destinations, weak: bool = True) -> list:
    """Pareto front read off an sp table (weak domination by default, see ``pareto_front``)."""
    if isinstance(destinations, int):
        destinations = (destinations,)
    dests = set(destinations)
    witness: dict = {}
    for key in sorted(k for k in table.value if k[0] in dests):
        witness.setdefault(key[1] + (table.value[key],), key)
    front = _non_dominated(table.model, sorted(witness), weak)
    return [FrontEntry(t, witness[t][0], *table.path_to(witness[t])) for t in front]


def replay_edges(g: Graph, model: CostModel, edge_ids: Sequence[int]) -> Optional[tuple]:
    """Scores obtained by applying the updates along the given edges from the seeds."""
    costs = _arcs(g, model)
    scores = model.seeds
    for idx in edge_ids:
        scores = model.step(scores, costs[idx])
        if scores is None:
            return None
    return scores
