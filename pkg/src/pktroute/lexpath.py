"""Lexicographically optimal paths under k aggregated edge weights.

Component i of a path's weight vector folds the path's i-th edge weights with
``f_i`` in {min, max, sum}.  Components aggregated by ``min`` are maximised,
the others minimised, and vectors are compared lexicographically.

``lex_dijkstra`` is the plain single-label Dijkstra over weight vectors.  It
is exact as long as no min/max component is followed by another component;
otherwise a path that is worse at an intermediate vertex can still win
later (the bottleneck component saturates and a later component decides).
``generalized_dijkstra`` removes that limitation: it runs ``lex_dijkstra`` on
segments of components that end at a min/max component and, between
segments, restricts each target to the arcs that can still lie on one of its
optimal paths (tight arcs for the sums, a threshold for the bottleneck).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from heapq import heappop, heappush
from typing import Optional, Sequence

from .errors import InputError
from .graph import INF, Graph, sat_add

AGGREGATORS = ("min", "max", "sum")


class Order(Enum):
    BETTER = "better"
    EQUAL = "equal"
    WORSE = "worse"


@dataclass(frozen=True)
class AggregatorSpec:
    f: tuple

    def __post_init__(self):
        if not self.f:
            raise InputError("aggregator spec needs at least one component")
        for a in self.f:
            if a not in AGGREGATORS:
                raise InputError(f"unknown aggregator {a!r}; expected one of min, max, sum")

    @classmethod
    def parse(cls, text: str) -> "AggregatorSpec":
        return cls(tuple(part.strip() for part in text.split(",") if part.strip()))

    @property
    def k(self) -> int:
        return len(self.f)

    @property
    def o(self) -> tuple:
        return tuple("max" if a == "min" else "min" for a in self.f)

    def empty(self) -> tuple:
        return tuple(INF if a == "min" else 0 for a in self.f)

    def extend(self, vec: Sequence[int], w: Sequence[int]) -> tuple:
        out = []
        for a, x, y in zip(self.f, vec, w):
            if a == "sum":
                out.append(sat_add(x, y))
            elif a == "min":
                out.append(x if x < y else y)
            else:
                out.append(x if x > y else y)
        return tuple(out)

    def key(self, vec: Sequence[int]) -> tuple:
        """Sort key: smaller is better."""
        return tuple(-x if a == "min" else x for a, x in zip(self.f, vec))

    def __str__(self) -> str:
        return ",".join(self.f)


def _as_spec(spec) -> AggregatorSpec:
    """Accept an AggregatorSpec, a ``"min,sum"`` string or a sequence of names."""
    if isinstance(spec, AggregatorSpec):
        return spec
    if isinstance(spec, str):
        return AggregatorSpec.parse(spec)
    return AggregatorSpec(tuple(spec))


def lex_compare(spec: AggregatorSpec, a: Sequence[int], b: Sequence[int]) -> Order:
    if len(a) != spec.k or len(b) != spec.k:
        raise InputError(f"vectors must have {spec.k} components")
    ka, kb = spec.key(a), spec.key(b)
    if ka < kb:
        return Order.BETTER
    if ka > kb:
        return Order.WORSE
    return Order.EQUAL


@dataclass
class LexLabels:
    """Best vector per vertex (``None`` when unreachable) with path recovery."""

    spec: AggregatorSpec
    vectors: list
    parent: list                      # (pred, edge_index) or None
    sources: tuple
    _pred: list = field(default_factory=list, repr=False)   # per-run arrays of (pred, pos)
    _run_of: list = field(default_factory=list, repr=False)
    _ids: list = field(default_factory=list, repr=False)

    def path_to(self, v: int) -> Optional[list]:
        if self.vectors[v] is None:
            return None
        pred = self._pred[self._run_of[v]]
        path = [v]
        while pred[v] is not None:
            v = pred[v][0]
            path.append(v)
        path.reverse()
        return path


def _resolve_columns(g: Graph, spec: AggregatorSpec, columns) -> tuple:
    cols = tuple(range(spec.k)) if columns is None else tuple(columns)
    if len(cols) != spec.k:
        raise InputError(f"need {spec.k} weight columns, got {len(cols)}")
    for c in cols:
        if not 0 <= c < g.arity:
            raise InputError(f"weight column {c} out of range for arity {g.arity}")
    return cols


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


def _arc_weights(g: Graph, cols: tuple) -> tuple:
    """CSR offsets/targets plus a per-arc weight tuple for the chosen columns."""
    offsets, targets, _, ids = g.csr(cols[0] if cols else 0)
    columns = [g.csr(c)[2] for c in cols]
    weights = list(zip(*columns)) if columns else [()] * len(targets)
    return offsets, targets, weights, ids


def _run(g, spec: AggregatorSpec, arcs, sources, allowed=None):
    """Single-label lexicographic Dijkstra with lazy decrease-key.

    No vertex is ever frozen: an improved label is pushed again, exactly as
    the textbook variant with delete/re-insert.  Ties pop by vertex id.
    """
    offsets, targets, weights, _ = arcs
    label: list = [None] * (g.n + 1)
    lkey: list = [None] * (g.n + 1)
    pred: list = [None] * (g.n + 1)
    heap = []
    seed = spec.empty()
    skey = spec.key(seed)
    for s in sources:
        label[s] = seed
        lkey[s] = skey
        heappush(heap, (skey, s))
    while heap:
        kv, v = heappop(heap)
        if kv != lkey[v]:
            continue
        lv = label[v]
        for p in range(offsets[v], offsets[v + 1]):
            if allowed is not None and not allowed[p]:
                continue
            w = targets[p]
            new = spec.extend(lv, weights[p])
            nk = spec.key(new)
            if lkey[w] is None or nk < lkey[w]:
                label[w] = new
                lkey[w] = nk
                pred[w] = (v, p)
                heappush(heap, (nk, w))
    return label, pred


def lex_dijkstra(g: Graph, spec: AggregatorSpec, sources, columns=None) -> LexLabels:
    """One pass of the vector-label Dijkstra; exact only for the safe spec shapes (see module doc)."""
    spec = _as_spec(spec)
    cols = _resolve_columns(g, spec, columns)
    sources = _check_sources(g, sources)
    arcs = _arc_weights(g, cols)
    label, pred = _run(g, spec, arcs, sources)
    ids = arcs[3]
    parent = [None if p is None else (p[0], ids[p[1]]) for p in pred]
    return LexLabels(spec, label, parent, sources, [pred], [0] * (g.n + 1), ids)


def _segments(spec: AggregatorSpec) -> list:
    segs, cur = [], []
    for i, a in enumerate(spec.f):
        cur.append(i)
        if a != "sum":
            segs.append(cur)
            cur = []
    if cur:
        segs.append(cur)
    return segs


def _solve(g: Graph, spec: AggregatorSpec, cols: tuple, sources: tuple, allowed=None) -> LexLabels:
    arcs = _arc_weights(g, cols)
    offsets, targets, weights, ids = arcs
    segs = _segments(spec)
    n = g.n
    vectors: list = [None] * (n + 1)
    partial: list = [()] * (n + 1)
    runs: list = []
    run_of = [0] * (n + 1)
    groups = [(allowed, list(range(1, n + 1)))]
    for si, seg in enumerate(segs):
        sub = AggregatorSpec(tuple(spec.f[i] for i in seg))
        sub_arcs = (offsets, targets, [tuple(w[i] for i in seg) for w in weights], ids)
        last = si == len(segs) - 1
        next_groups = []
        for mask, members in groups:
            label, pred = _run(g, sub, sub_arcs, sources, mask)
            members = [v for v in members if label[v] is not None]
            for v in members:
                partial[v] = partial[v] + label[v]
            if last:
                runs.append(pred)
                for v in members:
                    vectors[v] = partial[v]
                    run_of[v] = len(runs) - 1
                continue
            # arcs still usable by an optimal path: tight on every sum, then thresholded
            tight = bytearray(len(targets))
            for u in range(1, n + 1):
                lu = label[u]
                if lu is None:
                    continue
                for p in range(offsets[u], offsets[u + 1]):
                    if mask is not None and not mask[p]:
                        continue
                    lw = label[targets[p]]
                    if lw is None:
                        continue
                    w = sub_arcs[2][p]
                    if all(sat_add(lu[j], w[j]) == lw[j] for j in range(len(seg) - 1)):
                        tight[p] = 1
            by_value: dict = {}
            for v in members:
                by_value.setdefault(label[v][-1], []).append(v)
            agg = sub.f[-1]
            for value in sorted(by_value):
                sel = bytearray(tight)
                for p in range(len(targets)):
                    if sel[p]:
                        w = sub_arcs[2][p][-1]
                        if (agg == "min" and w < value) or (agg == "max" and w > value):
                            sel[p] = 0
                next_groups.append((sel, by_value[value]))
        groups = next_groups
    parent: list = [None] * (n + 1)
    for v in range(1, n + 1):
        if vectors[v] is not None:
            p = runs[run_of[v]][v]
            parent[v] = None if p is None else (p[0], ids[p[1]])
    return LexLabels(spec, vectors, parent, sources, runs, run_of, ids)


def generalized_dijkstra(g: Graph, spec, sources, columns=None) -> LexLabels:
    """Exact lexicographic optimum for every vertex from a source set.

    Sources hold the empty-path vector (0 for max/sum, +inf for min).  When
    no min/max component is followed by another one this is a single
    ``lex_dijkstra`` pass; otherwise one pass per (segment, target group).
    """
    spec = _as_spec(spec)
    cols = _resolve_columns(g, spec, columns)
    sources = _check_sources(g, sources)
    return _solve(g, spec, cols, sources)


def first_component_bsearch(g: Graph, spec, s: int, t: int, columns=None) -> Optional[tuple]:
    """Binary search the first component, solving the rest on the thresholded graph.

    Needs ``f_1`` in {min, max} and ``k >= 2``.  Candidate thresholds are the
    sorted distinct first-column weights; edges below (min) or above (max) a
    candidate are dropped.  Returns ``None`` when t is unreachable.
    """
    spec = _as_spec(spec)
    if spec.k < 2 or spec.f[0] not in ("min", "max"):
        raise InputError("first_component_bsearch needs k >= 2 and f_1 in {min, max}")
    cols = _resolve_columns(g, spec, columns)
    (s,) = _check_sources(g, (s,))
    _check_sources(g, (t,))
    if s == t:
        return spec.empty()
    rest = AggregatorSpec(spec.f[1:])
    offsets, targets, first, _ = g.csr(cols[0])
    cands = sorted(set(first))
    maximise = spec.f[0] == "min"

    def attempt(value):
        if maximise:
            mask = bytearray(1 if w >= value else 0 for w in first)
        else:
            mask = bytearray(1 if w <= value else 0 for w in first)
        return _solve(g, rest, cols[1:], (s,), mask).vectors[t]

    # feasibility is monotone in the threshold; search for the best feasible one
    order = cands[::-1] if maximise else cands    # order[i]: i-th best threshold
    lo, hi, best = 0, len(order) - 1, None
    while lo <= hi:
        mid = (lo + hi) // 2
        vec = attempt(order[mid])
        if vec is not None:
            best = (order[mid], vec)
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        return None
    return (best[0],) + best[1]
