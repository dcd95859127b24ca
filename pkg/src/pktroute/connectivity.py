"""Component and graph weight queries under a known sequence of deletions.

The script is first simulated forward to find the graph that remains after
every deletion.  Union-find (union by rank with path compression) is built on
that final graph and the script is then walked backwards: each deletion is
undone by a union, each query is answered from the current state.

``wcc(root)`` folds vertex weights with ``ccagg``; ``wg`` folds component
weights with ``gagg``, which must be invertible so a merge can take the two
old component weights out before the merged one goes in.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

from . import kernels
from .errors import InputError, ScriptError
from .graph import Graph

DELETE, DELETEVERTEX, QCOMP, QGRAPH = "delete", "deletevertex", "qcomp", "qgraph"
_OP_CODE = {DELETE: 0, DELETEVERTEX: 1, QCOMP: 2, QGRAPH: 3}
_AGG_CODE = {"sum": 0, "max": 1, "min": 2, "xor": 3}
_INT64 = 1 << 63


class Op(NamedTuple):
    kind: str
    a: int = 0
    b: int = 0

    def __str__(self) -> str:
        if self.kind == DELETE:
            return f"delete {self.a} {self.b}"
        if self.kind == QGRAPH:
            return "qgraph"
        return f"{self.kind} {self.a}"


def _product_inverse(a, b):
    if b == 0:
        raise InputError("product aggregate cannot remove a zero component weight")
    if a % b:
        raise InputError("product aggregate is not exactly divisible")
    return a // b


_CC = {
    "sum": lambda a, b: a + b,
    "max": max,
    "min": min,
    "xor": lambda a, b: a ^ b,
    "product": lambda a, b: a * b,
}
_G = {
    "sum": (lambda a, b: a + b, lambda a, b: a - b, 0),
    "xor": (lambda a, b: a ^ b, lambda a, b: a ^ b, 0),
    "product": (lambda a, b: a * b, _product_inverse, 1),
}


@dataclass(frozen=True)
class AggregatorPair:
    ccagg: Callable
    gagg: Callable
    ginv: Callable
    g_identity: object = 0
    cc_name: Optional[str] = None
    g_name: Optional[str] = None

    @classmethod
    def named(cls, cc: str, g: str) -> "AggregatorPair":
        if cc not in _CC:
            raise InputError(f"unknown component aggregate {cc!r}; expected one of {', '.join(_CC)}")
        if g in ("min", "max"):
            raise InputError(f"graph aggregate {g!r} has no inverse; use sum, xor or product")
        if g not in _G:
            raise InputError(f"unknown graph aggregate {g!r}; expected sum, xor or product")
        gagg, ginv, ident = _G[g]
        return cls(_CC[cc], gagg, ginv, ident, cc, g)

    @classmethod
    def parse(cls, text: str) -> "AggregatorPair":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise InputError("aggregator pair must look like 'ccagg,gagg'")
        return cls.named(*parts)

    def kernel_codes(self) -> Optional[tuple]:
        if self.cc_name in _AGG_CODE and self.g_name in ("sum", "xor"):
            return _AGG_CODE[self.cc_name], _AGG_CODE[self.g_name]
        return None

    def check_inverse(self, values: Sequence[int], samples: int = 200, seed: int = 0) -> None:
        """Spot-check ``ginv(gagg(a, b), b) == a`` and commutativity on sampled values."""
        rng = random.Random(seed)
        for _ in range(samples):
            a, b = rng.choice(values), rng.choice(values)
            if self.ccagg(a, b) != self.ccagg(b, a) or self.gagg(a, b) != self.gagg(b, a):
                raise InputError("aggregate is not commutative")
            if self.ginv(self.gagg(a, b), b) != a:
                raise InputError(f"inverse fails for {a}, {b}")


def parse_script(text: str) -> list:
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        f = raw.split("#", 1)[0].split()
        if not f:
            continue
        arity = {DELETE: 2, DELETEVERTEX: 1, QCOMP: 1, QGRAPH: 0}.get(f[0])
        if arity is None:
            raise InputError(f"line {lineno}: unknown operation {f[0]!r}")
        if len(f) != arity + 1:
            raise InputError(f"line {lineno}: {f[0]} takes {arity} argument(s)")
        try:
            args = [int(x) for x in f[1:]]
        except ValueError:
            raise InputError(f"line {lineno}: vertex ids must be integers") from None
        ops.append(Op(f[0], *args))
    return ops


def format_script(ops: Sequence[Op]) -> str:
    return "".join(f"{op}\n" for op in ops)


def _edge_key(u: int, v: int) -> tuple:
    return (u, v) if u <= v else (v, u)


class _Forward:
    """Structural forward simulation shared by validation and replay."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.alive = [True] * (g.n + 1)
        self.nbr: list = [Counter() for _ in range(g.n + 1)]
        for e in g.edges:
            self.nbr[e.u][e.v] += 1
            if e.u != e.v:
                self.nbr[e.v][e.u] += 1

    def _vertex(self, x: int, i: int, op: Op) -> Optional[ScriptError]:
        if not 1 <= x <= self.n:
            return ScriptError(i, f"{op}: vertex {x} outside 1..{self.n}")
        if not self.alive[x]:
            return ScriptError(i, f"{op}: vertex {x} was deleted")
        return None

    def apply(self, i: int, op: Op):
        """Apply one op; returns the removed incident edges for a vertex deletion, or a ScriptError."""
        if op.kind == QGRAPH:
            return None
        err = self._vertex(op.a, i, op)
        if err:
            return err
        if op.kind == QCOMP:
            return None
        if op.kind == DELETE:
            err = self._vertex(op.b, i, op)
            if err:
                return err
            u, v = op.a, op.b
            if self.nbr[u][v] == 0:
                return ScriptError(i, f"{op}: no such edge")
            self._drop(u, v)
            return None
        x = op.a
        removed = []
        for y, cnt in list(self.nbr[x].items()):
            removed.extend([_edge_key(x, y)] * cnt)
        for u, v in removed:
            self._drop(u, v)
        self.alive[x] = False
        return removed

    def _drop(self, u: int, v: int) -> None:
        self.nbr[u][v] -= 1
        if not self.nbr[u][v]:
            del self.nbr[u][v]
        if u != v:
            self.nbr[v][u] -= 1
            if not self.nbr[v][u]:
                del self.nbr[v][u]


def validate_script(g: Graph, ops: Sequence[Op]) -> Optional[ScriptError]:
    """First invalid operation as a ScriptError (not raised), or ``None`` when the script is valid."""
    if g.directed:
        return ScriptError(0, "offline replay needs an undirected graph")
    sim = _Forward(g)
    for i, op in enumerate(ops):
        out = sim.apply(i, op)
        if isinstance(out, ScriptError):
            return out
    return None


def run_offline(g: Graph, weights: Sequence[int], ops: Sequence[Op], aggs: AggregatorPair,
                compress: bool = True) -> list:
    """Answers to the query operations, in script order.

    ``weights`` is indexed by vertex (slot 0 ignored) or has exactly n
    entries for vertices 1..n.
    """
    if len(weights) == g.n:
        weights = [0] + list(weights)
    if len(weights) != g.n + 1:
        raise InputError(f"need {g.n} vertex weights, got {len(weights)}")
    weights = list(weights)
    weights[0] = 0
    if g.directed:
        raise InputError("offline replay needs an undirected graph")
    sim = _Forward(g)
    kinds, a, b, vstart, vend = [], [], [], [], []
    veu, vev = [], []
    for i, op in enumerate(ops):
        out = sim.apply(i, op)
        if isinstance(out, ScriptError):
            raise out
        kinds.append(_OP_CODE[op.kind])
        a.append(op.a)
        b.append(op.b)
        vstart.append(len(veu))
        if out:
            for u, v in out:
                veu.append(u)
                vev.append(v)
        vend.append(len(veu))

    # components of the final graph as stars: every member points at the root
    n = g.n
    parent = list(range(n + 1))
    rank = [0] * (n + 1)
    wcc = list(weights)
    wg = aggs.g_identity
    seen = [False] * (n + 1)
    for r in range(1, n + 1):
        if seen[r] or not sim.alive[r]:
            continue
        seen[r] = True
        stack = [r]
        acc = weights[r]
        while stack:
            x = stack.pop()
            for y in sim.nbr[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = r
                    acc = aggs.ccagg(acc, weights[y])
                    stack.append(y)
                    rank[r] = 1
        wcc[r] = acc
        wg = aggs.gagg(wg, acc)

    codes = aggs.kernel_codes()
    if codes is not None and _fits_int64(weights, codes):
        answers, _ = kernels.replay(parent, rank, wcc, wg, kinds, a, b, vstart, vend,
                                    veu, vev, weights, codes[0], codes[1], compress)
    else:
        answers, _ = kernels.replay_generic(parent, rank, wcc, wg, kinds, a, b, vstart, vend,
                                            veu, vev, weights, aggs.ccagg, aggs.gagg, aggs.ginv,
                                            compress)
    return [ans for op, ans in zip(ops, answers) if op.kind in (QCOMP, QGRAPH)]


def _fits_int64(weights: Sequence[int], codes: tuple) -> bool:
    if not all(isinstance(w, int) and -_INT64 <= w < _INT64 for w in weights):
        return False
    if 0 in codes:  # sums of every weight (and partial sums) must stay in range
        return sum(abs(w) for w in weights) < _INT64
    return True


def recompute(g: Graph, weights: Sequence[int], ops: Sequence[Op], aggs: AggregatorPair) -> list:
    """Reference answers by rebuilding components from scratch at every query."""
    if len(weights) == g.n:
        weights = [0] + list(weights)
    sim = _Forward(g)
    out = []
    for i, op in enumerate(ops):
        res = sim.apply(i, op)
        if isinstance(res, ScriptError):
            raise res
        if op.kind not in (QCOMP, QGRAPH):
            continue
        comp = [0] * (g.n + 1)
        values = {}
        for r in range(1, g.n + 1):
            if comp[r] or not sim.alive[r]:
                continue
            comp[r] = r
            stack, acc = [r], weights[r]
            while stack:
                x = stack.pop()
                for y in sim.nbr[x]:
                    if not comp[y]:
                        comp[y] = r
                        acc = aggs.ccagg(acc, weights[y])
                        stack.append(y)
            values[r] = acc
        if op.kind == QCOMP:
            out.append(values[comp[op.a]])
        else:
            total = aggs.g_identity
            for r in sorted(values):
                total = aggs.gagg(total, values[r])
            out.append(total)
    return out
