"""Time the pure-Python kernels against the compiled ones on one random instance.

    python3 benchmarks/bench_kernels.py [--n 100000] [--m 200000] [--repeat 3]
"""
import argparse
import random
import time

from pktroute import kernels
from pktroute.bindex import build_index
from pktroute.connectivity import AggregatorPair, Op, run_offline
from pktroute.graph import Graph


def best_of(repeat, func):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(n, m, rng):
    edges = []
    while len(edges) < m:
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u != v:
            edges.append((u, v, (rng.randint(0, 10 ** 6),)))
    g = Graph(n, edges)
    off, tgt, caps, _ = g.csr(0)
    order = sorted(range(m), key=lambda i: -edges[i][2][0])
    us = [edges[i][0] for i in order]
    vs = [edges[i][1] for i in order]
    cs = [edges[i][2][0] for i in order]
    idx = build_index(g)
    qu = [rng.randint(1, n) for _ in range(n)]
    qv = [rng.randint(1, n) for _ in range(n)]
    deletes = [Op("delete", u, v) for u, v, _ in edges[: m // 2]]
    queries = [Op("qcomp", rng.randint(1, n)) for _ in range(n // 2)]
    ops = deletes + queries
    rng.shuffle(ops)
    weights = [rng.randint(0, 100) for _ in range(n)]
    pair = AggregatorPair.named("sum", "sum")
    return {
        "widest_path": lambda k: k.widest_path(n, off, tgt, caps, [1]),
        "kruskal_forest": lambda k: k.kruskal_forest(n, us, vs, cs),
        "levelwise_batch": lambda k: k.levelwise_batch(idx.parent, idx.parent_cap, idx.level, qu, qv),
        "run_offline (all)": lambda k: _with_replay(k, lambda: run_offline(g, weights, ops, pair)),
    }


def _with_replay(k, func):
    saved = kernels.replay
    kernels.replay = k.replay
    try:
        return func()
    finally:
        kernels.replay = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--m", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    names = kernels.available()
    print(f"n={args.n} m={args.m} backends={','.join(names)}")
    work = workloads(args.n, args.m, random.Random(args.seed))
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) > 1 else ""))
    for label, job in work.items():
        times = [best_of(args.repeat, lambda b=b: job(kernels.backend(b))) for b in names]
        row = f"{label:<18}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
