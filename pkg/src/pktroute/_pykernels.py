"""Pure-Python reference kernels.

Every function here has a twin with the same signature and results in
``_ckernels.pyx``.  Arrays are plain lists indexed by 1-based vertex id;
slot 0 is unused (or the super-root for the index forest).
"""
from heapq import heappop, heappush

INF = (1 << 63) - 1

CC_SUM, CC_MAX, CC_MIN, CC_XOR = 0, 1, 2, 3
OP_DELETE, OP_DELETEVERTEX, OP_QCOMP, OP_QGRAPH = 0, 1, 2, 3


def widest_path(n, offsets, targets, caps, sources):
    """Bottleneck Dijkstra over a CSR adjacency.

    Returns ``(label, pred, pred_pos)``: ``label[v] == -1`` marks an unreached
    vertex, sources carry INF, and ``pred_pos[v]`` is the CSR slot of the arc
    that last improved ``v`` (-1 if none).  Only strict improvements rewrite a
    parent.
    """
    label = [-1] * (n + 1)
    pred = [0] * (n + 1)
    pred_pos = [-1] * (n + 1)
    heap = []
    for s in sources:
        if label[s] != INF:
            label[s] = INF
            heappush(heap, (-INF, s))
    while heap:
        neg, v = heappop(heap)
        lv = -neg
        if lv != label[v]:
            continue
        for p in range(offsets[v], offsets[v + 1]):
            w = targets[p]
            if w == v:
                continue
            c = caps[p]
            nl = lv if lv < c else c
            if nl > label[w]:
                label[w] = nl
                pred[w] = v
                pred_pos[w] = p
                heappush(heap, (-nl, w))
    return label, pred, pred_pos


def kruskal_forest(n, us, vs, caps):
    """Union by height without path compression over pre-sorted edges.

    Returns ``(parent, parent_cap, height)``; component roots keep parent 0.
    On equal heights the root of ``v`` goes under the root of ``u``.
    """
    parent = [0] * (n + 1)
    parent_cap = [0] * (n + 1)
    height = [0] * (n + 1)
    for i in range(len(us)):
        ru = us[i]
        while parent[ru]:
            ru = parent[ru]
        rv = vs[i]
        while parent[rv]:
            rv = parent[rv]
        if ru == rv:
            continue
        if height[ru] < height[rv]:
            parent[ru] = rv
            parent_cap[ru] = caps[i]
            if height[ru] + 1 > height[rv]:
                height[rv] = height[ru] + 1
        else:
            parent[rv] = ru
            parent_cap[rv] = caps[i]
            if height[rv] + 1 > height[ru]:
                height[ru] = height[rv] + 1
    return parent, parent_cap, height


def levelwise_batch(parent, parent_cap, level, us, vs):
    out = []
    for i in range(len(us)):
        pu = us[i]
        pv = vs[i]
        if pu == pv:
            out.append(INF)
            continue
        best = INF
        while pu != pv:
            if level[pu] > level[pv]:
                if parent_cap[pu] < best:
                    best = parent_cap[pu]
                pu = parent[pu]
            else:
                if parent_cap[pv] < best:
                    best = parent_cap[pv]
                pv = parent[pv]
        out.append(best)
    return out


def _cc_func(code):
    if code == CC_SUM:
        return lambda a, b: a + b
    if code == CC_MAX:
        return max
    if code == CC_MIN:
        return min
    if code == CC_XOR:
        return lambda a, b: a ^ b
    raise ValueError(f"unknown aggregate code {code}")


def _g_funcs(code):
    if code == CC_SUM:
        return (lambda a, b: a + b), (lambda a, b: a - b)
    if code == CC_XOR:
        return (lambda a, b: a ^ b), (lambda a, b: a ^ b)
    raise ValueError(f"aggregate code {code} has no inverse")


def replay(parent, rank, wcc, wg, kinds, a, b, vstart, vend, veu, vev, weights,
           cc_code, g_code, compress):
    ginv = _g_funcs(g_code)
    return replay_generic(parent, rank, wcc, wg, kinds, a, b, vstart, vend, veu, vev, weights,
                          _cc_func(cc_code), ginv[0], ginv[1], compress)


def replay_generic(parent, rank, wcc, wg, kinds, a, b, vstart, vend, veu, vev, weights,
                   ccagg, gagg, ginv, compress):
    """Backward pass of the offline deletion replay.

    ``parent``/``rank``/``wcc``/``wg`` describe the union-find forest of the
    graph left after every deletion; they are mutated in place.  For a
    vertex deletion at position i, ``veu[vstart[i]:vend[i]]`` / ``vev[...]``
    list the incident edges it removed, in removal order.  Returns one entry
    per operation (``None`` for non-queries).
    """
    answers = [None] * len(kinds)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        if compress:
            while parent[x] != root:
                parent[x], x = root, parent[x]
        return root

    def link(x, y):
        nonlocal wg
        rx = find(x)
        ry = find(y)
        if rx == ry:
            return
        if rank[rx] > rank[ry]:
            rx, ry = ry, rx
        elif rank[rx] == rank[ry]:
            rank[ry] += 1
        # rx goes under ry; both old component weights leave wg, the merged one enters
        merged = ccagg(wcc[ry], wcc[rx])
        wg = gagg(ginv(ginv(wg, wcc[rx]), wcc[ry]), merged)
        parent[rx] = ry
        wcc[ry] = merged

    for i in range(len(kinds) - 1, -1, -1):
        k = kinds[i]
        if k == OP_DELETE:
            link(a[i], b[i])
        elif k == OP_QCOMP:
            answers[i] = wcc[find(a[i])]
        elif k == OP_QGRAPH:
            answers[i] = wg
        else:
            x = a[i]
            parent[x] = x
            rank[x] = 0
            wcc[x] = weights[x]
            wg = gagg(wg, weights[x])
            for j in range(vend[i] - 1, vstart[i] - 1, -1):
                link(veu[j], vev[j])
    return answers, wg
