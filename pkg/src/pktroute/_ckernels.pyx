# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures, same results."""
import numpy as np
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef int64_t INF = 0x7FFFFFFFFFFFFFFF


cdef inline bint _before(int64_t la, int64_t va, int64_t lb, int64_t vb) noexcept nogil:
    return la > lb or (la == lb and va < vb)


cdef void _sift_up(int64_t* hk, int64_t* hv, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t p
    cdef int64_t k = hk[i], v = hv[i]
    while i > 0:
        p = (i - 1) >> 1
        if _before(k, v, hk[p], hv[p]):
            hk[i] = hk[p]
            hv[i] = hv[p]
            i = p
        else:
            break
    hk[i] = k
    hv[i] = v


cdef void _sift_down(int64_t* hk, int64_t* hv, Py_ssize_t size) noexcept nogil:
    cdef Py_ssize_t i = 0, c
    cdef int64_t k = hk[0], v = hv[0]
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and _before(hk[c + 1], hv[c + 1], hk[c], hv[c]):
            c += 1
        if _before(hk[c], hv[c], k, v):
            hk[i] = hk[c]
            hv[i] = hv[c]
            i = c
        else:
            break
    hk[i] = k
    hv[i] = v


def widest_path(Py_ssize_t n, offsets, targets, caps, sources):
    cdef int64_t[::1] off = np.asarray(offsets, dtype=np.int64)
    cdef int64_t[::1] tgt = np.asarray(targets, dtype=np.int64)
    cdef int64_t[::1] cap = np.asarray(caps, dtype=np.int64)
    cdef int64_t[::1] src = np.asarray(list(sources), dtype=np.int64)
    label_a = np.full(n + 1, -1, dtype=np.int64)
    pred_a = np.zeros(n + 1, dtype=np.int64)
    pos_a = np.full(n + 1, -1, dtype=np.int64)
    cdef int64_t[::1] label = label_a
    cdef int64_t[::1] pred = pred_a
    cdef int64_t[::1] pos = pos_a
    cdef Py_ssize_t cap_heap = tgt.shape[0] + src.shape[0] + 1
    cdef int64_t* hk = <int64_t*> malloc(cap_heap * sizeof(int64_t))
    cdef int64_t* hv = <int64_t*> malloc(cap_heap * sizeof(int64_t))
    if hk == NULL or hv == NULL:
        free(hk)
        free(hv)
        raise MemoryError()
    cdef Py_ssize_t size = 0, i, p
    cdef int64_t v, w, lv, c, nl
    try:
        with nogil:
            for i in range(src.shape[0]):
                v = src[i]
                if label[v] != INF:
                    label[v] = INF
                    hk[size] = INF
                    hv[size] = v
                    _sift_up(hk, hv, size)
                    size += 1
            while size > 0:
                lv = hk[0]
                v = hv[0]
                size -= 1
                if size > 0:
                    hk[0] = hk[size]
                    hv[0] = hv[size]
                    _sift_down(hk, hv, size)
                if lv != label[v]:
                    continue
                for p in range(off[v], off[v + 1]):
                    w = tgt[p]
                    if w == v:
                        continue
                    c = cap[p]
                    nl = lv if lv < c else c
                    if nl > label[w]:
                        label[w] = nl
                        pred[w] = v
                        pos[w] = p
                        hk[size] = nl
                        hv[size] = w
                        _sift_up(hk, hv, size)
                        size += 1
    finally:
        free(hk)
        free(hv)
    return label_a.tolist(), pred_a.tolist(), pos_a.tolist()


def kruskal_forest(Py_ssize_t n, us, vs, caps):
    cdef int64_t[::1] eu = np.asarray(us, dtype=np.int64)
    cdef int64_t[::1] ev = np.asarray(vs, dtype=np.int64)
    cdef int64_t[::1] ec = np.asarray(caps, dtype=np.int64)
    parent_a = np.zeros(n + 1, dtype=np.int64)
    pcap_a = np.zeros(n + 1, dtype=np.int64)
    height_a = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] parent = parent_a
    cdef int64_t[::1] pcap = pcap_a
    cdef int64_t[::1] height = height_a
    cdef Py_ssize_t i
    cdef int64_t ru, rv
    with nogil:
        for i in range(eu.shape[0]):
            ru = eu[i]
            while parent[ru]:
                ru = parent[ru]
            rv = ev[i]
            while parent[rv]:
                rv = parent[rv]
            if ru == rv:
                continue
            if height[ru] < height[rv]:
                parent[ru] = rv
                pcap[ru] = ec[i]
                if height[ru] + 1 > height[rv]:
                    height[rv] = height[ru] + 1
            else:
                parent[rv] = ru
                pcap[rv] = ec[i]
                if height[rv] + 1 > height[ru]:
                    height[ru] = height[rv] + 1
    return parent_a.tolist(), pcap_a.tolist(), height_a.tolist()


def levelwise_batch(parent_l, parent_cap_l, level_l, us, vs):
    cdef int64_t[::1] parent = np.asarray(parent_l, dtype=np.int64)
    cdef int64_t[::1] pcap = np.asarray(parent_cap_l, dtype=np.int64)
    cdef int64_t[::1] level = np.asarray(level_l, dtype=np.int64)
    cdef int64_t[::1] qu = np.asarray(us, dtype=np.int64)
    cdef int64_t[::1] qv = np.asarray(vs, dtype=np.int64)
    out_a = np.empty(qu.shape[0], dtype=np.int64)
    cdef int64_t[::1] out = out_a
    cdef Py_ssize_t i
    cdef int64_t pu, pv, best
    with nogil:
        for i in range(qu.shape[0]):
            pu = qu[i]
            pv = qv[i]
            best = INF
            while pu != pv:
                if level[pu] > level[pv]:
                    if pcap[pu] < best:
                        best = pcap[pu]
                    pu = parent[pu]
                else:
                    if pcap[pv] < best:
                        best = pcap[pv]
                    pv = parent[pv]
            out[i] = best
    return out_a.tolist()


cdef inline int64_t _find(int64_t* parent, int64_t x, bint compress) noexcept nogil:
    cdef int64_t root = x, nxt
    while parent[root] != root:
        root = parent[root]
    if compress:
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
    return root


cdef inline int64_t _cc(int code, int64_t a, int64_t b) noexcept nogil:
    if code == 0:
        return a + b
    if code == 1:
        return a if a > b else b
    if code == 2:
        return a if a < b else b
    return a ^ b


cdef inline int64_t _g(int code, int64_t a, int64_t b) noexcept nogil:
    if code == 0:
        return a + b
    return a ^ b


cdef inline int64_t _ginv(int code, int64_t a, int64_t b) noexcept nogil:
    if code == 0:
        return a - b
    return a ^ b


cdef int64_t _link(int64_t* parent, int64_t* rank, int64_t* wcc, int64_t wg,
                   int64_t x, int64_t y, int cc, int g, bint compress) noexcept nogil:
    cdef int64_t rx = _find(parent, x, compress)
    cdef int64_t ry = _find(parent, y, compress)
    cdef int64_t tmp, merged
    if rx == ry:
        return wg
    if rank[rx] > rank[ry]:
        tmp = rx
        rx = ry
        ry = tmp
    elif rank[rx] == rank[ry]:
        rank[ry] += 1
    merged = _cc(cc, wcc[ry], wcc[rx])
    wg = _g(g, _ginv(g, _ginv(g, wg, wcc[rx]), wcc[ry]), merged)
    parent[rx] = ry
    wcc[ry] = merged
    return wg


def replay(parent_l, rank_l, wcc_l, wg_in, kinds_l, a_l, b_l, vstart_l, vend_l, veu_l, vev_l,
           weights_l, int cc_code, int g_code, bint compress):
    parent_a = np.asarray(parent_l, dtype=np.int64).copy()
    rank_a = np.asarray(rank_l, dtype=np.int64).copy()
    wcc_a = np.asarray(wcc_l, dtype=np.int64).copy()
    cdef int64_t[::1] parent = parent_a
    cdef int64_t[::1] rank = rank_a
    cdef int64_t[::1] wcc = wcc_a
    cdef int64_t[::1] kinds = np.asarray(kinds_l, dtype=np.int64)
    cdef int64_t[::1] a = np.asarray(a_l, dtype=np.int64)
    cdef int64_t[::1] b = np.asarray(b_l, dtype=np.int64)
    cdef int64_t[::1] vstart = np.asarray(vstart_l, dtype=np.int64)
    cdef int64_t[::1] vend = np.asarray(vend_l, dtype=np.int64)
    cdef int64_t[::1] veu = np.asarray(veu_l, dtype=np.int64) if len(veu_l) else np.zeros(1, dtype=np.int64)
    cdef int64_t[::1] vev = np.asarray(vev_l, dtype=np.int64) if len(vev_l) else np.zeros(1, dtype=np.int64)
    cdef int64_t[::1] weights = np.asarray(weights_l, dtype=np.int64)
    cdef Py_ssize_t nops = kinds.shape[0]
    ans_a = np.zeros(nops, dtype=np.int64)
    cdef int64_t[::1] ans = ans_a
    cdef int64_t wg = wg_in
    cdef Py_ssize_t i, j
    cdef int64_t k, x
    cdef int64_t* pp = &parent[0]
    cdef int64_t* rp = &rank[0]
    cdef int64_t* wp = &wcc[0]
    with nogil:
        for i in range(nops - 1, -1, -1):
            k = kinds[i]
            if k == 0:
                wg = _link(pp, rp, wp, wg, a[i], b[i], cc_code, g_code, compress)
            elif k == 2:
                ans[i] = wcc[_find(pp, a[i], compress)]
            elif k == 3:
                ans[i] = wg
            else:
                x = a[i]
                parent[x] = x
                rank[x] = 0
                wcc[x] = weights[x]
                wg = _g(g_code, wg, weights[x])
                j = vend[i] - 1
                while j >= vstart[i]:
                    wg = _link(pp, rp, wp, wg, veu[j], vev[j], cc_code, g_code, compress)
                    j -= 1
    out = ans_a.tolist()
    for i in range(nops):
        if kinds[i] < 2:
            out[i] = None
    parent_l[:] = parent_a.tolist()
    rank_l[:] = rank_a.tolist()
    wcc_l[:] = wcc_a.tolist()
    return out, wg
