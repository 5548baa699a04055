# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twins of the kernels in _kernels_py."""

from heapq import heapify, heappop, heappush
from libc.stdlib cimport malloc, free


def unit_pivot_eliminate(rows, Py_ssize_t ncols):
    cdef dict R = {}
    cdef list cols = [set() for _ in range(ncols)]
    cdef Py_ssize_t i, j, q, p, L, ln
    cdef dict d, ri, rp
    cdef set cq, touched
    for i, r in enumerate(rows):
        d = {j: v for j, v in r.items() if v}
        if d:
            R[i] = d
            for j in d:
                (<set>cols[j]).add(i)
    cdef list heap = [(len(c), j) for j, c in enumerate(cols) if c]
    heapify(heap)
    cdef bytearray done = bytearray(ncols)
    cdef list pivots = [], row_log = [], col_log = []
    cdef object u, v, f, nv, best
    while heap:
        ln, q = heappop(heap)
        cq = <set>cols[q]
        if done[q] or ln != len(cq):
            continue
        best = None
        for i in cq:
            v = (<dict>R[i])[q]
            if v == 1 or v == -1:
                L = len(<dict>R[i])
                if best is None or L < best[0]:
                    best = (L, i, v)
                    if L == 1:
                        break
        if best is None:
            continue
        p = best[1]
        u = best[2]
        rp = R.pop(p)
        touched = set()
        for i in list(cq):
            if i == p:
                continue
            ri = <dict>R[i]
            f = -ri[q] * u
            row_log.append((i, p, f))
            for j, v in rp.items():
                nv = ri.get(j, 0) + f * v
                if nv:
                    if j not in ri:
                        (<set>cols[j]).add(i)
                    ri[j] = nv
                else:
                    del ri[j]
                    (<set>cols[j]).discard(i)
                touched.add(j)
            if not ri:
                del R[i]
        for j, v in rp.items():
            if j != q:
                col_log.append((j, q, -v * u))
                (<set>cols[j]).discard(p)
                touched.add(j)
        cols[q] = set()
        done[q] = 1
        pivots.append((p, q, u))
        for j in touched:
            if not done[j] and cols[j]:
                heappush(heap, (len(<set>cols[j]), j))
    return pivots, row_log, col_log, R


cdef inline long long _mod(long long a, long long m) nogil:
    cdef long long x = a % m
    if x < 0:
        x += m
    return x


def search_sections(long long M, int r, int nW, act, mult, cocycle, tree_order,
                    tree_parent, tree_gen, gen_elems, LT, int kS, cands):
    cdef int k = len(cands)
    cdef list out = []
    if k == 0:
        return out
    cdef int i, a, b, s, u, p, w, v, pos, t, nt = len(tree_order)
    cdef bint ok
    cdef long long acc
    cdef int total = 0
    for i in range(k):
        if len(cands[i]) == 0:
            return out
        total += len(cands[i])
    cdef long long *A = <long long *> malloc(nW * r * r * sizeof(long long))
    cdef int *MT = <int *> malloc(nW * nW * sizeof(int))
    cdef long long *C = <long long *> malloc(nW * nW * r * sizeof(long long))
    cdef int *TO = <int *> malloc((nt + 1) * sizeof(int))
    cdef int *TP = <int *> malloc(nW * sizeof(int))
    cdef int *TG = <int *> malloc(nW * sizeof(int))
    cdef int *GE = <int *> malloc(k * sizeof(int))
    cdef long long *LTm = <long long *> malloc((kS * r + 1) * sizeof(long long))
    cdef long long *CA = <long long *> malloc(total * r * sizeof(long long))
    cdef int *off = <int *> malloc(k * sizeof(int))
    cdef int *sz = <int *> malloc(k * sizeof(int))
    cdef int *idx = <int *> malloc(k * sizeof(int))
    cdef long long *sig = <long long *> malloc(nW * r * sizeof(long long))
    cdef long long *y = <long long *> malloc(r * sizeof(long long))
    cdef long long *x = <long long *> malloc(r * sizeof(long long))
    cdef long long *g
    try:
        for a in range(nW * r * r):
            A[a] = act[a]
        for a in range(nW * nW):
            MT[a] = mult[a]
        for a in range(nW * nW * r):
            C[a] = cocycle[a]
        for a in range(nt):
            TO[a] = tree_order[a]
        for a in range(nW):
            TP[a] = tree_parent[a] if tree_parent[a] is not None else 0
            TG[a] = tree_gen[a] if tree_gen[a] is not None else 0
        for a in range(k):
            GE[a] = gen_elems[a]
        for a in range(kS * r):
            LTm[a] = LT[a]
        t = 0
        for i in range(k):
            off[i] = t
            sz[i] = len(cands[i])
            idx[i] = 0
            for vec in cands[i]:
                for a in range(r):
                    CA[t * r + a] = vec[a]
                t += 1
        for a in range(nW * r):
            sig[a] = 0
        while True:
            for t in range(nt):
                u = TO[t]
                p = TP[u]
                i = TG[u]
                w = GE[i]
                g = CA + (off[i] + idx[i]) * r
                for a in range(r):
                    acc = C[(p * nW + w) * r + a] + g[a]
                    for b in range(r):
                        acc += A[(w * r + a) * r + b] * sig[p * r + b]
                    sig[u * r + a] = _mod(acc, M)
            ok = True
            for u in range(nW):
                for i in range(k):
                    w = GE[i]
                    v = MT[u * nW + w]
                    g = CA + (off[i] + idx[i]) * r
                    for a in range(r):
                        acc = C[(u * nW + w) * r + a] + g[a] - sig[v * r + a]
                        for b in range(r):
                            acc += A[(w * r + a) * r + b] * sig[u * r + b]
                        x[a] = acc
                    for s in range(kS):
                        acc = 0
                        for a in range(r):
                            acc += LTm[s * r + a] * x[a]
                        if _mod(acc, M) != 0:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                out.append(tuple([idx[i] for i in range(k)]))
            pos = k - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < sz[pos]:
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                break
    finally:
        free(A); free(MT); free(C); free(TO); free(TP); free(TG); free(GE)
        free(LTm); free(CA); free(off); free(sz); free(idx); free(sig)
        free(y); free(x)
    return out
