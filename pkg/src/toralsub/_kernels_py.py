"""Pure-Python hot kernels.

The compiled module ``_ckernels`` implements the same two functions with
identical semantics; ``kernels`` picks one at import time.
"""

from heapq import heapify, heappop, heappush


def unit_pivot_eliminate(rows, ncols):
    """Eliminate ±1 pivots of a sparse integer matrix.

    rows: sequence of {col: value} dicts.  Returns (pivots, row_log,
    col_log, residual) where pivots are (row, col, unit), row_log entries
    (dst, src, f) mean row[dst] += f*row[src], col_log entries mean
    col[dst] += f*col[src], and residual maps the surviving row indices
    to their remaining entries (all outside pivot columns).
    """
    R = {}
    cols = [set() for _ in range(ncols)]
    for i, r in enumerate(rows):
        d = {j: v for j, v in r.items() if v}
        if d:
            R[i] = d
            for j in d:
                cols[j].add(i)
    heap = [(len(c), j) for j, c in enumerate(cols) if c]
    heapify(heap)
    done = bytearray(ncols)
    pivots = []
    row_log = []
    col_log = []
    while heap:
        ln, q = heappop(heap)
        cq = cols[q]
        if done[q] or ln != len(cq):
            continue
        best = None
        for i in cq:
            v = R[i][q]
            if v == 1 or v == -1:
                L = len(R[i])
                if best is None or L < best[0]:
                    best = (L, i, v)
                    if L == 1:
                        break
        if best is None:
            continue
        _, p, u = best
        rp = R.pop(p)
        touched = set()
        for i in list(cq):
            if i == p:
                continue
            ri = R[i]
            f = -ri[q] * u
            row_log.append((i, p, f))
            for j, v in rp.items():
                nv = ri.get(j, 0) + f * v
                if nv:
                    if j not in ri:
                        cols[j].add(i)
                    ri[j] = nv
                else:
                    del ri[j]
                    cols[j].discard(i)
                touched.add(j)
            if not ri:
                del R[i]
        for j, v in rp.items():
            if j != q:
                col_log.append((j, q, -v * u))
                cols[j].discard(p)
                touched.add(j)
        cols[q] = set()
        done[q] = 1
        pivots.append((p, q, u))
        for j in touched:
            if not done[j] and cols[j]:
                heappush(heap, (len(cols[j]), j))
    return pivots, row_log, col_log, R


def search_sections(M, r, nW, act, mult, cocycle, tree_order, tree_parent,
                    tree_gen, gen_elems, LT, kS, cands):
    """Enumerate generator lifts that extend to a full subgroup.

    All vectors live in (Z/M)^r.  act[w] is the flattened r×r right-action
    matrix, cocycle[(u*nW+v)*r + a] the normalised factor set, LT the kS×r
    matrix whose kernel mod M is the subgroup S.  cands[i] lists candidate
    lifts for generator slot i.  Returns the index tuples (one index per
    slot) whose lifts satisfy every Schreier condition modulo S.
    """
    k = len(cands)
    out = []
    if k == 0:
        return out
    sizes = [len(c) for c in cands]
    if 0 in sizes:
        return out
    idx = [0] * k
    rr = range(r)
    sigma = [[0] * r for _ in range(nW)]

    def right(w, x):
        base = w * r * r
        return [sum(act[base + a * r + b] * x[b] for b in rr) for a in rr]

    while True:
        g = [cands[i][idx[i]] for i in range(k)]
        for u in tree_order:
            p = tree_parent[u]
            i = tree_gen[u]
            w = gen_elems[i]
            y = right(w, sigma[p])
            cb = (p * nW + w) * r
            gi = g[i]
            sigma[u] = [(y[a] + cocycle[cb + a] + gi[a]) % M for a in rr]
        ok = True
        for u in range(nW):
            su = sigma[u]
            for i in range(k):
                w = gen_elems[i]
                v = mult[u * nW + w]
                y = right(w, su)
                cb = (u * nW + w) * r
                gi = g[i]
                sv = sigma[v]
                x = [y[a] + cocycle[cb + a] + gi[a] - sv[a] for a in rr]
                for s in range(kS):
                    if sum(LT[s * r + a] * x[a] for a in rr) % M:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(idx))
        # odometer
        pos = k - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < sizes[pos]:
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            return out
