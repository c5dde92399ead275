# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for graphs of at most 64 vertices (single-word bitsets).

Each function mirrors its namesake in ``pure.py`` bit for bit: same
enumeration orders, same tie-breaking, same outputs.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    #define POPCOUNT(x) __builtin_popcountll(x)
    #define CTZ(x) __builtin_ctzll(x)
    """
    int POPCOUNT(uint64_t x) nogil
    int CTZ(uint64_t x) nogil

BACKEND = "cython"

cdef int _MAXN = 64


cdef void _load_adj(list adj, uint64_t* out, int n):
    cdef int v
    for v in range(n):
        out[v] = <uint64_t> adj[v]


def degeneracy_order(int n, list adj):
    cdef uint64_t a[64]
    cdef uint64_t remaining, m
    cdef int v, best, best_deg, d, step
    _load_adj(adj, a, n)
    remaining = (<uint64_t> 1 << n) - 1 if n < 64 else ~(<uint64_t> 0)
    order = []
    for step in range(n):
        best = -1
        best_deg = n + 1
        m = remaining
        while m:
            v = CTZ(m)
            m &= m - 1
            d = POPCOUNT(a[v] & remaining)
            if d < best_deg:
                best = v
                best_deg = d
        order.append(best)
        remaining &= ~(<uint64_t> 1 << best)
    return order


cdef void _bk_expand(uint64_t r, uint64_t p, uint64_t x, uint64_t* a,
                     int min_size, list out):
    cdef uint64_t px, m, cand, low
    cdef int u, v, pivot, best, c
    if p == 0 and x == 0:
        if POPCOUNT(r) >= min_size:
            out.append(r)
        return
    px = p | x
    pivot = -1
    best = -1
    m = px
    while m:
        u = CTZ(m)
        m &= m - 1
        c = POPCOUNT(p & a[u])
        if c > best:
            pivot = u
            best = c
    cand = p & ~a[pivot]
    while cand:
        v = CTZ(cand)
        low = cand & (~cand + 1)
        _bk_expand(r | low, p & a[v], x & a[v], a, min_size, out)
        p ^= low
        x |= low
        cand ^= low


def maximal_cliques(int n, list adj, int min_size=1):
    cdef uint64_t a[64]
    cdef uint64_t later
    cdef int idx, v, u
    cdef uint64_t m
    _load_adj(adj, a, n)
    out = []
    order = degeneracy_order(n, adj)
    cdef int pos[64]
    for idx in range(n):
        pos[<int> order[idx]] = idx
    for idx in range(n):
        v = <int> order[idx]
        later = 0
        m = a[v]
        while m:
            u = CTZ(m)
            m &= m - 1
            if pos[u] > pos[v]:
                later |= <uint64_t> 1 << u
        _bk_expand(<uint64_t> 1 << v, a[v] & later, a[v] & ~later,
                   a, min_size, out)
    return out


cdef int _max_clique(uint64_t cand, int size, int best, uint64_t* a):
    cdef uint64_t low
    cdef int v
    if size > best:
        best = size
    while cand:
        if size + POPCOUNT(cand) <= best:
            return best
        v = CTZ(cand)
        low = cand & (~cand + 1)
        best = _max_clique(cand & a[v], size + 1, best, a)
        cand ^= low
    return best


def max_clique_size(int n, list adj, object mask):
    cdef uint64_t a[64]
    _load_adj(adj, a, n)
    return _max_clique(<uint64_t> mask, 0, 0, a)


def clique_color_search(int n, list cliques, int t):
    """Least canonical valid assignment, exactly as in pure.py.

    Clique member lists (minus each clique's highest vertex) are flattened
    into one array, grouped by that highest vertex, so the DFS constraint
    check is a plain scan.
    """
    cdef int nc = len(cliques)
    cdef uint64_t cm, m
    cdef int ci, v, j, off, gi
    grouped = [[] for _ in range(n)]
    cdef int total = 0
    for ci in range(nc):
        cm = <uint64_t> cliques[ci]
        grouped[_highest_bit(cm)].append(cm)
        total += POPCOUNT(cm) - 1

    cdef int[65] head
    cdef int ngrp = 0
    flat_off = []
    flat_len = []
    flat_members = []
    for v in range(n):
        head[v] = ngrp
        for cm_obj in grouped[v]:
            cm = <uint64_t> cm_obj
            off = len(flat_members)
            m = cm & ~(<uint64_t> 1 << v)
            while m:
                j = CTZ(m)
                m &= m - 1
                flat_members.append(j)
            flat_off.append(off)
            flat_len.append(len(flat_members) - off)
            ngrp += 1
    head[n] = ngrp

    cdef int colors[64]
    cdef int* moff = <int*> malloc(sizeof(int) * (ngrp + 1))
    cdef int* mlen = <int*> malloc(sizeof(int) * (ngrp + 1))
    cdef int* mflat = <int*> malloc(sizeof(int) * (total + 1))
    if moff == NULL or mlen == NULL or mflat == NULL:
        free(moff); free(mlen); free(mflat)
        raise MemoryError()
    try:
        for gi in range(ngrp):
            moff[gi] = <int> flat_off[gi]
            mlen[gi] = <int> flat_len[gi]
        for j in range(len(flat_members)):
            mflat[j] = <int> flat_members[j]
        for v in range(n):
            colors[v] = 0
        if _cc_dfs(0, 0, n, t, colors, head, moff, mlen, mflat):
            return [colors[v] for v in range(n)]
        return None
    finally:
        free(moff); free(mlen); free(mflat)


cdef int _highest_bit(uint64_t x):
    cdef int c = 0
    while x > 1:
        x >>= 1
        c += 1
    return c


cdef bint _cc_dfs(int v, int used, int n, int t, int* colors, int* head,
                  int* moff, int* mlen, int* mflat):
    cdef int c, limit, gi, j, ok, mono
    if v == n:
        return True
    limit = used + 1 if used < t else t
    for c in range(1, limit + 1):
        ok = 1
        for gi in range(head[v], head[v + 1]):
            mono = 1
            for j in range(moff[gi], moff[gi] + mlen[gi]):
                if colors[mflat[j]] != c:
                    mono = 0
                    break
            if mono:
                ok = 0
                break
        if ok:
            colors[v] = c
            if _cc_dfs(v + 1, used if c <= used else c, n, t, colors, head,
                       moff, mlen, mflat):
                return True
    colors[v] = 0
    return False


cdef bint _proper_dfs(int idx, int used, int nv, int t, int* verts,
                      uint64_t* color_masks, uint64_t* a, int* result):
    cdef int v, c, limit
    cdef uint64_t vb
    if idx == nv:
        return True
    v = verts[idx]
    vb = <uint64_t> 1 << v
    limit = used + 1 if used < t else t
    for c in range(limit):
        if color_masks[c] & a[v]:
            continue
        color_masks[c] |= vb
        result[idx] = c + 1
        if _proper_dfs(idx + 1, used if c < used else c + 1, nv, t, verts,
                       color_masks, a, result):
            return True
        color_masks[c] ^= vb
    return False


def proper_color_search(int n, list adj, object mask, int t):
    cdef uint64_t a[64]
    cdef uint64_t mm = <uint64_t> mask
    cdef uint64_t cmasks[65]
    cdef int verts[64]
    cdef int result[64]
    cdef int nv = 0, c
    _load_adj(adj, a, n)
    while mm:
        verts[nv] = CTZ(mm)
        mm &= mm - 1
        nv += 1
    if t > 64:
        t = 64
    for c in range(t):
        cmasks[c] = 0
    if _proper_dfs(0, 0, nv, t, verts, cmasks, a, result):
        return [result[c] for c in range(nv)]
    return None


def odd_hole_search(int n, list adj, int min_len=5):
    cdef uint64_t a[64]
    cdef int s, j, v, ok, done
    cdef int idx[64]
    cdef uint64_t mask, reach, grow, m
    _load_adj(adj, a, n)
    s = min_len | 1
    while s <= n:
        # lexicographic combinations of range(n) choose s
        for j in range(s):
            idx[j] = j
        done = 0
        while not done:
            mask = 0
            for j in range(s):
                mask |= <uint64_t> 1 << idx[j]
            ok = 1
            for j in range(s):
                if POPCOUNT(a[idx[j]] & mask) != 2:
                    ok = 0
                    break
            if ok:
                reach = <uint64_t> 1 << idx[0]
                while True:
                    grow = reach
                    m = reach
                    while m:
                        v = CTZ(m)
                        m &= m - 1
                        grow |= a[v] & mask
                    if grow == reach:
                        break
                    reach = grow
                if reach == mask:
                    return mask
            # advance combination
            j = s - 1
            while j >= 0 and idx[j] == n - s + j:
                j -= 1
            if j < 0:
                done = 1
            else:
                idx[j] += 1
                for v in range(j + 1, s):
                    idx[v] = idx[v - 1] + 1
        s += 2
    return 0


def chi_omega_gap_search(int n, list adj):
    cdef uint64_t a[64]
    cdef uint64_t mask, full
    cdef uint64_t cmasks[65]
    cdef int verts[64]
    cdef int result[64]
    cdef int w, nv, c
    cdef uint64_t mm
    _load_adj(adj, a, n)
    full = (<uint64_t> 1 << n) - 1 if n < 64 else ~(<uint64_t> 0)
    mask = 1
    while mask <= full:
        # subsets below five vertices always satisfy chi == omega
        if POPCOUNT(mask) >= 5:
            w = _max_clique(mask, 0, 0, a)
            nv = 0
            mm = mask
            while mm:
                verts[nv] = CTZ(mm)
                mm &= mm - 1
                nv += 1
            for c in range(w):
                cmasks[c] = 0
            if not _proper_dfs(0, 0, nv, w, verts, cmasks, a, result):
                return mask
        mask += 1
    return 0


# ---------------------------------------------------------------------------
# bijection-property kernels
# ---------------------------------------------------------------------------

cdef int64_t _rank(int* elements, int cnt, int m, int k,
                   int64_t[:, :] binom):
    cdef int64_t r = 0
    cdef int prev = -1, j, e
    for j in range(cnt):
        e = elements[j]
        r += binom[m - prev - 1, k - j] - binom[m - e, k - j]
        prev = e
    return r


def subset_rank(object elements, int m, int k, int64_t[:, :] binom):
    cdef int buf[64]
    cdef int cnt = len(elements), j
    for j in range(cnt):
        buf[j] = <int> elements[j]
    return _rank(buf, cnt, m, k, binom)


def check_property1(int m, int k, int i, signed char[:] part_of_rank,
                    int64_t[:, :] binom, int64_t[:, :] a_rows):
    cdef Py_ssize_t nrows = a_rows.shape[0]
    cdef int width = <int> a_rows.shape[1]
    cdef int idx[64]
    cdef int sub[64]
    cdef int row_elems[64]
    cdef uint64_t seen, fullmask
    cdef Py_ssize_t ri
    cdef int j, v, done
    cdef int64_t r
    failures = []
    fullmask = (<uint64_t> 1 << i) - 1
    for ri in range(nrows):
        for j in range(width):
            row_elems[j] = <int> a_rows[ri, j]
        seen = 0
        for j in range(k):
            idx[j] = j
        done = 0
        while not done:
            for j in range(k):
                sub[j] = row_elems[idx[j]]
            r = _rank(sub, k, m, k, binom)
            seen |= <uint64_t> 1 << part_of_rank[r]
            if seen == fullmask:
                break
            j = k - 1
            while j >= 0 and idx[j] == width - k + j:
                j -= 1
            if j < 0:
                done = 1
            else:
                idx[j] += 1
                for v in range(j + 1, k):
                    idx[v] = idx[v - 1] + 1
        if seen != fullmask:
            for j in range(i):
                if not (seen >> j) & 1:
                    failures.append((ri, j))
    return failures


def check_property2(int m, int k, int i, signed char[:] part_of_rank,
                    int64_t[:, :] binom, int64_t[:, :] b_rows, int threshold):
    cdef Py_ssize_t nrows = b_rows.shape[0]
    cdef int b = <int> b_rows.shape[1]
    cdef int extra_n = k - b
    cdef int rest[64]
    cdef int idx[64]
    cdef int merged[64]
    cdef int brow[64]
    cdef int64_t counts[64]
    cdef Py_ssize_t ri
    cdef int nrest, j, v, e, done, lacking, pa, pb
    cdef int64_t r
    cdef bint inb
    failures = []
    for ri in range(nrows):
        for j in range(b):
            brow[j] = <int> b_rows[ri, j]
        nrest = 0
        for e in range(m):
            inb = False
            for j in range(b):
                if brow[j] == e:
                    inb = True
                    break
            if not inb:
                rest[nrest] = e
                nrest += 1
        for j in range(i):
            counts[j] = 0
        lacking = i
        for j in range(extra_n):
            idx[j] = j
        done = 0
        while not done:
            # merge brow (sorted) with chosen rest elements (sorted)
            pa = 0
            pb = 0
            for j in range(k):
                if pa < b and (pb >= extra_n
                               or brow[pa] < rest[idx[pb]]):
                    merged[j] = brow[pa]
                    pa += 1
                else:
                    merged[j] = rest[idx[pb]]
                    pb += 1
            r = _rank(merged, k, m, k, binom)
            v = part_of_rank[r]
            counts[v] += 1
            if counts[v] == threshold:
                lacking -= 1
                if lacking == 0:
                    break
            j = extra_n - 1
            while j >= 0 and idx[j] == nrest - extra_n + j:
                j -= 1
            if j < 0:
                done = 1
            else:
                idx[j] += 1
                for v in range(j + 1, extra_n):
                    idx[v] = idx[v - 1] + 1
        if lacking:
            for j in range(i):
                if counts[j] < threshold:
                    failures.append((ri, j))
    return failures
