"""Pure-Python kernels.

Graphs enter as adjacency bitmasks (one Python int per vertex) so the same
algorithms run unchanged for any vertex count. The compiled module in
``_core.pyx`` mirrors every function here for graphs of at most 64 vertices;
outputs must be identical between the two implementations.
"""

from __future__ import annotations

from itertools import combinations

BACKEND = "python"


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def degeneracy_order(n: int, adj) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (ties: smallest index)."""
    remaining = (1 << n) - 1
    order = []
    for _ in range(n):
        best, best_deg = -1, n + 1
        m = remaining
        while m:
            low = m & -m
            v = low.bit_length() - 1
            d = (adj[v] & remaining).bit_count()
            if d < best_deg:
                best, best_deg = v, d
            m ^= low
        order.append(best)
        remaining &= ~(1 << best)
    return order


def maximal_cliques(n: int, adj, min_size: int = 1) -> list[int]:
    """All maximal cliques as bitmasks, via pivoting Bron-Kerbosch.

    The outer loop follows the degeneracy order; the order of the returned
    list is unspecified (callers sort).
    """
    out = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            if r.bit_count() >= min_size:
                out.append(r)
            return
        # pivot from p|x maximizing |p & adj[u]|
        px = p | x
        pivot, best = -1, -1
        m = px
        while m:
            low = m & -m
            u = low.bit_length() - 1
            c = (p & adj[u]).bit_count()
            if c > best:
                pivot, best = u, c
            m ^= low
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & adj[v], x & adj[v])
            p ^= low
            x |= low
            cand ^= low

    order = degeneracy_order(n, adj)
    pos = [0] * n
    for idx, v in enumerate(order):
        pos[v] = idx
    for v in order:
        later = 0
        for u in bits_of(adj[v]):
            if pos[u] > pos[v]:
                later |= 1 << u
        expand(1 << v, adj[v] & later, adj[v] & ~later)
    return out


def max_clique_size(n: int, adj, mask: int) -> int:
    """Clique number of the subgraph induced on `mask`."""
    best = 0

    def extend(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            extend(size + 1, cand & adj[v])
            cand ^= low

    extend(0, mask)
    return best


def clique_color_search(n: int, cliques, t: int):
    """Least canonical assignment of <= t colors with no clique monochromatic.

    `cliques` are bitmasks (each of size >= 2). Vertices are colored in index
    order, each new color introduced only after all smaller ones, so the
    first assignment found is the lexicographically least valid coloring.
    Returns a list of 1-based colors, or None.
    """
    by_last: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for cm in cliques:
        members = tuple(bits_of(cm))
        by_last[members[-1]].append(members)
    colors = [0] * n

    def dfs(v: int, used: int) -> bool:
        if v == n:
            return True
        limit = used + 1 if used < t else t
        for c in range(1, limit + 1):
            ok = True
            for members in by_last[v]:
                mono = True
                for u in members[:-1]:
                    if colors[u] != c:
                        mono = False
                        break
                if mono:
                    ok = False
                    break
            if ok:
                colors[v] = c
                if dfs(v + 1, used if c <= used else c):
                    return True
        colors[v] = 0
        return False

    return list(colors) if dfs(0, 0) else None


def proper_color_search(n: int, adj, mask: int, t: int):
    """Least canonical proper coloring of the subgraph on `mask` using <= t colors.

    Returns 1-based colors aligned with the ascending vertices of `mask`,
    or None if no proper t-coloring exists.
    """
    verts = bits_of(mask)
    color_masks = [0] * t
    result = [0] * len(verts)

    def dfs(idx: int, used: int) -> bool:
        if idx == len(verts):
            return True
        v = verts[idx]
        vb = 1 << v
        limit = used + 1 if used < t else t
        for c in range(limit):
            if color_masks[c] & adj[v]:
                continue
            color_masks[c] |= vb
            result[idx] = c + 1
            if dfs(idx + 1, used if c < used else c + 1):
                return True
            color_masks[c] ^= vb
        return False

    return list(result) if dfs(0, 0) else None


def odd_hole_search(n: int, adj, min_len: int = 5) -> int:
    """First induced odd cycle of length >= min_len, as a bitmask (0 if none).

    Scans vertex subsets by increasing odd size, lexicographically within a
    size; a subset qualifies when every member has exactly two neighbors in
    it and the induced graph is connected.
    """
    for s in range(min_len | 1, n + 1, 2):
        for combo in combinations(range(n), s):
            mask = 0
            for v in combo:
                mask |= 1 << v
            ok = True
            for v in combo:
                if (adj[v] & mask).bit_count() != 2:
                    ok = False
                    break
            if not ok:
                continue
            # connectivity: a 2-regular induced graph is a single cycle
            # iff connected
            start = 1 << combo[0]
            reach = start
            while True:
                grow = reach
                m = reach
                while m:
                    low = m & -m
                    grow |= adj[low.bit_length() - 1] & mask
                    m ^= low
                if grow == reach:
                    break
                reach = grow
            if reach == mask:
                return mask
    return 0


def chi_omega_gap_search(n: int, adj) -> int:
    """First induced subgraph (by ascending bitmask) with chi > omega; 0 if none.

    Subsets of fewer than five vertices are skipped: an induced odd cycle
    needs five vertices, and every graph on <= 4 vertices has chi = omega
    (exhaustively checked in the test suite).
    """
    for mask in range(1, 1 << n):
        if mask.bit_count() < 5:
            continue
        w = max_clique_size(n, adj, mask)
        if proper_color_search(n, adj, mask, w) is None:
            return mask
    return 0


# ---------------------------------------------------------------------------
# bijection-property kernels
# ---------------------------------------------------------------------------

def subset_rank(elements, m: int, k: int, binom) -> int:
    """Rank of a sorted k-subset of range(m) in lexicographic order."""
    r = 0
    prev = -1
    for j, e in enumerate(elements):
        r += int(binom[m - prev - 1][k - j]) - int(binom[m - e][k - j])
        prev = e
    return r


def check_property1(m: int, k: int, i: int, part_of_rank, binom, a_rows):
    """For each 2k-set row, which parts have no image inside it.

    Returns (row_index, part) failure pairs; a row passes when every part
    contributes at least one k-subset of the row.
    """
    failures = []
    full = (1 << i) - 1
    for idx, row in enumerate(a_rows):
        seen = 0
        for sub in combinations(row, k):
            r = subset_rank(sub, m, k, binom)
            seen |= 1 << int(part_of_rank[r])
            if seen == full:
                break
        if seen != full:
            for j in range(i):
                if not (seen >> j) & 1:
                    failures.append((idx, j))
    return failures


def check_property2(m: int, k: int, i: int, part_of_rank, binom, b_rows,
                    threshold: int):
    """For each small set row, which parts contain fewer than `threshold`
    supersets of it.

    Enumerates the k-supersets of each row lazily and stops as soon as every
    part has reached the threshold.
    """
    failures = []
    for idx, brow in enumerate(b_rows):
        bset = set(brow)
        rest = [e for e in range(m) if e not in bset]
        counts = [0] * i
        lacking = i
        for extra in combinations(rest, k - len(brow)):
            merged = sorted(tuple(brow) + extra)
            r = subset_rank(merged, m, k, binom)
            j = int(part_of_rank[r])
            counts[j] += 1
            if counts[j] == threshold:
                lacking -= 1
                if lacking == 0:
                    break
        if lacking:
            for j in range(i):
                if counts[j] < threshold:
                    failures.append((idx, j))
    return failures
