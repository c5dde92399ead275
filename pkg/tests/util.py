"""Shared test helpers: seeded graph generators and independent oracles.

The oracles deliberately avoid the library's kernels: maximal cliques come
from a subset-lattice sweep, colorings from unpruned exhaustive search.
"""

from __future__ import annotations

import random
from itertools import product

from cliquecolor.graph import Graph


def labels(n):
    return [f"v{j}" for j in range(1, n + 1)]


def random_graph(n: int, p: float, rnd: random.Random) -> Graph:
    labs = labels(n)
    edges = [(labs[a], labs[b]) for a in range(n) for b in range(a + 1, n)
             if rnd.random() < p]
    return Graph(labs, edges)


def random_triangle_free(n: int, rnd: random.Random) -> Graph:
    """Add edges in random order, skipping any that closes a triangle."""
    labs = labels(n)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rnd.shuffle(pairs)
    adj = [set() for _ in range(n)]
    edges = []
    for a, b in pairs:
        if rnd.random() < 0.75 and not (adj[a] & adj[b]):
            adj[a].add(b)
            adj[b].add(a)
            edges.append((labs[a], labs[b]))
    return Graph(labs, edges)


def random_with_dominating(n: int, p: float, rnd: random.Random) -> Graph:
    """Random graph with vertex v1 forced adjacent to everything."""
    g = random_graph(n, p, rnd)
    labs = list(g.labels)
    edges = set(g.edges())
    for lab in labs[1:]:
        edges.add(tuple(sorted((labs[0], lab))))
    return Graph(labs, sorted(edges))


def complete_graph(n: int) -> Graph:
    labs = labels(n)
    return Graph(labs, [(labs[a], labs[b]) for a in range(n)
                        for b in range(a + 1, n)])


def cycle_graph(n: int) -> Graph:
    labs = labels(n)
    return Graph(labs, [(labs[a], labs[(a + 1) % n]) for a in range(n)])


def oracle_maximal_cliques(g: Graph, min_size: int = 1):
    """All maximal cliques by dynamic programming over the subset lattice.

    clique[S] holds iff S is a clique; common[S] is the set of vertices
    adjacent to all of S. S is maximal exactly when it is a clique and
    common[S] is empty.
    """
    n = g.n
    adj = g.adjacency
    full = 1 << n
    clique = [False] * full
    common = [0] * full
    out = []
    for mask in range(1, full):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if rest == 0:
            clique[mask] = True
            common[mask] = adj[v]
        else:
            clique[mask] = clique[rest] and (adj[v] & rest) == rest
            common[mask] = common[rest] & adj[v]
        if clique[mask] and common[mask] == 0 and mask.bit_count() >= min_size:
            out.append(tuple(g.labels[u]
                             for u in range(n) if (mask >> u) & 1))
    return sorted(out, key=lambda c: tuple(g.index(x) for x in c))


def oracle_clique_chromatic(g: Graph, max_colors: int = 6):
    """Unpruned exhaustive clique-coloring search over all t^n assignments."""
    member_sets = [tuple(g.index(x) for x in c)
                   for c in oracle_maximal_cliques(g, 2)]
    n = g.n
    for t in range(1, max_colors + 1):
        for assignment in product(range(1, t + 1), repeat=n):
            if set(assignment) != set(range(1, t + 1)):
                continue  # exactly t colors; smaller counts already failed
            ok = True
            for members in member_sets:
                first = assignment[members[0]]
                if all(assignment[u] == first for u in members[1:]):
                    ok = False
                    break
            if ok:
                return t
    return None


def oracle_is_valid_clique_coloring(g: Graph, assignment: dict) -> bool:
    for members in oracle_maximal_cliques(g, 2):
        colors = {assignment[lab] for lab in members}
        if len(colors) == 1:
            return False
    return True


def is_connected_after_removal(g: Graph, removed) -> bool:
    removed = set(removed)
    keep = [v for v in range(g.n) if g.labels[v] not in removed]
    if not keep:
        return True
    mask = 0
    for v in keep:
        mask |= 1 << v
    reach = 1 << keep[0]
    while True:
        grow = reach
        m = reach
        while m:
            low = m & -m
            grow |= g.adjacency_mask(low.bit_length() - 1) & mask
            m ^= low
        if grow == reach:
            return reach == mask
        reach = grow
