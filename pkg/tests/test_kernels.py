"""Parity between the pure-Python kernels and the compiled core."""

import random
from itertools import combinations

import numpy as np
import pytest

from cliquecolor import _kernels
from cliquecolor._kernels import pure
from cliquecolor.lemma6 import binom_table, sample_bijection

compiled = pytest.importorskip("cliquecolor._kernels._core",
                               reason="compiled kernels not built")


def random_adj(n, p, rnd):
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rnd.random() < p:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def test_graph_kernel_parity():
    rnd = random.Random(101)
    for _ in range(150):
        n = rnd.randint(1, 11)
        adj = random_adj(n, rnd.random(), rnd)
        assert pure.degeneracy_order(n, adj) == \
            compiled.degeneracy_order(n, adj)
        assert sorted(pure.maximal_cliques(n, adj, 2)) == \
            sorted(compiled.maximal_cliques(n, adj, 2))
        full = (1 << n) - 1
        assert pure.max_clique_size(n, adj, full) == \
            compiled.max_clique_size(n, adj, full)
        assert pure.odd_hole_search(n, adj, 5) == \
            compiled.odd_hole_search(n, adj, 5)
        assert pure.chi_omega_gap_search(n, adj) == \
            compiled.chi_omega_gap_search(n, adj)
        cliques = [c for c in sorted(pure.maximal_cliques(n, adj, 2))]
        for t in (1, 2, 3):
            assert pure.clique_color_search(n, cliques, t) == \
                compiled.clique_color_search(n, cliques, t)
            assert pure.proper_color_search(n, adj, full, t) == \
                compiled.proper_color_search(n, adj, full, t)


def test_proper_color_on_submasks():
    rnd = random.Random(103)
    for _ in range(40):
        n = rnd.randint(2, 9)
        adj = random_adj(n, 0.5, rnd)
        mask = rnd.randrange(1, 1 << n)
        for t in (1, 2, 3, 4):
            assert pure.proper_color_search(n, adj, mask, t) == \
                compiled.proper_color_search(n, adj, mask, t)


def test_property_kernel_parity():
    rnd = random.Random(107)
    for m, k, i in [(6, 2, 3), (8, 3, 2), (8, 4, 1), (7, 2, 3)]:
        table = binom_table(m, k)
        inst = sample_bijection(m, k, i, seed=rnd.randrange(10**6))
        por = inst.part_of_rank()
        if 2 * k <= m:
            rows = np.array(list(combinations(range(m), 2 * k)),
                            dtype=np.int64)
            a = pure.check_property1(m, k, i, por, table, rows)
            b = compiled.check_property1(m, k, i, por, table, rows)
            assert [(int(x), int(y)) for x, y in a] == \
                [(int(x), int(y)) for x, y in b]
        if k % (i + 1) == 0:
            bb = k // (i + 1)
            rows = np.array(list(combinations(range(m), bb)), dtype=np.int64)
            a = pure.check_property2(m, k, i, por, table, rows, bb)
            b = compiled.check_property2(m, k, i, por, table, rows, bb)
            assert [(int(x), int(y)) for x, y in a] == \
                [(int(x), int(y)) for x, y in b]


def test_rank_parity():
    for m, k in [(5, 2), (9, 3), (12, 4)]:
        table = binom_table(m, k)
        for r, combo in enumerate(combinations(range(m), k)):
            assert pure.subset_rank(list(combo), m, k, table) == r
            assert compiled.subset_rank(list(combo), m, k, table) == r


def test_dispatcher_routes_large_graphs_to_pure():
    # a 70-vertex path exceeds the compiled single-word limit
    n = 70
    adj = [0] * n
    for a in range(n - 1):
        adj[a] |= 1 << (a + 1)
        adj[a + 1] |= 1 << a
    cliques = _kernels.maximal_cliques(n, adj, 2)
    assert len(cliques) == 69
    assert _kernels.max_clique_size(n, adj, (1 << n) - 1) == 2


def test_backend_reports():
    assert _kernels.BACKEND in ("cython", "python")
    assert pure.BACKEND == "python"
    assert compiled.BACKEND == "cython"
