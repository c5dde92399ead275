#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled core.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Times the hot paths on fixed seeded workloads and prints one line per
kernel with the speedup of the compiled implementation.
"""

import argparse
import random
import time

import numpy as np

from cliquecolor._kernels import pure

try:
    from cliquecolor._kernels import _core as compiled
except ImportError:
    compiled = None

from cliquecolor.lemma6 import binom_table, sample_bijection


def random_adj(n, p, rnd):
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rnd.random() < p:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rnd = random.Random(2024)
    graphs = [random_adj(18, 0.5, rnd) for _ in range(30)]

    def bk(impl):
        return lambda: [impl.maximal_cliques(18, adj, 2) for adj in graphs]

    g16 = random_adj(16, 0.45, random.Random(7))
    cliques16 = sorted(pure.maximal_cliques(16, g16, 2))

    def coloring(impl):
        def run():
            for t in (1, 2, 3):
                impl.clique_color_search(16, cliques16, t)
        return run

    g20 = random_adj(20, 0.3, random.Random(9))

    def holes(impl):
        return lambda: impl.odd_hole_search(20, g20, 5)

    g12 = random_adj(12, 0.5, random.Random(11))

    def gap(impl):
        return lambda: impl.chi_omega_gap_search(12, g12)

    inst = sample_bijection(36, 6, 2, seed=1)
    por = inst.part_of_rank()
    table = binom_table(36, 6)
    rng = np.random.default_rng(5)
    a_rows = np.sort(rng.permuted(np.tile(np.arange(36), (20000, 1)),
                                  axis=1)[:, :12].astype(np.int64), axis=1)
    b_rows = np.sort(rng.permuted(np.tile(np.arange(36), (20000, 1)),
                                  axis=1)[:, :2].astype(np.int64), axis=1)

    def prop1(impl):
        return lambda: impl.check_property1(36, 6, 2, por, table, a_rows)

    def prop2(impl):
        return lambda: impl.check_property2(36, 6, 2, por, table, b_rows, 2)

    return [
        ("maximal cliques (30x n=18)", bk),
        ("clique coloring search (n=16)", coloring),
        ("odd hole scan (n=20)", holes),
        ("chi=omega gap scan (n=12)", gap),
        ("property 1, 20k samples (m=36)", prop1),
        ("property 2, 20k samples (m=36)", prop2),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernels unavailable; timing the pure backend only")
    print(f"{'kernel':35} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, make in workloads():
        t_pure = timed(make(pure), args.repeat)
        if compiled is not None:
            t_comp = timed(make(compiled), args.repeat)
            print(f"{name:35} {t_pure * 1e3:9.1f}ms {t_comp * 1e3:9.1f}ms "
                  f"{t_pure / t_comp:7.1f}x")
        else:
            print(f"{name:35} {t_pure * 1e3:9.1f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
