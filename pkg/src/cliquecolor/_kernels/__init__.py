"""Kernel dispatch: compiled core when available, pure Python otherwise.

The Cython module handles graphs of at most 64 vertices (single-word
bitsets); larger graphs always take the portable path. Set
``CLIQUECOLOR_PURE=1`` to force the pure implementation everywhere.
"""

import os

from . import pure

_compiled = None
if not os.environ.get("CLIQUECOLOR_PURE"):
    try:
        from . import _core as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_WORD = 64


def _graph_impl(n):
    if _compiled is not None and n <= _WORD:
        return _compiled
    return pure


def degeneracy_order(n, adj):
    return _graph_impl(n).degeneracy_order(n, list(adj))


def maximal_cliques(n, adj, min_size=1):
    return _graph_impl(n).maximal_cliques(n, list(adj), min_size)


def max_clique_size(n, adj, mask):
    return _graph_impl(n).max_clique_size(n, list(adj), mask)


def clique_color_search(n, cliques, t):
    return _graph_impl(n).clique_color_search(n, list(cliques), t)


def proper_color_search(n, adj, mask, t):
    return _graph_impl(n).proper_color_search(n, list(adj), mask, t)


def odd_hole_search(n, adj, min_len=5):
    return _graph_impl(n).odd_hole_search(n, list(adj), min_len)


def chi_omega_gap_search(n, adj):
    # 2^n subsets: route to the compiled loop only where its uint64 counter
    # is safe; callers cap n far below this anyway
    impl = _graph_impl(n) if n <= 32 else pure
    return impl.chi_omega_gap_search(n, list(adj))


def subset_rank(elements, m, k, binom):
    return _graph_impl(m).subset_rank(list(elements), m, k, binom)


def check_property1(m, k, i, part_of_rank, binom, a_rows):
    return _graph_impl(m).check_property1(m, k, i, part_of_rank, binom, a_rows)


def check_property2(m, k, i, part_of_rank, binom, b_rows, threshold):
    return _graph_impl(m).check_property2(m, k, i, part_of_rank, binom,
                                          b_rows, threshold)
