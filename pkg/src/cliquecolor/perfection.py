"""Desk-scale perfection checks and clique cutsets.

Two routes: the SPGT route (no odd hole, no odd antihole; the Strong
Perfect Graph Theorem is trusted as an external fact) and the definitional
route (chi = omega on every induced subgraph, capped by a vertex budget).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .cliques import cliques_of_size
from .config import DEFAULT_BUDGETS, Budgets
from .errors import InputError
from .graph import Graph, complement, iter_masks


@dataclass(frozen=True)
class PerfectionVerdict:
    perfect: bool
    witness_kind: Optional[str] = None   # "odd-hole" | "odd-antihole" | "chi-omega-gap"
    witness: Optional[tuple[str, ...]] = None


def find_odd_hole(g: Graph) -> Optional[tuple[str, ...]]:
    """Least induced odd cycle of length >= 5, or None."""
    mask = _kernels.odd_hole_search(g.n, g.adjacency, 5)
    return g.labels_of(mask) if mask else None


def find_odd_antihole(g: Graph) -> Optional[tuple[str, ...]]:
    """Least vertex set inducing the complement of an odd cycle >= 5, or None.

    A five-vertex antihole is itself a five-hole (the C5 is
    self-complementary), so the search in the complement starts at length 5.
    """
    comp = complement(g)
    mask = _kernels.odd_hole_search(comp.n, comp.adjacency, 5)
    return g.labels_of(mask) if mask else None


def is_perfect(g: Graph, method: str = "spgt",
               budgets: Budgets = DEFAULT_BUDGETS) -> PerfectionVerdict:
    """Perfection verdict with a witness when imperfect.

    spgt: no odd hole and no odd antihole. Holes of length five are found in
    the graph itself, so the complement scan starts at length seven.
    definitional: chi(H) = omega(H) for every induced subgraph, only for
    graphs within the configured vertex cap.
    """
    if method == "spgt":
        mask = _kernels.odd_hole_search(g.n, g.adjacency, 5)
        if mask:
            return PerfectionVerdict(False, "odd-hole", g.labels_of(mask))
        comp = complement(g)
        mask = _kernels.odd_hole_search(comp.n, comp.adjacency, 7)
        if mask:
            return PerfectionVerdict(False, "odd-antihole", g.labels_of(mask))
        return PerfectionVerdict(True)
    if method == "definitional":
        if g.n > budgets.max_definitional:
            raise InputError(
                f"definitional check capped at {budgets.max_definitional} "
                f"vertices (graph has {g.n})")
        mask = _kernels.chi_omega_gap_search(g.n, g.adjacency)
        if mask:
            return PerfectionVerdict(False, "chi-omega-gap", g.labels_of(mask))
        return PerfectionVerdict(True)
    raise InputError(f"unknown method {method!r}")


def _is_connected_mask(g: Graph, mask: int) -> bool:
    if mask == 0:
        return True
    low = mask & -mask
    reach = low
    while True:
        grow = reach
        for v in iter_masks(reach):
            grow |= g.adjacency_mask(v) & mask
        if grow == reach:
            return reach == mask
        reach = grow


def find_clique_cutset(g: Graph) -> Optional[tuple[str, ...]]:
    """A minimal-by-inclusion clique whose removal disconnects the graph.

    Searched by increasing clique size, so the first hit has minimum size
    and therefore no cutset proper subset. Disconnected input yields the
    empty clique; None means no clique cutset exists.
    """
    full = (1 << g.n) - 1
    if not _is_connected_mask(g, full):
        return ()
    for size in range(1, g.n - 1):
        for members in cliques_of_size(g, size):
            cut = full & ~g.mask_of(members)
            if cut and not _is_connected_mask(g, cut):
                return members
    return None
