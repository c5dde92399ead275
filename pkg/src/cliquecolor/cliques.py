"""Maximal clique enumeration and the clique number."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import _kernels
from .errors import InputError
from .graph import Graph


@dataclass(frozen=True)
class MaximalCliqueList:
    host: Graph
    cliques: tuple[tuple[str, ...], ...]   # members in index order

    def __len__(self) -> int:
        return len(self.cliques)


def maximal_clique_masks(g: Graph, min_size: int = 1) -> list[int]:
    """Maximal cliques of size >= min_size as bitmasks, sorted by member indices."""
    if min_size < 1:
        raise InputError("min_size must be >= 1")
    masks = _kernels.maximal_cliques(g.n, g.adjacency, min_size)
    return sorted(masks, key=_index_key)


def maximal_cliques(g: Graph, min_size: int = 1) -> MaximalCliqueList:
    masks = maximal_clique_masks(g, min_size)
    return MaximalCliqueList(g, tuple(g.labels_of(m) for m in masks))


def clique_number(g: Graph) -> int:
    return _kernels.max_clique_size(g.n, g.adjacency, (1 << g.n) - 1)


def cliques_of_size(g: Graph, size: int) -> list[tuple[str, ...]]:
    """All cliques of exactly `size` vertices, sorted by member indices.

    Obtained by taking `size`-subsets of the maximal cliques; deduplicated
    because a clique can sit inside several maximal ones.
    """
    if size < 0:
        raise InputError("size must be >= 0")
    if size == 0:
        return [()]
    seen = set()
    for mask in maximal_clique_masks(g, min_size=size):
        members = _bits(mask)
        if len(members) == size:
            seen.add(tuple(members))
        else:
            for combo in combinations(members, size):
                seen.add(combo)
    return [tuple(g.labels[v] for v in combo)
            for combo in sorted(seen)]


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _index_key(mask: int) -> tuple[int, ...]:
    return tuple(_bits(mask))
