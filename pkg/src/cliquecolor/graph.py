"""Finite simple graphs with stable string labels.

Adjacency is kept as one bitmask per vertex over a dense index; the label
order given at construction is the canonical vertex order everywhere
(enumeration order, tie-breaking, serialization). Graph values are immutable
after construction and safe to share.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError


class Graph:
    __slots__ = ("labels", "_index", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        labels = tuple(str(v) for v in vertices)
        if not labels:
            raise InputError("graph must have at least one vertex")
        index = {}
        for pos, lab in enumerate(labels):
            if lab in index:
                raise InputError(f"duplicate vertex label {lab!r}")
            index[lab] = pos
        adj = [0] * len(labels)
        seen = set()
        for a, b in edges:
            try:
                ia, ib = index[a], index[b]
            except KeyError as exc:
                raise InputError(f"unknown vertex label {exc.args[0]!r}") from None
            if ia == ib:
                raise InputError(f"self-loop at {a!r}")
            key = (ia, ib) if ia < ib else (ib, ia)
            if key in seen:
                raise InputError(f"duplicate edge {a!r}-{b!r}")
            seen.add(key)
            adj[ia] |= 1 << ib
            adj[ib] |= 1 << ia
        self.labels = labels
        self._index = index
        self._adj = tuple(adj)

    @classmethod
    def _from_masks(cls, labels: tuple[str, ...], adj: tuple[int, ...]) -> "Graph":
        g = object.__new__(cls)
        g.labels = labels
        g._index = {lab: pos for pos, lab in enumerate(labels)}
        g._adj = tuple(adj)
        return g

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown vertex label {label!r}") from None

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[int, ...]:
        return self._adj

    def has_edge(self, a: str, b: str) -> bool:
        return bool(self._adj[self.index(a)] >> self.index(b) & 1)

    def degree(self, label: str) -> int:
        return self._adj[self.index(label)].bit_count()

    def neighbors(self, label: str) -> tuple[str, ...]:
        return self.labels_of(self._adj[self.index(label)])

    def edges(self) -> list[tuple[str, str]]:
        """Edges once each, lexicographic by endpoint pair."""
        out = set()
        for v, lab in enumerate(self.labels):
            mask = self._adj[v]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if u > v:
                    a, b = lab, self.labels[u]
                    out.add((a, b) if a < b else (b, a))
        return sorted(out)

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    # -- mask helpers --------------------------------------------------------

    def mask_of(self, members: Iterable[str]) -> int:
        mask = 0
        for lab in members:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.labels[low.bit_length() - 1])
            mask ^= low
        return tuple(out)

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.labels, self._adj))

    def __repr__(self) -> str:
        return f"Graph({self.n} vertices, {self.edge_count()} edges)"


@dataclass(frozen=True)
class Bipartition:
    """A split of a cobipartite graph's vertices into two cliques."""
    side_a: tuple[str, ...]
    side_b: tuple[str, ...]


def is_clique(g: Graph, members: Iterable[str]) -> bool:
    """True iff the members are pairwise adjacent (vacuously for size <= 1)."""
    mask = g.mask_of(members)
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        if mask & ~(g.adjacency_mask(v) | low):
            return False
    return True


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    adj = tuple((full & ~g.adjacency_mask(v)) & ~(1 << v) for v in range(g.n))
    return Graph._from_masks(g.labels, adj)


def induced_subgraph(g: Graph, members: Iterable[str]) -> Graph:
    """Subgraph on `members`, which must be nonempty (graphs are non-null)."""
    keep = [lab for lab in g.labels if lab in set(members)]
    unknown = set(members) - set(g.labels)
    if unknown:
        raise InputError(f"unknown vertex label {sorted(unknown)[0]!r}")
    if not keep:
        raise InputError("induced subgraph needs at least one vertex")
    old = [g.index(lab) for lab in keep]
    remap = {o: i for i, o in enumerate(old)}
    adj = [0] * len(keep)
    for i, o in enumerate(old):
        mask = g.adjacency_mask(o)
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            mask ^= low
            if u in remap:
                adj[i] |= 1 << remap[u]
    return Graph._from_masks(tuple(keep), tuple(adj))


def glue_along_clique(g1: Graph, g2: Graph, c1: Iterable[str], c2: Iterable[str],
                      pairing: dict[str, str], prefix: str = "g2:") -> Graph:
    """Identify clique c1 of g1 with clique c2 of g2 along `pairing`.

    The result lives on V(g1) plus g2's private vertices, the latter renamed
    with `prefix` to keep labels unique. Gluing along empty cliques yields
    the disjoint union.
    """
    c1 = tuple(c1)
    c2 = tuple(c2)
    if not is_clique(g1, c1):
        raise InputError("c1 is not a clique of g1")
    if not is_clique(g2, c2):
        raise InputError("c2 is not a clique of g2")
    if len(c1) != len(c2):
        raise InputError("glued cliques must have equal size")
    if set(pairing.keys()) != set(c1) or set(pairing.values()) != set(c2) \
            or len(pairing) != len(c1):
        raise InputError("pairing must be a bijection c1 -> c2")

    into_g1 = {v: k for k, v in pairing.items()}  # c2 label -> c1 label
    rename = {}
    for lab in g2.labels:
        rename[lab] = into_g1.get(lab, prefix + lab)

    new_labels = list(g1.labels) + [rename[lab] for lab in g2.labels
                                    if lab not in into_g1]
    if len(set(new_labels)) != len(new_labels):
        raise InputError("label collision while gluing; change prefix")
    edges = set(g1.edges())
    for a, b in g2.edges():
        edges.add(tuple(sorted((rename[a], rename[b]))))
    return Graph(new_labels, sorted(edges))


def is_cobipartite(g: Graph):
    """Bipartition into two cliques if one exists, else None.

    Found by 2-coloring the complement with BFS from the least uncolored
    vertex; side A always receives that starting vertex.
    """
    comp = complement(g)
    side = [None] * g.n
    for start in range(g.n):
        if side[start] is not None:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            mask = comp.adjacency_mask(v)
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if side[u] is None:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    a = tuple(g.labels[v] for v in range(g.n) if side[v] == 0)
    b = tuple(g.labels[v] for v in range(g.n) if side[v] == 1)
    return Bipartition(a, b)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.labels),
            "edges": [list(e) for e in g.edges()]}


def graph_from_json(data: dict) -> Graph:
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError("graph JSON must have a 'vertices' list")
    edges = [tuple(e) for e in data.get("edges", [])]
    for e in edges:
        if len(e) != 2:
            raise InputError(f"edge {e!r} must have exactly two endpoints")
    return Graph(data["vertices"], edges)


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(g), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_graph(path) -> Graph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from None
    return graph_from_json(data)


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for lab in g.labels:
        lines.append(f'  "{lab}";')
    for a, b in g.edges():
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def vertex_set(g: Graph, members: Iterable[str]) -> tuple[str, ...]:
    """Members in canonical (index) order, validating membership."""
    mask = g.mask_of(members)
    return g.labels_of(mask)


def iter_masks(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
