"""Clique-coloring verification, exact chromatic numbers, and the
constructive tower coloring.

A clique-coloring assigns colors so that no inclusion-wise maximal clique
with at least two vertices is monochromatic. Graphs without such cliques
(edgeless, single vertex) have clique-chromatic number 1 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from . import _kernels
from .cliques import clique_number, maximal_clique_masks
from .errors import ColoringConstructionError, InputError
from .graph import Graph, iter_masks

if TYPE_CHECKING:
    from .expansion import TowerTrace


@dataclass
class CliqueColoring:
    assignment: dict[str, int]

    def num_colors(self) -> int:
        return len(set(self.assignment.values()))

    def color_of(self, label: str) -> int:
        return self.assignment[label]

    def normalized(self, g: Graph) -> "CliqueColoring":
        """Renumber colors to 1..t by first appearance in vertex order."""
        remap: dict[int, int] = {}
        out = {}
        for lab in g.labels:
            c = self.assignment[lab]
            if c not in remap:
                remap[c] = len(remap) + 1
            out[lab] = remap[c]
        return CliqueColoring(out)


@dataclass(frozen=True)
class ColoringVerdict:
    valid: bool
    witness: Optional[tuple[str, ...]]  # least monochromatic maximal clique


def _validated_colors(g: Graph, col: CliqueColoring) -> list[int]:
    extra = set(col.assignment) - set(g.labels)
    if extra:
        raise InputError(f"coloring mentions unknown vertex {sorted(extra)[0]!r}")
    colors = []
    for lab in g.labels:
        if lab not in col.assignment:
            raise InputError(f"coloring is partial: vertex {lab!r} has no color")
        c = col.assignment[lab]
        if not isinstance(c, int) or c < 1:
            raise InputError(f"color of {lab!r} must be a positive integer")
        colors.append(c)
    return colors


def verify_clique_coloring(g: Graph, col: CliqueColoring) -> ColoringVerdict:
    """Check that no maximal clique of size >= 2 is monochromatic.

    When invalid, the witness is the first offending clique in the canonical
    clique order.
    """
    colors = _validated_colors(g, col)
    for mask in maximal_clique_masks(g, min_size=2):
        members = list(iter_masks(mask))
        first = colors[members[0]]
        if all(colors[v] == first for v in members[1:]):
            return ColoringVerdict(False, tuple(g.labels[v] for v in members))
    return ColoringVerdict(True, None)


def greedy_clique_coloring(g: Graph) -> CliqueColoring:
    """Quick valid clique-coloring whose color count upper-bounds the optimum.

    Tries, in order: the trivial 1-coloring (when no maximal clique of size
    two exists), the dominating-vertex 2-coloring, and finally a greedy
    proper coloring (every proper coloring is a clique-coloring). The result
    is verified before being returned.
    """
    masks = maximal_clique_masks(g, min_size=2)
    if not masks:
        return CliqueColoring({lab: 1 for lab in g.labels})

    full = (1 << g.n) - 1
    for v in range(g.n):
        if g.adjacency_mask(v) == full & ~(1 << v):
            col = CliqueColoring({lab: (1 if i == v else 2)
                                  for i, lab in enumerate(g.labels)})
            if verify_clique_coloring(g, col).valid:
                return col
            break

    order = sorted(range(g.n), key=lambda v: (-g.adjacency_mask(v).bit_count(), v))
    assigned = [0] * g.n
    for v in order:
        used = {assigned[u] for u in iter_masks(g.adjacency_mask(v)) if assigned[u]}
        c = 1
        while c in used:
            c += 1
        assigned[v] = c
    col = CliqueColoring({g.labels[v]: assigned[v] for v in range(g.n)})
    verdict = verify_clique_coloring(g, col)
    if not verdict.valid:
        raise AssertionError("proper coloring failed clique-coloring check")
    return col


def minimum_clique_coloring(g: Graph, max_colors: int | None = None
                            ) -> Optional[CliqueColoring]:
    """Lexicographically least optimal clique-coloring, or None past the cap.

    Iterative deepening on the color count; the per-count search assigns
    vertices in index order and introduces color c only after c-1, so the
    first coloring found is the least one overall.
    """
    if max_colors is None:
        max_colors = greedy_clique_coloring(g).num_colors()
    if max_colors < 1:
        raise InputError("max_colors must be >= 1")
    masks = maximal_clique_masks(g, min_size=2)
    for t in range(1, max_colors + 1):
        found = _kernels.clique_color_search(g.n, masks, t)
        if found is not None:
            return CliqueColoring({g.labels[v]: found[v] for v in range(g.n)})
    return None


def clique_chromatic_number(g: Graph, max_colors: int | None = None) -> Optional[int]:
    """Exact clique-chromatic number, or None if it exceeds max_colors."""
    col = minimum_clique_coloring(g, max_colors)
    return None if col is None else col.num_colors()


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by iterative deepening from the clique number."""
    full = (1 << g.n) - 1
    for t in range(clique_number(g), g.n + 1):
        if _kernels.proper_color_search(g.n, g.adjacency, full, t) is not None:
            return t
    return g.n


# ---------------------------------------------------------------------------
# constructive coloring of expansion towers
# ---------------------------------------------------------------------------

def construct_tower_coloring(tower: "TowerTrace") -> CliqueColoring:
    """Run the mechanical level-by-level coloring recipe on a tower.

    Level 0 gets one vertex of color 1 and color 2 elsewhere; level-1 petals
    each get one vertex non-adjacent to the level-0 special vertex colored 1
    and color 3 elsewhere; level-2 petals pick one vertex (preferring a
    neighbor of the petal's color-1 attachment vertex) recolored 2 or 3 by
    its attachment neighborhood, color 1 elsewhere; deeper levels color one
    chosen vertex 1 or 2 by the same kind of rule and give the rest the
    level's own fresh color.

    The result is returned unverified: at miniature parameters the recipe can
    produce an invalid coloring, and that outcome is itself of interest.
    """
    final = tower.graphs[-1]
    h0 = tower.graphs[0]
    full0 = (1 << h0.n) - 1
    for v in range(h0.n):
        if h0.adjacency_mask(v) != full0 & ~(1 << v):
            raise InputError("tower level 0 must be a complete graph")

    colors: dict[str, int] = {}
    x0 = h0.labels[0]
    colors[x0] = 1
    for lab in h0.labels[1:]:
        colors[lab] = 2

    x0_idx = final.index(x0)
    x0_adj = final.adjacency_mask(x0_idx)

    for level_no, level in enumerate(tower.levels, start=1):
        for petal in level.petals:
            xs = [final.index(lab) for lab in petal.vertices]
            if level_no == 1:
                candidates = [v for v in xs if not (x0_adj >> v) & 1]
                if not candidates:
                    raise ColoringConstructionError(
                        f"petal {petal.petal_id}: every vertex is adjacent to "
                        f"the color-1 vertex {x0!r}", petal_id=petal.petal_id)
                special = min(candidates)
                for v in xs:
                    colors[final.labels[v]] = 1 if v == special else 3
            elif level_no == 2:
                ones = [c for c in petal.attachment if colors[c] == 1]
                if len(ones) == 1:
                    cm = final.adjacency_mask(final.index(ones[0]))
                    nbrs = [v for v in xs if (cm >> v) & 1]
                    special = min(nbrs)
                else:
                    special = min(xs)
                att_mask = final.mask_of(petal.attachment)
                nb_att = final.adjacency_mask(special) & att_mask
                nb_colors = {colors[final.labels[u]] for u in iter_masks(nb_att)}
                colors[final.labels[special]] = 3 if nb_colors == {2} else 2
                for v in xs:
                    if v != special:
                        colors[final.labels[v]] = 1
            else:
                special = min(xs)
                att_mask = final.mask_of(petal.attachment)
                nb_att = final.adjacency_mask(special) & att_mask
                nb_colors = {colors[final.labels[u]] for u in iter_masks(nb_att)}
                colors[final.labels[special]] = 2 if nb_colors == {1} else 1
                for v in xs:
                    if v != special:
                        colors[final.labels[v]] = level_no + 1
    return CliqueColoring(colors)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def coloring_to_json(col: CliqueColoring) -> dict:
    return {"colors": dict(sorted(col.assignment.items()))}


def coloring_from_json(data: dict) -> CliqueColoring:
    if not isinstance(data, dict) or "colors" not in data:
        raise InputError("coloring JSON must have a 'colors' object")
    out = {}
    for lab, c in data["colors"].items():
        if not isinstance(c, int):
            raise InputError(f"color of {lab!r} must be an integer")
        out[str(lab)] = c
    return CliqueColoring(out)
