"""Clique expansions: petals, universal expansions, and towers.

An expansion with parameters (n, k) attaches, to a clique C of size
N = C(n, k), one new n-vertex clique X per requested bijection from C onto
the k-element subsets of {1..n}; attachment vertex c is wired to petal
vertex x_j exactly when j lies in the subset assigned to c. The tower
builder iterates universal expansions starting from a complete graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

from . import config
from .cliques import cliques_of_size
from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceeded, InputError, TowerInfeasible
from .graph import Graph, is_clique

_EXACT_BIT_LIMIT = 1_000_000


@dataclass(frozen=True)
class ExpansionSpec:
    n: int
    k: int

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise InputError("expansion needs 1 <= k <= n")

    @property
    def N(self) -> int:
        return math.comb(self.n, self.k)


@dataclass(frozen=True)
class Petal:
    clique_id: str
    bij_index: int
    attachment: tuple[str, ...]               # canonical host order
    vertices: tuple[str, ...]                 # x_1 .. x_n
    bijection: tuple[tuple[int, ...], ...]    # subset of {1..n} per attachment vertex

    @property
    def petal_id(self) -> str:
        return f"{self.clique_id}.b{self.bij_index}"


def _canonical_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return [tuple(s) for s in combinations(range(1, n + 1), k)]


def _resolve_bijections(spec: ExpansionSpec, bijections, budgets: Budgets
                        ) -> list[tuple[tuple[int, ...], ...]]:
    """Normalize a bijection request to a sorted list of subset sequences."""
    subsets = _canonical_subsets(spec.n, spec.k)
    N = spec.N
    total = math.factorial(N)
    if bijections == "all":
        if total > budgets.max_petals:
            raise BudgetExceeded(
                f"'all' would create {total} petals "
                f"(limit {budgets.max_petals}); pass an explicit or random "
                "selection instead")
        return [tuple(p) for p in permutations(subsets)]
    if isinstance(bijections, tuple) and len(bijections) == 3 \
            and bijections[0] == "random":
        _, count, seed = bijections
        if count > total:
            raise InputError(f"cannot sample {count} distinct bijections; "
                             f"only {total} exist")
        rng = config.stream(seed, "expansion-bijections")
        chosen: set[tuple[tuple[int, ...], ...]] = set()
        attempts = 0
        while len(chosen) < count:
            perm = rng.permutation(N)
            chosen.add(tuple(subsets[p] for p in perm))
            attempts += 1
            if attempts > 100 * count + 100:
                raise InputError("random bijection sampling did not converge")
        return sorted(chosen)
    # explicit list of subset sequences
    out = set()
    for seq in bijections:
        norm = tuple(tuple(sorted(int(x) for x in sub)) for sub in seq)
        if sorted(norm) != subsets:
            raise InputError(
                f"bijection {norm!r} is not a bijection onto the "
                f"{spec.k}-subsets of [{spec.n}]")
        out.add(norm)
    return sorted(out)


def expand_at_clique(g: Graph, c, spec: ExpansionSpec, bijections="all",
                     label_prefix: Optional[str] = None,
                     budgets: Budgets = DEFAULT_BUDGETS
                     ) -> tuple[Graph, list[Petal]]:
    """Attach one petal per requested bijection to the clique `c`.

    `bijections` is "all", an explicit list of subset sequences (aligned
    with the canonical order of `c`), or ("random", count, seed). Petals
    come back sorted by their subset sequence.
    """
    att_mask = g.mask_of(c)
    attachment = g.labels_of(att_mask)
    if not is_clique(g, attachment):
        raise InputError("attachment set is not a clique")
    if len(attachment) != spec.N:
        raise InputError(
            f"attachment clique must have C({spec.n},{spec.k}) = {spec.N} "
            f"vertices, got {len(attachment)}")

    seqs = _resolve_bijections(spec, bijections, budgets)
    if len(seqs) > budgets.max_petals:
        raise BudgetExceeded(f"{len(seqs)} petals exceed limit "
                             f"{budgets.max_petals}")
    new_total = g.n + len(seqs) * spec.n
    if new_total > budgets.max_vertices:
        raise BudgetExceeded(f"expansion would create {new_total} vertices "
                             f"(limit {budgets.max_vertices})")

    if label_prefix is None:
        label_prefix = "c(" + "+".join(attachment) + ")"

    labels = list(g.labels)
    adj = list(g.adjacency)
    att_idx = [g.index(lab) for lab in attachment]
    petals = []
    for bi, seq in enumerate(seqs):
        base = len(labels)
        xs = [f"{label_prefix}.b{bi}.x{j}" for j in range(1, spec.n + 1)]
        for lab in xs:
            if lab in g.labels:
                raise InputError(f"petal label {lab!r} collides; "
                                 "choose another label_prefix")
            labels.append(lab)
            adj.append(0)
        # petal is a clique
        for a in range(spec.n):
            for b in range(a + 1, spec.n):
                adj[base + a] |= 1 << (base + b)
                adj[base + b] |= 1 << (base + a)
        # wiring: attachment vertex pos adjacent to x_j iff j in its subset
        for pos, subset in enumerate(seq):
            ci = att_idx[pos]
            for j in subset:
                xi = base + j - 1
                adj[ci] |= 1 << xi
                adj[xi] |= 1 << ci
        petals.append(Petal(label_prefix, bi, attachment, tuple(xs), seq))
    return Graph._from_masks(tuple(labels), tuple(adj)), petals


def universal_expansion(g: Graph, spec: ExpansionSpec, bijections="all",
                        site_prefix: str = "q",
                        budgets: Budgets = DEFAULT_BUDGETS
                        ) -> tuple[Graph, list[Petal]]:
    """Expand at every clique of exactly N vertices (not only maximal ones).

    Petals at different sites are automatically anticomplete: each petal is
    wired only to its own attachment clique, which belongs to the original
    graph.
    """
    sites = cliques_of_size(g, spec.N)
    current = g
    petals: list[Petal] = []
    for si, site in enumerate(sites):
        current, ps = expand_at_clique(current, site, spec, bijections,
                                       label_prefix=f"{site_prefix}{si}",
                                       budgets=budgets)
        petals.extend(ps)
    return current, petals


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceEntry:
    """One value of the tower size sequence, exact when small enough."""
    index: int
    expr: str
    exact: Optional[int] = None
    log2: Optional[float] = None


@dataclass(frozen=True)
class LevelRecord:
    n: int
    k: int
    petals: tuple[Petal, ...]


@dataclass
class TowerTrace:
    k_target: int
    mode: str                       # "paper" | "custom"
    graphs: list[Graph]             # H_0 .. H_t
    levels: list[LevelRecord]
    sequence: list[SequenceEntry] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def paper_sequence(k: int) -> list[SequenceEntry]:
    """The exact size sequence of the k-tower, from level k down to 0.

    Values whose bit-length estimate exceeds the exact-arithmetic threshold
    are reported symbolically with a log2 estimate where a float can hold it.
    """
    if k < 2:
        raise InputError("the tower construction needs k >= 2")
    entries = [SequenceEntry(k, f"({k + 1})!", math.factorial(k + 1),
                             math.log2(math.factorial(k + 1)))]
    for i in range(k - 1, -1, -1):
        prev = entries[-1]
        if prev.exact is not None:
            a, b = prev.exact ** 2, prev.exact
            bits = (math.lgamma(a + 1) - math.lgamma(b + 1)
                    - math.lgamma(a - b + 1)) / math.log(2)
            expr = f"C({prev.exact}^2, {prev.exact})"
            if bits <= _EXACT_BIT_LIMIT:
                val = math.comb(a, b)
                entries.append(SequenceEntry(i, expr, val, math.log2(val)))
            else:
                entries.append(SequenceEntry(i, expr, None, bits))
        else:
            entries.append(SequenceEntry(
                i, f"C(x^2, x) where x = n_{prev.index}", None, None))
    return entries


def _infeasibility_report(k: int, entries: list[SequenceEntry],
                          budgets: Budgets) -> dict:
    n0 = entries[-1]
    h0 = (f"({k + 1}) * {n0.exact}" if n0.exact is not None
          else f"({k + 1}) * ({n0.expr})")
    levels = []
    for hi, lo in zip(entries[:-1], entries[1:]):
        levels.append({
            "level": hi.index,
            "expansion": (f"({hi.expr}^2, {hi.expr})" if hi.exact is None
                          else f"({hi.exact}^2, {hi.exact})"),
            "attachment_clique_size": lo.exact if lo.exact is not None else lo.expr,
            "bijections_per_clique": (f"{lo.exact}!" if lo.exact is not None
                                      else f"({lo.expr})!"),
        })
    return {
        "k": k,
        "sequence": [{"i": e.index, "expr": e.expr,
                      "exact": e.exact, "log2": e.log2}
                     for e in entries],
        "levels": levels,
        "h0_vertices": h0,
        "max_vertices": budgets.max_vertices,
    }


def build_tower(k_target: int = 2, mode: str = "paper",
                custom_params: Optional[dict] = None,
                budgets: Budgets = DEFAULT_BUDGETS) -> TowerTrace:
    """Build a tower of universal expansions over a complete base graph.

    Paper mode computes the exact size sequence for `k_target` and refuses
    (raising TowerInfeasible with the full size report) whenever the build
    cannot fit in the configured budgets, which holds for every k >= 2.
    Custom mode takes explicit miniature parameters:
    ``{"h0": vertices, "levels": [{"n":..., "k":..., "cliques":...,
    "bijections":...}]}`` where cliques is "all", an explicit list of label
    lists, or {"random": count, "seed": s}, and bijections follows
    expand_at_clique.
    """
    if mode == "paper":
        # always infeasible for k >= 2: the base graph alone needs
        # (k+1) * n_0 vertices with n_0 at least C(1947792^2, 1947792)
        entries = paper_sequence(k_target)
        report = _infeasibility_report(k_target, entries, budgets)
        raise TowerInfeasible(
            f"paper tower for k={k_target} needs {report['h0_vertices']} "
            f"base vertices (limit {budgets.max_vertices}); "
            "use custom mode for miniature builds", report)
    if mode != "custom":
        raise InputError(f"unknown tower mode {mode!r}")
    if not custom_params or "h0" not in custom_params:
        raise InputError("custom mode needs custom_params with an 'h0' size")

    v0 = int(custom_params["h0"])
    if v0 < 1:
        raise InputError("h0 must have at least one vertex")
    if v0 > budgets.max_vertices:
        raise BudgetExceeded(f"h0 with {v0} vertices exceeds limit")
    base = Graph([f"v{i}" for i in range(1, v0 + 1)],
                 [(f"v{a}", f"v{b}") for a in range(1, v0 + 1)
                  for b in range(a + 1, v0 + 1)])

    graphs = [base]
    levels: list[LevelRecord] = []
    warnings: list[str] = []
    level_specs = custom_params.get("levels", [])
    for lno, lp in enumerate(level_specs, start=1):
        spec = ExpansionSpec(int(lp["n"]), int(lp["k"]))
        sites_req = lp.get("cliques", "all")
        bijections = lp.get("bijections", "all")
        if isinstance(bijections, list):
            bijections = [tuple(tuple(s) for s in seq) for seq in bijections]
        elif isinstance(bijections, dict):
            bijections = ("random", int(bijections["random"]),
                          int(bijections["seed"]))
        current = graphs[-1]
        all_sites = cliques_of_size(current, spec.N)
        if sites_req == "all":
            sites = all_sites
        elif isinstance(sites_req, dict):
            rng = config.stream(int(sites_req["seed"]), f"tower-sites-L{lno}")
            count = int(sites_req["random"])
            if count > len(all_sites):
                raise InputError(f"level {lno}: only {len(all_sites)} "
                                 f"size-{spec.N} cliques exist")
            picks = sorted(rng.choice(len(all_sites), size=count,
                                      replace=False).tolist())
            sites = [all_sites[p] for p in picks]
        else:
            sites = []
            for labs in sites_req:
                site = current.labels_of(current.mask_of(labs))
                if site not in all_sites:
                    raise InputError(f"level {lno}: {labs!r} is not a clique "
                                     f"of {spec.N} vertices")
                sites.append(site)
            sites.sort(key=lambda s: [current.index(x) for x in s])
        petals: list[Petal] = []
        for si, site in enumerate(sites):
            current, ps = expand_at_clique(current, site, spec, bijections,
                                           label_prefix=f"L{lno}q{si}",
                                           budgets=budgets)
            petals.extend(ps)
        graphs.append(current)
        levels.append(LevelRecord(spec.n, spec.k, tuple(petals)))

    t = len(levels)
    facto = math.factorial(t + 1)
    for lno, lev in enumerate(levels, start=1):
        if lev.n % facto:
            warnings.append(f"level {lno}: ({t}+1)! = {facto} does not "
                            f"divide n = {lev.n}")
    ns = [lev.n for lev in levels]
    if any(a <= b for a, b in zip(ns, ns[1:])):
        warnings.append("level sizes do not strictly decrease "
                        f"going up: {ns}")
    return TowerTrace(t, "custom", graphs, levels, [], warnings)


@dataclass(frozen=True)
class PetalCliqueReport:
    checks: int
    violations: tuple[tuple[str, str, str], ...]   # (petal_id, vertex, reason)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_petal_maximal_cliques(trace: TowerTrace) -> PetalCliqueReport:
    """Verify, in the tower's final graph, that every attachment vertex c of
    every petal forms a maximal clique {c} + N_X(c) of size k+1.

    Custom parameters outside the intended size hierarchy may legitimately
    break this; violations are reported, never raised.
    """
    final = trace.graphs[-1]
    checks = 0
    violations = []
    for level in trace.levels:
        for petal in level.petals:
            x_mask = final.mask_of(petal.vertices)
            for c in petal.attachment:
                checks += 1
                ci = final.index(c)
                nx = final.adjacency_mask(ci) & x_mask
                s_mask = nx | (1 << ci)
                size = s_mask.bit_count()
                if size != level.k + 1:
                    violations.append((petal.petal_id, c,
                                       f"size {size} != {level.k + 1}"))
                    continue
                common = (1 << final.n) - 1
                m = s_mask
                while m:
                    low = m & -m
                    common &= final.adjacency_mask(low.bit_length() - 1)
                    m ^= low
                extra = common & ~s_mask
                if extra:
                    lab = final.labels[(extra & -extra).bit_length() - 1]
                    violations.append((petal.petal_id, c,
                                       f"extendable by {lab!r}"))
    return PetalCliqueReport(checks, tuple(violations))
