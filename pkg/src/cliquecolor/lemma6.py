"""Random bijections onto the k-subsets of a ground set, the two covering
properties they are expected to satisfy, and uniform-clique assembly.

An instance is a bijection phi from an abstract ordered set C (positions
0..N-1, N = C(m, k)) onto the k-element subsets of range(m), together with
a partition of C into i equal parts. Property 1 asks every 2k-set to contain
an image from every part; property 2 asks every (k/(i+1))-set to lie inside
at least k/(i+1) images from every part. Elements are 0-based throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from . import _kernels, config
from .coloring import CliqueColoring
from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceeded, InputError
from .expansion import Petal
from .graph import Graph, is_clique

_CHUNK = 65536


def binom_table(m: int, k: int) -> np.ndarray:
    """Pascal triangle rows 0..m, columns 0..k+1, exact int64."""
    t = np.zeros((m + 1, k + 2), dtype=np.int64)
    t[:, 0] = 1
    for a in range(1, m + 1):
        for b in range(1, min(a, k + 1) + 1):
            t[a, b] = t[a - 1, b - 1] + t[a - 1, b]
    return t


def all_subset_masks(m: int, k: int) -> np.ndarray:
    """Bitmasks of the k-subsets of range(m), in lexicographic subset order."""
    if m > 62:
        raise InputError("subset masks supported for m <= 62")
    out = np.empty(math.comb(m, k), dtype=np.int64)
    for r, combo in enumerate(combinations(range(m), k)):
        mask = 0
        for e in combo:
            mask |= 1 << e
        out[r] = mask
    return out


def rank_to_elements(r: int, m: int, k: int) -> tuple[int, ...]:
    """Inverse of the lexicographic subset rank."""
    out = []
    prev = -1
    for j in range(k):
        e = prev + 1
        while True:
            count = math.comb(m - 1 - e, k - 1 - j)
            if r < count:
                break
            r -= count
            e += 1
        out.append(e)
        prev = e
    return tuple(out)


@dataclass
class Lemma6Instance:
    m: int
    k: int
    i: int
    ranks: np.ndarray                       # position -> subset rank
    parts: Optional[np.ndarray] = None      # position -> part (default: blocks)
    _part_of_rank: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not (1 <= self.k <= self.m):
            raise InputError("need 1 <= k <= m")
        if self.i < 1:
            raise InputError("need at least one part")
        if self.i > 63:
            raise InputError("at most 63 parts supported")  # part bitmasks
        N = self.N
        if N % self.i:
            raise InputError(f"parts must be equal-sized: {self.i} does not "
                             f"divide C({self.m},{self.k}) = {N}")
        self.ranks = np.asarray(self.ranks, dtype=np.int64)
        if self.ranks.shape != (N,):
            raise InputError(f"phi must assign all {N} positions")
        counts = np.bincount(self.ranks, minlength=N)
        if counts.min() != 1 or counts.max() != 1:
            raise InputError("phi is not a bijection onto the k-subsets")
        if self.parts is not None:
            self.parts = np.asarray(self.parts, dtype=np.int64)
            if self.parts.shape != (N,):
                raise InputError("part assignment must cover every position")
            sizes = np.bincount(self.parts, minlength=self.i)
            if len(sizes) != self.i or sizes.min() != sizes.max():
                raise InputError("explicit parts must be equal-sized and "
                                 f"use exactly {self.i} parts")

    @property
    def N(self) -> int:
        return math.comb(self.m, self.k)

    @property
    def block(self) -> int:
        return self.N // self.i

    @property
    def shape(self) -> str:
        """"paper" when m = k^2 and i(i+1) divides k, else "generalized"."""
        if self.m == self.k * self.k and self.k % (self.i * (self.i + 1)) == 0:
            return "paper"
        return "generalized"

    def part_of_position(self, p: int) -> int:
        if self.parts is not None:
            return int(self.parts[p])
        return p // self.block

    def part_positions(self, j: int) -> np.ndarray:
        if self.parts is not None:
            return np.where(self.parts == j)[0]
        return np.arange(j * self.block, (j + 1) * self.block)

    def part_of_rank(self) -> np.ndarray:
        if self._part_of_rank is None:
            inv = np.empty(self.N, dtype=np.int64)
            inv[self.ranks] = np.arange(self.N, dtype=np.int64)
            if self.parts is not None:
                pos_part = self.parts
            else:
                pos_part = np.arange(self.N, dtype=np.int64) // self.block
            self._part_of_rank = pos_part[inv].astype(np.int8)
        return self._part_of_rank

    def subset_at(self, p: int) -> tuple[int, ...]:
        return rank_to_elements(int(self.ranks[p]), self.m, self.k)


def sample_bijection(m: int, k: int, i: int, seed: int) -> Lemma6Instance:
    """Uniformly random bijection via a seeded shuffle of the subset order.

    The partition is the default one: part j holds the j-th consecutive
    block of positions.
    """
    N = math.comb(m, k)
    if N % i:
        raise InputError(f"{i} does not divide C({m},{k}) = {N}")
    rng = config.stream(seed, f"lemma6-bijection-{m}-{k}-{i}")
    ranks = rng.permutation(N).astype(np.int64)
    return Lemma6Instance(m, k, i, ranks)


@dataclass(frozen=True)
class PropertyReport:
    property: int                       # 1 or 2
    mode: str                           # "exhaustive" | "sampled"
    checked: int                        # sets examined
    failures: int                       # failing (part, set) pairs
    witnesses: tuple[tuple[int, tuple[int, ...]], ...]  # (part 1-based, set)
    trials: Optional[int] = None
    seed: Optional[int] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0


_SAMPLED_NOTE = ("sampled mode can miss failures; zero observed failures "
                 "does not certify the property")
_WITNESS_CAP = 200


def _sample_rows(m: int, size: int, trials: int, seed: int, name: str
                 ) -> np.ndarray:
    rng = config.stream(seed, name)
    keys = rng.random((trials, m))
    idx = np.argsort(keys, axis=1)[:, :size]
    idx.sort(axis=1)
    return idx.astype(np.int64)


def _exhaustive_rows(m: int, size: int):
    batch = []
    for combo in combinations(range(m), size):
        batch.append(combo)
        if len(batch) == _CHUNK:
            yield np.array(batch, dtype=np.int64)
            batch = []
    if batch:
        yield np.array(batch, dtype=np.int64)


def _run_check(inst: Lemma6Instance, prop: int, set_size: int, mode: str,
               trials, seed, budgets: Budgets, threshold: int = 0
               ) -> PropertyReport:
    table = binom_table(inst.m, inst.k)
    por = inst.part_of_rank()
    if mode == "exhaustive":
        total = math.comb(inst.m, set_size)
        if total > budgets.max_exhaustive:
            raise BudgetExceeded(
                f"exhaustive property-{prop} check needs C({inst.m},"
                f"{set_size}) = {total} sets (limit {budgets.max_exhaustive})")
        chunks = _exhaustive_rows(inst.m, set_size)
        trials = None
        seed = None
        note = ""
    elif mode == "sampled":
        if trials is None or seed is None:
            raise InputError("sampled mode needs trials and seed")
        rows = _sample_rows(inst.m, set_size, trials,
                            seed, f"lemma6-p{prop}-samples")
        chunks = (rows[o:o + _CHUNK] for o in range(0, len(rows), _CHUNK))
        note = _SAMPLED_NOTE
    else:
        raise InputError(f"unknown mode {mode!r}")

    checked = 0
    failures = 0
    witnesses = []
    for chunk in chunks:
        if prop == 1:
            fails = _kernels.check_property1(inst.m, inst.k, inst.i, por,
                                             table, chunk)
        else:
            fails = _kernels.check_property2(inst.m, inst.k, inst.i, por,
                                             table, chunk, threshold)
        for row_idx, part in fails:
            failures += 1
            if len(witnesses) < _WITNESS_CAP:
                witnesses.append((part + 1, tuple(int(x)
                                                  for x in chunk[row_idx])))
        checked += len(chunk)
    return PropertyReport(prop, mode, checked, failures, tuple(witnesses),
                          trials, seed, note)


def check_property1(inst: Lemma6Instance, mode: str = "exhaustive",
                    trials: Optional[int] = None, seed: Optional[int] = None,
                    budgets: Budgets = DEFAULT_BUDGETS) -> PropertyReport:
    """Does every 2k-subset of the ground set contain an image of every part?"""
    if 2 * inst.k > inst.m:
        raise InputError("property 1 needs 2k <= m")
    return _run_check(inst, 1, 2 * inst.k, mode, trials, seed, budgets)


def check_property2(inst: Lemma6Instance, mode: str = "exhaustive",
                    trials: Optional[int] = None, seed: Optional[int] = None,
                    budgets: Budgets = DEFAULT_BUDGETS) -> PropertyReport:
    """Is every (k/(i+1))-subset inside at least k/(i+1) images of every part?"""
    if inst.k % (inst.i + 1):
        raise InputError("property 2 needs (i+1) to divide k")
    b = inst.k // (inst.i + 1)
    return _run_check(inst, 2, b, mode, trials, seed, budgets, threshold=b)


def reverify_property1_witness(inst: Lemma6Instance, part: int,
                               elements) -> bool:
    """Independent scan: True iff no image of the (1-based) part lies in the set."""
    a_set = set(int(x) for x in elements)
    for p in inst.part_positions(part - 1):
        if set(inst.subset_at(int(p))) <= a_set:
            return False
    return True


def reverify_property2_witness(inst: Lemma6Instance, part: int,
                               elements) -> bool:
    """Independent scan: True iff fewer than k/(i+1) images of the part
    contain the set."""
    b_set = set(int(x) for x in elements)
    threshold = inst.k // (inst.i + 1)
    count = 0
    for p in inst.part_positions(part - 1):
        if b_set <= set(inst.subset_at(int(p))):
            count += 1
            if count >= threshold:
                return False
    return True


# ---------------------------------------------------------------------------
# failure-probability estimation
# ---------------------------------------------------------------------------

def wilson_interval(successes: int, trials: int, z: float = 1.96
                    ) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials
                         + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class EstimateReport:
    m: int
    k: int
    i: int
    trials: int
    inner_samples: int
    seed: int
    p1_hat: float
    p1_interval: tuple[float, float]
    p2_hat: float
    p2_interval: tuple[float, float]
    note: str = _SAMPLED_NOTE


def estimate_failure_probability(m: int, k: int, i: int, trials: int,
                                 seed: int, inner_samples: int = 100_000,
                                 budgets: Budgets = DEFAULT_BUDGETS
                                 ) -> EstimateReport:
    """Fraction of random bijections that fail each property.

    Each trial draws a fresh bijection and judges it with sampled inner
    checks, so the estimates are lower bounds in expectation.
    """
    if k % (i + 1):
        raise InputError("estimation needs (i+1) to divide k")
    fail1 = fail2 = 0
    for t in range(trials):
        inst = sample_bijection(m, k, i, seed * 1_000_003 + t)
        r1 = check_property1(inst, "sampled", trials=inner_samples,
                             seed=seed * 7 + t, budgets=budgets)
        r2 = check_property2(inst, "sampled", trials=inner_samples,
                             seed=seed * 13 + t, budgets=budgets)
        fail1 += 1 if r1.failures else 0
        fail2 += 1 if r2.failures else 0
    return EstimateReport(
        m, k, i, trials, inner_samples, seed,
        fail1 / trials, wilson_interval(fail1, trials),
        fail2 / trials, wilson_interval(fail2, trials))


# ---------------------------------------------------------------------------
# uniform cliques
# ---------------------------------------------------------------------------

def is_uniform_clique(g: Graph, col: CliqueColoring, size: int,
                      num_colors: int, members) -> bool:
    """Clique of `size` vertices on which exactly `num_colors` colors appear,
    each on size/num_colors vertices."""
    members = tuple(members)
    if len(members) != size or not is_clique(g, members):
        return False
    counts: dict[int, int] = {}
    for lab in members:
        c = col.assignment[lab]
        counts[c] = counts.get(c, 0) + 1
    return len(counts) == num_colors and set(counts.values()) == {size // num_colors}


def find_uniform_clique(g: Graph, col: CliqueColoring, size: int,
                        num_colors: int):
    """First clique (by member indices) of `size` vertices colored uniformly
    with exactly `num_colors` colors, or None."""
    if size % num_colors:
        raise InputError("num_colors must divide size")
    adj = g.adjacency
    found: list[tuple[str, ...]] = []

    def rec(prefix: list[int], cand: int) -> bool:
        if len(prefix) == size:
            members = tuple(g.labels[v] for v in prefix)
            if is_uniform_clique(g, col, size, num_colors, members):
                found.append(members)
                return True
            return False
        if len(prefix) + cand.bit_count() < size:
            return False
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if rec(prefix + [v], m & adj[v]):
                return True
        return False

    full = (1 << g.n) - 1
    rec([], full)
    return found[0] if found else None


@dataclass(frozen=True)
class AssemblyResult:
    members: Optional[tuple[str, ...]]
    diagnostic: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.members is not None


def instance_bijection_for_expansion(inst: Lemma6Instance
                                     ) -> tuple[tuple[int, ...], ...]:
    """The instance's bijection as 1-based subset tuples, position order.

    Feeding this to expand_at_clique with spec (n=m, k=k) builds the petal
    whose wiring realizes the instance: attachment vertex p is adjacent to
    petal vertex x_j exactly when j-1 lies in the subset at position p.
    """
    return tuple(tuple(e + 1 for e in inst.subset_at(p))
                 for p in range(inst.N))


def assemble_uniform_clique(g: Graph, petal: Petal, col: CliqueColoring,
                            inst: Lemma6Instance) -> AssemblyResult:
    """Mechanically run the uniform-clique induction step on a petal.

    Requires the petal to have been built from the instance's bijection
    (attachment order = position order). Picks a color class of the petal
    with at least k/(i+1) vertices whose color is unused on the parts, takes
    its least k/(i+1) vertices as B, then from every part takes the least
    k/(i+1) attachment vertices complete to B. Absence of any ingredient is
    reported as a diagnostic, not an error.
    """
    if inst.k % (inst.i + 1):
        return AssemblyResult(None, "(i+1) does not divide k")
    if len(petal.attachment) != inst.N or len(petal.vertices) != inst.m:
        return AssemblyResult(None, "petal shape does not match the instance")
    b = inst.k // (inst.i + 1)

    part_colors: list[int] = []
    for j in range(inst.i):
        cols = {col.assignment[petal.attachment[int(p)]]
                for p in inst.part_positions(j)}
        if len(cols) != 1:
            return AssemblyResult(None, f"part {j + 1} is not monochromatic")
        part_colors.append(cols.pop())
    if len(set(part_colors)) != inst.i:
        return AssemblyResult(None, "parts share colors")

    x_by_color: dict[int, list[str]] = {}
    for lab in petal.vertices:
        x_by_color.setdefault(col.assignment[lab], []).append(lab)
    chosen_color = None
    for c in sorted(x_by_color):
        if c not in part_colors and len(x_by_color[c]) >= b:
            chosen_color = c
            break
    if chosen_color is None:
        return AssemblyResult(
            None, f"no color class of size {b} in the petal outside the "
            "part colors")
    class_members = sorted(x_by_color[chosen_color], key=g.index)
    b_set = tuple(class_members[:b])
    b_mask = g.mask_of(b_set)

    pieces = [b_set]
    for j in range(inst.i):
        complete = []
        for p in inst.part_positions(j):
            lab = petal.attachment[int(p)]
            if b_mask & ~g.adjacency_mask(g.index(lab)) == 0:
                complete.append(lab)
                if len(complete) == b:
                    break
        if len(complete) < b:
            return AssemblyResult(
                None, f"part {j + 1} has fewer than {b} vertices complete "
                "to the chosen set")
        pieces.append(tuple(sorted(complete, key=g.index)))
    members = tuple(sorted((lab for piece in pieces for lab in piece),
                           key=g.index))
    return AssemblyResult(members)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def instance_to_json(inst: Lemma6Instance) -> dict:
    masks = all_subset_masks(inst.m, inst.k)
    data = {
        "m": inst.m, "k": inst.k, "i": inst.i, "shape": inst.shape,
        "phi_masks": [int(masks[r]) for r in inst.ranks],
    }
    if inst.parts is not None:
        data["parts"] = [int(p) for p in inst.parts]
    return data


def instance_from_json(data: dict) -> Lemma6Instance:
    try:
        m, k, i = int(data["m"]), int(data["k"]), int(data["i"])
        phi_masks = data["phi_masks"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"instance JSON missing field: {exc}") from None
    masks = all_subset_masks(m, k)
    order = np.argsort(masks, kind="stable")
    masks_sorted = masks[order]
    queries = np.asarray(phi_masks, dtype=np.int64)
    pos = np.searchsorted(masks_sorted, queries)
    if pos.max(initial=0) >= len(masks) or \
            not np.array_equal(masks_sorted[pos], queries):
        raise InputError("phi_masks contains a value that is not a k-subset mask")
    ranks = order[pos]
    parts = data.get("parts")
    return Lemma6Instance(m, k, i, ranks,
                          None if parts is None
                          else np.asarray(parts, dtype=np.int64))


def save_instance(inst: Lemma6Instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_json(inst), fh)
        fh.write("\n")


def load_instance(path) -> Lemma6Instance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from None
    return instance_from_json(data)
