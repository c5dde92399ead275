import math
import random
from itertools import combinations

import numpy as np
import pytest

from cliquecolor.coloring import CliqueColoring
from cliquecolor.config import Budgets
from cliquecolor.errors import BudgetExceeded, InputError
from cliquecolor.expansion import ExpansionSpec, expand_at_clique
from cliquecolor.lemma6 import (Lemma6Instance, all_subset_masks,
                                assemble_uniform_clique, binom_table,
                                check_property1, check_property2,
                                estimate_failure_probability,
                                find_uniform_clique, instance_bijection_for_expansion,
                                instance_from_json, instance_to_json,
                                is_uniform_clique, rank_to_elements,
                                reverify_property1_witness,
                                reverify_property2_witness, sample_bijection,
                                wilson_interval)
from cliquecolor._kernels import subset_rank
from util import complete_graph


def test_rank_unrank_round_trip():
    for m, k in [(4, 2), (6, 3), (7, 2), (9, 4)]:
        table = binom_table(m, k)
        for r, combo in enumerate(combinations(range(m), k)):
            assert subset_rank(combo, m, k, table) == r
            assert rank_to_elements(r, m, k) == combo


def test_sample_bijection_is_validated_permutation():
    inst = sample_bijection(6, 2, 3, seed=1)
    assert inst.N == 15 and inst.block == 5
    assert sorted(inst.ranks.tolist()) == list(range(15))
    assert inst.shape == "generalized"
    with pytest.raises(InputError):
        sample_bijection(6, 2, 4, seed=1)   # 4 does not divide 15
    with pytest.raises(InputError):
        Lemma6Instance(6, 2, 3, np.zeros(15, dtype=np.int64))


def test_paper_shape_label():
    inst = sample_bijection(36, 6, 2, seed=0)
    assert inst.shape == "paper"


def test_sample_is_seed_deterministic():
    a = sample_bijection(8, 3, 2, seed=7)
    b = sample_bijection(8, 3, 2, seed=7)
    c = sample_bijection(8, 3, 2, seed=8)
    assert np.array_equal(a.ranks, b.ranks)
    assert not np.array_equal(a.ranks, c.ranks)


def _oracle_property1_failures(inst):
    """Direct double loop over all 2k-sets and parts."""
    failures = set()
    images = [set(inst.subset_at(p)) for p in range(inst.N)]
    for a in combinations(range(inst.m), 2 * inst.k):
        a_set = set(a)
        for j in range(inst.i):
            hit = any(images[int(p)] <= a_set
                      for p in inst.part_positions(j))
            if not hit:
                failures.add((j + 1, a))
    return failures


def _oracle_property2_failures(inst):
    failures = set()
    b = inst.k // (inst.i + 1)
    images = [set(inst.subset_at(p)) for p in range(inst.N)]
    for bb in combinations(range(inst.m), b):
        b_set = set(bb)
        for j in range(inst.i):
            count = sum(1 for p in inst.part_positions(j)
                        if b_set <= images[int(p)])
            if count < b:
                failures.add((j + 1, bb))
    return failures


def test_trivial_single_part_passes_exhaustively():
    for m, k in [(4, 2), (6, 2), (8, 2), (8, 4)]:
        inst = sample_bijection(m, k, 1, seed=3)
        r1 = check_property1(inst)
        r2 = check_property2(inst)
        assert r1.mode == "exhaustive" and r1.failures == 0
        assert r1.checked == math.comb(m, 2 * k)
        assert r2.failures == 0


def test_m_equal_2k_always_passes_property1():
    inst = sample_bijection(6, 3, 2, seed=4)     # C(6,3)=20, 2 | 20
    report = check_property1(inst)
    assert report.checked == 1 and report.failures == 0


def test_adversarial_instance_exact_failure_count():
    # all subsets containing element 0 packed into the first part
    m, k, i = 6, 2, 3
    with_zero = [r for r, c in enumerate(combinations(range(m), k))
                 if 0 in c]
    without = [r for r in range(15) if r not in with_zero]
    ranks = np.array(with_zero + without, dtype=np.int64)
    inst = Lemma6Instance(m, k, i, ranks)
    report = check_property1(inst)
    expected = _oracle_property1_failures(inst)
    assert report.failures == len(expected)
    got = {(j, s) for j, s in report.witnesses}
    assert got == expected
    # every 2k-set avoiding element 0 defeats part 1 (and nothing else does)
    part1 = {s for j, s in expected if j == 1}
    assert part1 == set(combinations(range(1, 6), 4))
    assert len(part1) == math.comb(5, 4)
    for j, s in report.witnesses:
        assert reverify_property1_witness(inst, j, s)


def test_property2_exhaustive_matches_oracle():
    rnd = random.Random(13)
    for seed in range(6):
        inst = sample_bijection(8, 3, 2, seed=seed)
        report = check_property2(inst)
        expected = _oracle_property2_failures(inst)
        assert report.failures == len(expected)
        assert {(j, s) for j, s in report.witnesses} == expected
        for j, s in report.witnesses:
            assert reverify_property2_witness(inst, j, s)
    del rnd


def test_desk_scale_16_6_2():
    # C(16,6) = 8008 positions; both properties are exhaustively checkable
    inst = sample_bijection(16, 6, 2, seed=1606)
    assert inst.N == 8008
    r1 = check_property1(inst)
    assert r1.checked == math.comb(16, 12)
    # a covering failure has probability below the exact union bound,
    # which is astronomically small here
    from cliquecolor.bounds import p1_union_bound_exact
    bound = p1_union_bound_exact(16, 6, 2)
    assert math.log2(bound.numerator) - math.log2(bound.denominator) < -250
    assert r1.failures == 0

    r2 = check_property2(inst)
    assert r2.checked == 120
    images = [set(inst.subset_at(p)) for p in range(inst.N)]
    expected = set()
    for bb in combinations(range(16), 2):
        b_set = set(bb)
        for j in range(2):
            count = sum(1 for p in inst.part_positions(j)
                        if b_set <= images[int(p)])
            if count < 2:
                expected.add((j + 1, bb))
    assert r2.failures == len(expected)
    assert {(j, s) for j, s in r2.witnesses} == expected


def test_estimate_paper_smallest_scale():
    rep = estimate_failure_probability(36, 6, 2, trials=2, seed=17,
                                       inner_samples=10_000)
    assert rep.p1_hat == 0.0 and rep.p2_hat == 0.0


def test_property2_requires_divisibility():
    inst = sample_bijection(6, 2, 3, seed=1)
    with pytest.raises(InputError):
        check_property2(inst)    # (i+1)=4 does not divide k=2


def test_sampled_failures_subset_of_exhaustive():
    m, k, i = 6, 2, 3
    with_zero = [r for r, c in enumerate(combinations(range(m), k))
                 if 0 in c]
    without = [r for r in range(15) if r not in with_zero]
    inst = Lemma6Instance(m, k, i, np.array(with_zero + without,
                                            dtype=np.int64))
    exhaustive = {(j, s) for j, s in check_property1(inst).witnesses}
    for seed in range(5):
        sampled = check_property1(inst, "sampled", trials=60, seed=seed)
        assert sampled.note
        for j, s in sampled.witnesses:
            assert (j, s) in exhaustive


def test_exhaustive_budget_refusal():
    inst = sample_bijection(36, 6, 2, seed=0)
    with pytest.raises(BudgetExceeded):
        check_property1(inst, "exhaustive")
    small = Budgets(max_exhaustive=10)
    with pytest.raises(BudgetExceeded):
        check_property1(sample_bijection(6, 2, 3, seed=0), budgets=small)


def test_partition_override():
    m, k, i = 6, 2, 3
    base = sample_bijection(m, k, i, seed=2)
    parts = np.array([j % i for j in range(15)], dtype=np.int64)
    inst = Lemma6Instance(m, k, i, base.ranks.copy(), parts)
    assert inst.part_of_position(0) == 0 and inst.part_of_position(1) == 1
    report = check_property1(inst)
    assert report.failures == len(_oracle_property1_failures(inst))
    with pytest.raises(InputError):
        Lemma6Instance(m, k, i, base.ranks.copy(),
                       np.zeros(15, dtype=np.int64))  # unequal parts


def test_estimate_single_part_is_zero():
    rep = estimate_failure_probability(6, 2, 1, trials=5, seed=11,
                                       inner_samples=200)
    assert rep.p1_hat == 0.0 and rep.p2_hat == 0.0
    assert rep.p1_interval[0] == 0.0


def test_estimate_runs_on_generalized_instance():
    rep = estimate_failure_probability(8, 3, 2, trials=4, seed=5,
                                       inner_samples=100)
    assert 0.0 <= rep.p1_hat <= 1.0 and 0.0 <= rep.p2_hat <= 1.0


def test_wilson_interval_sanity():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0.0 and 0 < hi < 0.05
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi


def test_find_uniform_clique_examples():
    k6 = complete_graph(6)
    col = CliqueColoring({f"v{j}": (1 if j <= 3 else 2) for j in range(1, 7)})
    assert find_uniform_clique(k6, col, 6, 2) == tuple(f"v{j}"
                                                       for j in range(1, 7))
    col_bad = CliqueColoring({"v1": 1, "v2": 1, "v3": 1, "v4": 1,
                              "v5": 2, "v6": 2})
    assert find_uniform_clique(k6, col_bad, 6, 2) is None
    mono = CliqueColoring({f"v{j}": 1 for j in range(1, 5)})
    k4 = complete_graph(4)
    assert find_uniform_clique(k4, mono, 4, 1) == ("v1", "v2", "v3", "v4")
    with pytest.raises(InputError):
        find_uniform_clique(k6, col, 5, 2)


def test_find_uniform_clique_prefers_least():
    k4 = complete_graph(4)
    col = CliqueColoring({"v1": 1, "v2": 2, "v3": 1, "v4": 2})
    assert find_uniform_clique(k4, col, 2, 2) == ("v1", "v2")


def _petal_fixture(m, k, i, seed, extra_color_rule="fresh"):
    """Host K_N expanded by the instance's bijection, with parts colored
    1..i and the petal given a fresh color class of the right size."""
    inst = sample_bijection(m, k, i, seed=seed)
    host = complete_graph(inst.N)
    bij = instance_bijection_for_expansion(inst)
    g, petals = expand_at_clique(host, host.labels, ExpansionSpec(m, k),
                                 [bij], budgets=Budgets(max_vertices=200))
    petal = petals[0]
    b = k // (i + 1)
    colors = {}
    for j in range(i):
        for p in inst.part_positions(j):
            colors[petal.attachment[int(p)]] = j + 1
    for idx, lab in enumerate(petal.vertices):
        if extra_color_rule == "fresh":
            colors[lab] = i + 1 if idx < b else i + 2
        else:
            colors[lab] = 1
    return g, petal, CliqueColoring(colors), inst


def test_assemble_uniform_clique_single_part():
    g, petal, col, inst = _petal_fixture(6, 2, 1, seed=21)
    assert check_property2(inst).failures == 0
    result = assemble_uniform_clique(g, petal, col, inst)
    assert result.ok
    assert is_uniform_clique(g, col, 2, 2, result.members)


def test_assemble_uniform_clique_two_parts():
    g, petal, col, inst = _petal_fixture(8, 3, 2, seed=2)
    assert check_property1(inst).failures == 0
    assert check_property2(inst).failures == 0
    result = assemble_uniform_clique(g, petal, col, inst)
    assert result.ok
    assert is_uniform_clique(g, col, 3, 3, result.members)


def test_assemble_diagnostics():
    g, petal, col, inst = _petal_fixture(6, 2, 1, seed=21,
                                         extra_color_rule="reuse")
    result = assemble_uniform_clique(g, petal, col, inst)
    assert not result.ok
    assert "no color class" in result.diagnostic

    g, petal, col, inst = _petal_fixture(6, 2, 1, seed=21)
    broken = dict(col.assignment)
    broken[petal.attachment[0]] = 99
    result = assemble_uniform_clique(g, petal, CliqueColoring(broken), inst)
    assert not result.ok and "monochromatic" in result.diagnostic


def test_instance_serialization_round_trip(tmp_path):
    inst = sample_bijection(8, 3, 2, seed=9)
    data = instance_to_json(inst)
    back = instance_from_json(data)
    assert np.array_equal(back.ranks, inst.ranks)
    assert back.parts is None
    masks = all_subset_masks(8, 3)
    assert data["phi_masks"][0] == int(masks[inst.ranks[0]])

    parts = np.array([j % 2 for j in range(inst.N)], dtype=np.int64)
    inst2 = Lemma6Instance(8, 3, 2, inst.ranks.copy(), parts)
    back2 = instance_from_json(instance_to_json(inst2))
    assert np.array_equal(back2.parts, parts)

    with pytest.raises(InputError):
        instance_from_json({"m": 4, "k": 2, "i": 1, "phi_masks": [1, 2, 3]})
