import json
import random

import pytest

from cliquecolor.errors import InputError
from cliquecolor.graph import (Graph, complement, glue_along_clique,
                               graph_from_json, graph_to_dot, graph_to_json,
                               induced_subgraph, is_clique, is_cobipartite)
from util import (complete_graph, cycle_graph, is_connected_after_removal,
                  random_graph)


def test_construction_rejects_bad_input():
    with pytest.raises(InputError):
        Graph([])
    with pytest.raises(InputError):
        Graph(["a", "a"])
    with pytest.raises(InputError):
        Graph(["a", "b"], [("a", "a")])
    with pytest.raises(InputError):
        Graph(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(InputError):
        Graph(["a", "b"], [("a", "c")])


def test_is_clique_basic():
    k3 = complete_graph(3)
    assert is_clique(k3, k3.labels)
    c4 = cycle_graph(4)
    assert not is_clique(c4, ("v1", "v3"))
    assert is_clique(c4, ())
    assert is_clique(c4, ("v2",))
    with pytest.raises(InputError):
        is_clique(c4, ("nope",))


def test_complement_examples():
    c4 = cycle_graph(4)
    comp = complement(c4)
    assert comp.edges() == [("v1", "v3"), ("v2", "v4")]
    k5 = complete_graph(5)
    assert complement(k5).edge_count() == 0
    c5 = cycle_graph(5)
    cc5 = complement(c5)
    assert cc5.edge_count() == 5
    assert all(cc5.degree(lab) == 2 for lab in cc5.labels)


def test_complement_involution():
    rnd = random.Random(11)
    for _ in range(30):
        g = random_graph(rnd.randint(1, 9), rnd.random(), rnd)
        assert complement(complement(g)) == g


def test_induced_subgraph():
    k5 = complete_graph(5)
    sub = induced_subgraph(k5, ("v1", "v3", "v5"))
    assert sub.n == 3 and sub.edge_count() == 3
    g = random_graph(8, 0.5, random.Random(3))
    assert induced_subgraph(g, g.labels) == g
    with pytest.raises(InputError):
        induced_subgraph(k5, ())


def test_induced_spaced_triangle():
    # nine-cycle with a triangle on three evenly spaced vertices
    labs = [f"v{j}" for j in range(1, 10)]
    edges = [(labs[a], labs[(a + 1) % 9]) for a in range(9)]
    edges += [("v1", "v4"), ("v4", "v7"), ("v1", "v7")]
    g = Graph(labs, edges)
    tri = induced_subgraph(g, ("v1", "v4", "v7"))
    assert tri.edge_count() == 3


def test_glue_triangles_along_edge_gives_diamond():
    t1 = Graph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    t2 = Graph("def", [("d", "e"), ("e", "f"), ("d", "f")])
    glued = glue_along_clique(t1, t2, ("a", "b"), ("d", "e"),
                              {"a": "d", "b": "e"})
    assert glued.n == 4
    assert glued.edge_count() == 5
    assert not glued.has_edge("c", "g2:f")   # the missing diamond edge


def test_glue_empty_clique_is_disjoint_union():
    t1 = complete_graph(3)
    t2 = cycle_graph(4)
    glued = glue_along_clique(t1, t2, (), (), {})
    assert glued.n == 7
    assert glued.edge_count() == t1.edge_count() + t2.edge_count()
    assert not is_connected_after_removal(glued, ())


def test_glue_matches_two_bijection_expansion():
    # gluing two petal gadgets along the shared clique reproduces the
    # expansion of an edge with both bijections
    from cliquecolor.expansion import ExpansionSpec, expand_at_clique
    base = Graph(["c1", "c2"], [("c1", "c2")])
    expanded, petals = expand_at_clique(base, ["c1", "c2"],
                                        ExpansionSpec(2, 1), "all")
    petal1 = Graph(["c1", "c2", "x1", "x2"],
                   [("c1", "c2"), ("x1", "x2"), ("c1", "x1"), ("c2", "x2")])
    petal2 = Graph(["c1", "c2", "y1", "y2"],
                   [("c1", "c2"), ("y1", "y2"), ("c1", "y2"), ("c2", "y1")])
    glued = glue_along_clique(petal1, petal2, ("c1", "c2"), ("c1", "c2"),
                              {"c1": "c1", "c2": "c2"})
    assert glued.n == expanded.n == 6
    iso = {"c1": "c1", "c2": "c2",
           "x1": petals[0].vertices[0], "x2": petals[0].vertices[1],
           "g2:y1": petals[1].vertices[0], "g2:y2": petals[1].vertices[1]}
    for a in glued.labels:
        for b in glued.labels:
            if a < b:
                assert glued.has_edge(a, b) == expanded.has_edge(iso[a], iso[b])


def test_glue_restriction_recovers_inputs():
    rnd = random.Random(5)
    g1 = random_graph(6, 0.6, rnd)
    k2 = complete_graph(4)
    c1 = ("v1", "v2") if g1.has_edge("v1", "v2") else ("v1",)
    c2 = ("v1", "v2") if len(c1) == 2 else ("v1",)
    glued = glue_along_clique(g1, k2, c1, c2, dict(zip(c1, c2)))
    assert induced_subgraph(glued, g1.labels) == g1
    # identified clique is a cutset when both sides keep private vertices
    assert not is_connected_after_removal(glued, c1)


def test_glue_input_errors():
    c4 = cycle_graph(4)
    k3 = complete_graph(3)
    with pytest.raises(InputError):
        glue_along_clique(c4, k3, ("v1", "v3"), ("v1", "v2"),
                          {"v1": "v1", "v3": "v2"})
    with pytest.raises(InputError):
        glue_along_clique(k3, k3, ("v1", "v2"), ("v1",), {"v1": "v1"})
    with pytest.raises(InputError):
        glue_along_clique(k3, k3, ("v1", "v2"), ("v1", "v2"), {"v1": "v1"})


def test_cobipartite_recognition():
    k4 = complete_graph(4)
    bip = is_cobipartite(k4)
    assert bip is not None
    assert is_clique(k4, bip.side_a) and is_clique(k4, bip.side_b)

    c4 = cycle_graph(4)
    bip = is_cobipartite(c4)
    assert bip is not None
    assert sorted((bip.side_a, bip.side_b)) == [("v1", "v2"), ("v3", "v4")]
    assert is_clique(c4, bip.side_a) and is_clique(c4, bip.side_b)

    assert is_cobipartite(cycle_graph(5)) is None


def test_cobipartite_matches_two_coloring_of_complement():
    rnd = random.Random(17)
    for _ in range(40):
        g = random_graph(rnd.randint(1, 9), rnd.random(), rnd)
        bip = is_cobipartite(g)
        if bip is not None:
            assert set(bip.side_a) | set(bip.side_b) == set(g.labels)
            assert not set(bip.side_a) & set(bip.side_b)
            assert is_clique(g, bip.side_a) and is_clique(g, bip.side_b)


def test_json_round_trip_and_rejections(tmp_path):
    g = random_graph(7, 0.4, random.Random(2))
    data = graph_to_json(g)
    assert graph_from_json(data) == g
    # edges listed once, lexicographically
    assert data["edges"] == sorted(data["edges"])
    text = json.dumps(data)
    assert graph_from_json(json.loads(text)) == g
    with pytest.raises(InputError):
        graph_from_json({"vertices": ["a"], "edges": [["a", "a"]]})
    with pytest.raises(InputError):
        graph_from_json({"edges": []})
    with pytest.raises(InputError):
        graph_from_json({"vertices": ["a", "b"],
                         "edges": [["a", "b"], ["b", "a"]]})


def test_dot_export():
    g = Graph(["a", "b"], [("a", "b")])
    dot = graph_to_dot(g)
    assert '"a" -- "b";' in dot
    assert dot.startswith("graph G {")
