import pytest

from crowder.pairgraph import build_graph, classify_components, connected_components
from crowder.similarity import make_pair


def _pairs(*edges):
    return [make_pair(a, b, 1.0) for a, b in edges]


def test_demo_graph_shape(demo_pairs):
    g = build_graph(demo_pairs)
    assert len(g.vertices) == 9
    assert len(g.edges) == 10


def test_empty_graph():
    g = build_graph([])
    assert not g.vertices
    assert connected_components(g) == []


def test_path_graph():
    g = build_graph(_pairs(("a", "b"), ("b", "c")))
    assert g.vertices == {"a", "b", "c"}
    assert len(g.edges) == 2
    assert g.adjacency["b"] == {"a", "c"}


def test_demo_components(demo_pairs):
    comps = connected_components(build_graph(demo_pairs))
    assert [c.vertices for c in comps] == [
        ("r1", "r2", "r3", "r4", "r5", "r6", "r7"),
        ("r8", "r9"),
    ]
    assert len(comps[0].edges) == 9
    assert comps[1].edges == (("r8", "r9"),)


def test_complete_graph_single_component():
    vs = [f"k{i}" for i in range(5)]
    edges = [(vs[i], vs[j]) for i in range(5) for j in range(i + 1, 5)]
    comps = connected_components(build_graph(_pairs(*edges)))
    assert len(comps) == 1
    assert len(comps[0].edges) == 10


def test_components_partition_edges_and_vertices(demo_pairs):
    g = build_graph(demo_pairs)
    comps = connected_components(g)
    all_vertices = [v for c in comps for v in c.vertices]
    assert sorted(all_vertices) == sorted(g.vertices)
    assert len(all_vertices) == len(set(all_vertices))
    all_edges = [e for c in comps for e in c.edges]
    assert sorted(all_edges) == sorted(g.edges)


def test_classify_demo(demo_pairs):
    comps = connected_components(build_graph(demo_pairs))
    small, large = classify_components(comps, 4)
    assert [c.vertices for c in large] == [("r1", "r2", "r3", "r4", "r5", "r6", "r7")]
    assert [c.vertices for c in small] == [("r8", "r9")]


def test_classify_boundary_component_is_small():
    comps = connected_components(build_graph(_pairs(("a", "b"), ("b", "c"), ("c", "d"))))
    small, large = classify_components(comps, 4)
    assert len(small) == 1 and not large


def test_classify_all_small_when_k_large(demo_pairs):
    comps = connected_components(build_graph(demo_pairs))
    small, large = classify_components(comps, 10)
    assert len(small) == 2 and not large


def test_classify_rejects_tiny_k(demo_pairs):
    comps = connected_components(build_graph(demo_pairs))
    with pytest.raises(ValueError):
        classify_components(comps, 1)
