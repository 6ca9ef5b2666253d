"""Graph container, text format, and structural probes."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from d2color.graph import (GraphFormatError, bipartition, build_graph,
                           canonical_edge, girth, inductiveness, parse_graph,
                           relabel, structural_report, write_graph)

from conftest import cycle_graph, path_graph, small_graphs, star_graph
from oracles import nx_degeneracy, nx_girth, nx_is_bipartite


def test_canonical_edge_orders_endpoints():
    assert canonical_edge("b", "a") == ("a", "b")
    assert canonical_edge("a", "b") == ("a", "b")
    with pytest.raises(ValueError):
        canonical_edge("x", "x")


def test_build_graph_collapses_duplicates():
    g = build_graph([("a", "b"), ("b", "a"), ("a", "b")])
    assert g.edges == (("a", "b"),)
    assert g.vertices == ("a", "b")


def test_build_graph_isolated_vertices_and_coverage():
    g = build_graph([("a", "b")], vertices=["a", "b", "c"])
    assert "c" in g.vertices
    assert g.degree("c") == 0
    with pytest.raises(ValueError, match="not in the vertex set"):
        build_graph([("a", "b")], vertices=["a"])


def test_relabel_rejects_collisions():
    g = build_graph([("a", "b"), ("b", "c")])
    with pytest.raises(ValueError, match="collapses"):
        relabel(g, lambda v: "same")
    swapped = relabel(g, {"a": "c", "b": "b", "c": "a"})
    assert swapped == g


def test_text_round_trip():
    g = build_graph([("a", "b"), ("b", "c")], vertices=["a", "b", "c", "iso"])
    assert parse_graph(write_graph(g)) == g


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph("v a\ne a\n")
    with pytest.raises(GraphFormatError, match="self-loop"):
        parse_graph("e x x\n")
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_graph("q what\n")


def test_bipartition_even_cycle():
    res = bipartition(cycle_graph(6))
    assert res.is_bipartite
    assert res.odd_cycle is None
    for u, v in cycle_graph(6).edges:
        assert res.classes[u] != res.classes[v]


def test_bipartition_odd_cycle_witness():
    g = cycle_graph(5)
    res = bipartition(g)
    assert not res.is_bipartite
    cyc = res.odd_cycle
    assert len(cyc) % 2 == 1
    closed = list(cyc) + [cyc[0]]
    for u, v in zip(closed, closed[1:]):
        assert g.has_edge(u, v)
    assert len(set(cyc)) == len(cyc)


def test_girth_anchors():
    assert girth(cycle_graph(5)) == 5
    assert girth(cycle_graph(6)) == 6
    assert girth(path_graph(4)) is None
    assert girth(star_graph(3)) is None
    # two hexagons sharing one edge: shortest cycle still 6
    hexes = list(cycle_graph(6).edges) + [
        ("c0", "x1"), ("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "c1")]
    assert girth(build_graph(hexes)) == 6


def test_inductiveness_anchors():
    assert inductiveness(cycle_graph(6))[0] == 2
    assert inductiveness(star_graph(5))[0] == 1
    k4 = build_graph([(a, b) for i, a in enumerate("abcd")
                      for b in "abcd"[i + 1:]])
    assert inductiveness(k4)[0] == 3


@given(small_graphs())
def test_peel_order_witnesses_the_bound(g):
    bound, order = inductiveness(g)
    position = {v: i for i, v in enumerate(order)}
    assert sorted(order) == list(g.vertices)
    for v in g.vertices:
        earlier = sum(1 for w in g.adjacency[v] if position[w] < position[v])
        assert earlier <= bound


@given(small_graphs())
def test_probes_match_networkx(g):
    assert bipartition(g).is_bipartite == nx_is_bipartite(g)
    assert girth(g) == nx_girth(g)
    assert inductiveness(g)[0] == nx_degeneracy(g)


@given(small_graphs(), st.randoms(use_true_random=False))
def test_girth_and_degeneracy_are_relabel_invariant(g, rng):
    names = [f"w{i}" for i in range(len(g.vertices))]
    rng.shuffle(names)
    h = relabel(g, dict(zip(g.vertices, names)))
    assert girth(h) == girth(g)
    assert inductiveness(h)[0] == inductiveness(g)[0]


def test_structural_report_hexagon():
    rep = structural_report(cycle_graph(6))
    assert (rep.vertex_count, rep.edge_count) == (6, 6)
    assert rep.is_bipartite
    assert rep.girth == 6
    assert rep.max_degree == 2
    assert rep.inductiveness == 2
    assert "girth 6" in rep.as_text()


def test_structural_report_star():
    rep = structural_report(star_graph(3))
    assert rep.is_bipartite
    assert rep.girth is None
    assert rep.max_degree == 3
    assert rep.inductiveness == 1
    assert "acyclic" in rep.as_text()
