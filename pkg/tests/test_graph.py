import networkx as nx
import pytest
from hypothesis import given

from kernelforge.graph import (
    Graph, GraphError, ParseError, complete_graph, connected_components, cycle_graph,
    degeneracy_order, format_pace, induced_subgraph, parse_graph, path_graph, star_graph,
)

from conftest import graphs, to_nx


def test_parse_smallest_pace():
    g = parse_graph("p gr 2 1\n1 2")
    assert (g.n, g.m) == (2, 1)
    assert g.has_edge(0, 1)


def test_parse_triangle_with_comments():
    g = parse_graph("c a triangle\np gr 3 3\n1 2\n2 3\n1 3\n")
    assert g == complete_graph(3)


def test_edge_list_collapses_duplicates():
    g = parse_graph("# path\n1 2\n2 3\n2 3", format="edge-list")
    assert (g.n, g.m) == (3, 2)
    assert g == path_graph(3)


@pytest.mark.parametrize("text,fragment", [
    ("p gr 1 1\n1 1", "self-loop"),
    ("p gr 2 1\n1 3", "out of range"),
    ("p gr 2 2\n1 2", "declares 2 edges"),
    ("1 2", "before 'p gr'"),
    ("p gr 2 1\np gr 2 1\n1 2", "duplicate header"),
    ("p gr 2 1\n1 x", None),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_graph(text)


def test_self_loop_is_error_in_edge_list():
    with pytest.raises(GraphError):
        parse_graph("2 2", format="edge-list")


def test_pace_round_trip():
    g = cycle_graph(5)
    assert parse_graph(format_pace(g, ["five cycle"])) == g


def test_components_examples():
    assert connected_components(complete_graph(3)) == [frozenset({0, 1, 2})]
    assert connected_components(path_graph(3), excluded={1}) == [frozenset({0}), frozenset({2})]
    # C5 on v1..v5 (ids 0..4) minus v1, v3
    assert connected_components(cycle_graph(5), excluded={0, 2}) == [frozenset({1}), frozenset({3, 4})]


def test_degeneracy_examples():
    assert degeneracy_order(complete_graph(4))[0] == 3
    assert degeneracy_order(star_graph(5))[0] == 1
    assert degeneracy_order(path_graph(6))[0] == 1
    assert degeneracy_order(cycle_graph(5))[0] == 2


def test_induced_subgraph_examples():
    h, remap = induced_subgraph(complete_graph(3), {0, 2})
    assert (h.n, h.m) == (2, 1) and remap == [0, 2]
    assert induced_subgraph(cycle_graph(4), set())[0].n == 0
    h, _ = induced_subgraph(path_graph(5), {0, 4})
    assert (h.n, h.m) == (2, 0)


@given(graphs(max_n=9))
def test_adjacency_symmetric_and_sorted(g):
    for v in g.vertices:
        ns = g.neighbors(v)
        assert list(ns) == sorted(ns)
        assert all(v in g.neighbors(u) for u in ns)


@given(graphs(max_n=9))
def test_components_partition(g):
    excluded = set(g.vertices[::3])
    comps = connected_components(g, excluded)
    union = set().union(*comps) if comps else set()
    assert union == set(g.vertices) - excluded
    assert sum(len(c) for c in comps) == len(union)
    expected = {frozenset(c) for c in nx.connected_components(to_nx(g.remove(excluded)))}
    assert set(comps) == expected


@given(graphs(max_n=9))
def test_degeneracy_matches_core_number(g):
    k, order = degeneracy_order(g)
    assert sorted(order) == list(g.vertices)
    assert k == max(nx.core_number(to_nx(g)).values(), default=0)
    assert k <= g.max_degree()
    if g.n:
        assert 2 * k * g.n >= 2 * g.m  # k >= m/n


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph([0], [(0, 0)])
    with pytest.raises(GraphError):
        Graph([-1])
    with pytest.raises(GraphError):
        path_graph(3).subgraph([7])
