from fractions import Fraction
import random

import networkx as nx
import pytest
from hypothesis import given

from kernelforge.graph import (
    Graph, GraphError, complete_graph, cycle_graph, degeneracy_order, empty_graph, path_graph, star_graph,
)
from kernelforge.shallow_minor import (
    check_corollary_bounds, clique_bound, count_cliques, grad_exact, grad_lower_bound,
    is_shallow_packing, profile, run_contraction_sequence,
)

from conftest import graphs, random_graph, to_nx


def random_bipartite(rng, nx_side, ny_side, p):
    xs = list(range(nx_side))
    ys = list(range(nx_side, nx_side + ny_side))
    edges = [(x, y) for x in xs for y in ys if rng.random() < p]
    edges += [(a, b) for a in xs for b in xs if a < b and rng.random() < p / 2]
    return Graph(xs + ys, edges), xs


def test_contraction_examples():
    g = Graph(range(3), [(0, 1), (0, 2), (1, 2)])
    assert run_contraction_sequence(g, {0, 1}).steps == []
    star = star_graph(3)
    trace = run_contraction_sequence(star, {1, 2, 3})
    assert trace.steps
    assert trace.final_graph.subgraph({1, 2, 3}).m >= 1
    trace = run_contraction_sequence(empty_graph(3), set())
    assert trace.steps == [] and trace.final_graph == empty_graph(3)


def test_contraction_rejects_edges_inside_y():
    with pytest.raises(GraphError):
        run_contraction_sequence(path_graph(3), {0})


def test_contraction_invariants():
    rng = random.Random(9)
    for _ in range(50):
        g, xs = random_bipartite(rng, rng.randint(1, 7), rng.randint(0, 6), 0.4)
        trace = run_contraction_sequence(g, xs)
        assert len(trace.steps) <= len(xs) * (len(xs) - 1) // 2
        for st in trace.steps:
            assert st.x_edges_after > st.x_edges_before
        final = trace.final_graph
        for y in trace.survivors():
            nb = final.neighbors(y)
            assert all(final.has_edge(a, b) for a in nb for b in nb if a < b)


def test_grad_examples():
    assert grad_exact(empty_graph(4), 1).value == 0
    assert grad_exact(complete_graph(4), 0).value == Fraction(3, 2)
    assert grad_exact(cycle_graph(6), 1).value == 1
    k4e = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert grad_lower_bound(k4e, 0).value >= Fraction(5, 4)
    assert grad_lower_bound(cycle_graph(6), 1).value >= 1


@given(graphs(max_n=7))
def test_grad_lower_bound_below_exact(g):
    for d in (0, 1):
        low = grad_lower_bound(g, d)
        assert is_shallow_packing(g, low.witness, d) or not low.witness
        assert low.value <= grad_exact(g, d).value
    if g.n:
        assert grad_lower_bound(g, 0).value >= Fraction(g.m, g.n)


def test_clique_examples():
    assert count_cliques(complete_graph(3)) == 7
    assert count_cliques(empty_graph(5)) == 5
    assert count_cliques(path_graph(3)) == 5


@given(graphs(max_n=10))
def test_clique_count_matches_networkx_and_bound(g):
    count = count_cliques(g)
    assert count == sum(1 for _ in nx.enumerate_all_cliques(to_nx(g)))
    k, _ = degeneracy_order(g)
    if g.n:
        assert count <= clique_bound(k, g.n)


def test_corollary_bounds():
    rng = random.Random(4)
    s = [0, 1]
    edges = []
    comps = []
    nxt = 2
    for _ in range(10):
        comp = [nxt, nxt + 1]
        edges.append((nxt, nxt + 1))
        edges += [(x, nxt) for x in s if rng.random() < 0.6]
        comps.append(comp)
        nxt += 2
    g = Graph(range(nxt), edges)
    nab = grad_exact(g.subgraph(range(8)), 1).value
    rep = check_corollary_bounds(g, s, comps, max(nab, Fraction(1)))
    assert rep["large_degree_ok"] and rep["distinct_ok"]
    rep = check_corollary_bounds(path_graph(3), [], [[0, 1, 2]], 0)
    assert rep["large_degree_ok"] and rep["distinct_ok"]


def test_profile_shape():
    prof = profile(cycle_graph(5), [0, 1])
    assert prof["degeneracy"] == 2 and prof["cliques"] == 10
    assert [e["rank"] for e in prof["grad"]] == [0, 1]
