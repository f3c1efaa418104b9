import networkx as nx
import pytest
from hypothesis import given

from kernelforge.graph import Graph, complete_graph, cycle_graph, empty_graph, path_graph, petersen_graph
from kernelforge.oracles import (
    BudgetExceeded, OracleBudget, brute_exact_st_path, brute_longest_path, brute_vertex_cover,
)

from conftest import graphs, to_nx


@pytest.mark.parametrize("g,lp", [(Graph([0]), 0), (cycle_graph(5), 4), (petersen_graph(), 9),
                                  (empty_graph(3), 0), (path_graph(6), 5)])
def test_longest_path_values(g, lp):
    assert brute_longest_path(g) == lp


@pytest.mark.parametrize("g,vc", [(empty_graph(4), 0), (path_graph(4), 2), (complete_graph(4), 3),
                                  (petersen_graph(), 6)])
def test_vertex_cover_values(g, vc):
    assert brute_vertex_cover(g) == vc


def test_exact_st_path_examples():
    assert brute_exact_st_path(path_graph(3), 1, 1, 0)
    assert brute_exact_st_path(path_graph(3), 0, 2, 2)
    assert not brute_exact_st_path(path_graph(3), 0, 2, 1)
    assert brute_exact_st_path(cycle_graph(4), 0, 1, 3)


def _nx_longest_path(g):
    best = 0
    h = to_nx(g)
    for s in h:
        for t in h:
            if s < t:
                for p in nx.all_simple_paths(h, s, t):
                    best = max(best, len(p) - 1)
    return best


@given(graphs(max_n=7))
def test_longest_path_agrees_with_networkx(g):
    assert brute_longest_path(g) == _nx_longest_path(g)


@given(graphs(max_n=9))
def test_vertex_cover_agrees_with_independence_number(g):
    h = nx.complement(to_nx(g))
    alpha = max((len(c) for c in nx.find_cliques(h)), default=0)
    assert brute_vertex_cover(g) == g.n - alpha


def test_budget_fails_loudly():
    with pytest.raises(BudgetExceeded):
        brute_longest_path(path_graph(20), OracleBudget(max_vertices=10))
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)


def test_oracles_are_deterministic():
    g = petersen_graph()
    assert brute_longest_path(g) == brute_longest_path(g)
    assert brute_vertex_cover(g) == brute_vertex_cover(g)
