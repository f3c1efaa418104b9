import random

import pytest
from hypothesis import given

from kernelforge.decomposition import treedepth_check
from kernelforge.graph import Graph, complete_graph, cycle_graph, disjoint_union, empty_graph, path_graph
from kernelforge.modulator import (
    approx_td_modulator, exact_td_modulator, minimal_obstruction, verify_modulator,
)

from conftest import graphs, random_graph


def test_shallow_graph_needs_no_modulator():
    assert approx_td_modulator(path_graph(3), 2).modulator == ()


def test_p4_d1():
    res = approx_td_modulator(path_graph(4), 1)
    assert len(res.modulator) <= 4
    assert path_graph(4).remove(res.modulator).m == 0
    assert len(exact_td_modulator(path_graph(4), 1).modulator) == 2


def test_two_p4_d2():
    g = disjoint_union(path_graph(4), path_graph(4))
    res = approx_td_modulator(g, 2)
    assert len(exact_td_modulator(g, 2).modulator) == 2
    assert len(res.modulator) <= 8
    res.certificate.validate(g.remove(res.modulator))


def test_exact_examples():
    assert exact_td_modulator(empty_graph(5), 1).modulator == ()
    assert len(exact_td_modulator(complete_graph(4), 1).modulator) == 3
    assert len(exact_td_modulator(cycle_graph(4), 2).modulator) == 1


def test_verify_examples():
    g = complete_graph(4)
    assert verify_modulator(g, g.vertices, 1)
    assert not verify_modulator(path_graph(4), (), 2)
    assert verify_modulator(path_graph(4), (1,), 2)


def test_bad_depth_rejected():
    with pytest.raises(ValueError):
        approx_td_modulator(path_graph(3), 0)


@given(graphs(max_n=9))
def test_approximation_ratio(g):
    for d in (1, 2):
        res = approx_td_modulator(g, d)
        assert verify_modulator(g, res.modulator, d)
        assert len(res.modulator) <= (1 << d) * len(exact_td_modulator(g, d).modulator)


@given(graphs(max_n=10))
def test_deleted_paths_are_obstructions(g):
    for d in (1, 2):
        for p in approx_td_modulator(g, d).deleted_paths:
            assert len(p) == 1 << d
            assert treedepth_check(g.subgraph(p), d) is None


def test_larger_random_graphs_verify():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, rng.randint(10, 12), 0.3)
        for d in (1, 2):
            res = approx_td_modulator(g, d)
            assert verify_modulator(g, res.modulator, d)
            assert len(res.modulator) <= (1 << d) * len(exact_td_modulator(g, d).modulator)


def test_minimal_obstruction():
    assert minimal_obstruction(path_graph(3), 2) is None
    obs = minimal_obstruction(cycle_graph(6), 2)
    assert obs is not None and treedepth_check(cycle_graph(6).subgraph(obs), 2) is None
