import random

import pytest
from hypothesis import given, strategies as st

from kernelforge.generators import random_modulated
from kernelforge.graph import Graph, connected_components, grid_graph, path_graph, star_graph
from kernelforge.modulator import approx_td_modulator
from kernelforge.protrusion import boundary_bound, cluster_components, decompose, mark_bags


def residual_ok(g, pd, s, t):
    for comp in connected_components(g, pd.y0):
        assert len(g.neighborhood(comp) & s) <= t - 1


def test_no_heavy_component_means_no_marks():
    g = star_graph(4)
    y0, marked = mark_bags(g, {0}, 1, 2)
    assert y0 == {0} and marked == []


def test_p3_attached_to_two_modulator_vertices():
    # x=0, y=1, P3 on 2-3-4 with both ends adjacent to both
    g = Graph(range(5), [(2, 3), (3, 4), (0, 2), (1, 2), (0, 4), (1, 4)])
    y0, marked = mark_bags(g, {0, 1}, 2, 2)
    assert len(marked) == 1
    assert y0 == {0, 1} | marked[0]
    pd = decompose(g, {0, 1}, 2, 2)
    residual_ok(g, pd, {0, 1}, 2)
    pd.validate(g)


def test_cluster_examples():
    g = star_graph(3)
    assert cluster_components(g, g.vertices).clusters == ()
    pd = cluster_components(g, {0})
    assert len(pd.clusters) == 1
    assert pd.clusters[0].boundary == {0} and pd.clusters[0].vertices == {1, 2, 3}
    # components with boundaries {a} and {a, b}
    h = Graph(range(4), [(0, 2), (0, 3), (1, 3)])
    pd = cluster_components(h, {0, 1})
    assert sorted(sorted(c.boundary) for c in pd.clusters) == [[0], [0, 1]]


def test_decompose_examples():
    g = path_graph(2)
    pd = decompose(g, g.vertices, 1, 2)
    assert pd.y0 == set(g.vertices) and pd.clusters == ()
    grid = grid_graph(4, 4)
    pd = decompose(grid, {0}, 3, 3)
    pd.validate(grid)
    residual_ok(grid, pd, {0}, 3)
    apex = Graph(range(9), [(i, i + 1) for i in range(1, 8)] + [(0, i) for i in range(1, 9)])
    pd = decompose(apex, {0}, 3, 2)
    assert pd.y0 == {0} and len(pd.clusters) == 1


@given(st.integers(0, 10_000), st.integers(1, 2), st.integers(1, 4))
def test_decomposition_bounds(seed, d, t):
    inst = random_modulated(14, 3, d, seed)
    g, s = inst.graph, frozenset(inst.modulator)
    pd = decompose(g, s, d, t)
    pd.validate(g)
    residual_ok(g, pd, s, t)
    assert all(len(c.boundary) <= boundary_bound(d, t) for c in pd.clusters)


def test_rejects_nonpositive_t():
    with pytest.raises(ValueError):
        mark_bags(path_graph(3), {0}, 1, 0)
