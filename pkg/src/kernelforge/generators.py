"""Seeded instance generators with a planted treedepth modulator."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, grid_graph
from .modulator import verify_modulator

KINDS = ("apex-pendants", "subdivided-grid", "random-modulated")


@dataclass(frozen=True)
class Instance:
    graph: Graph
    modulator: tuple[int, ...]
    d: int
    kind: str
    params: dict

    def comments(self) -> list[str]:
        """Header comments recording how the instance was made."""
        ps = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        mod = " ".join(str(v + 1) for v in self.modulator)
        return [f"kind {self.kind} {ps}", f"modulator d={self.d} {mod}".rstrip()]


def apex_pendants(k: int, copies: int, d: int) -> Instance:
    """k apex vertices (ids 0..k-1), each adjacent to every vertex of ``copies``
    paths on 2^d - 1 vertices. For d = 1 this is a star of pendant edges."""
    if k < 0 or copies < 0 or d < 1:
        raise ValueError("apex-pendants needs k >= 0, copies >= 0, d >= 1")
    size = (1 << d) - 1
    vertices = list(range(k + copies * size))
    edges = []
    for c in range(copies):
        base = k + c * size
        piece = range(base, base + size)
        edges += [(v, v + 1) for v in piece[:-1]]
        edges += [(a, v) for a in range(k) for v in piece]
    return Instance(Graph(vertices, edges), tuple(range(k)), d, "apex-pendants",
                    {"k": k, "copies": copies, "d": d})


def subdivided_grid(rows: int, cols: int, subdiv: int) -> Instance:
    """A rows x cols grid with every edge replaced by a path through ``subdiv``
    new vertices. The grid vertices form the planted modulator."""
    if rows < 1 or cols < 1 or subdiv < 0:
        raise ValueError("subdivided-grid needs rows, cols >= 1 and subdiv >= 0")
    grid = grid_graph(rows, cols)
    nxt = grid.n
    edges = []
    for u, v in grid.edges():
        chain = [u] + list(range(nxt, nxt + subdiv)) + [v]
        nxt += subdiv
        edges += list(zip(chain, chain[1:]))
    d = subdiv.bit_length()  # treedepth of a path on subdiv vertices
    return Instance(Graph(range(nxt), edges), tuple(grid.vertices), d, "subdivided-grid",
                    {"rows": rows, "cols": cols, "subdiv": subdiv})


def random_modulated(n: int, k: int, d: int, seed: int, p: float = 0.3) -> Instance:
    """Random graph on n vertices whose first k vertices are a treedepth-d modulator.

    The other vertices get a random forest of height d; extra edges only join
    ancestor-descendant pairs, so the forest closure still bounds the treedepth.
    """
    if not (0 <= k <= n) or d < 1:
        raise ValueError("random-modulated needs 0 <= k <= n and d >= 1")
    rng = random.Random(seed)
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    edges = set()
    for v in range(k, n):
        choices = [u for u in parent if depth[u] < d]
        if choices and rng.random() < 0.75:
            u = rng.choice(choices)
            parent[v], depth[v] = u, depth[u] + 1
            edges.add((u, v))
            a = parent[u]
            while a is not None:
                if rng.random() < p:
                    edges.add((a, v))
                a = parent[a]
        else:
            parent[v], depth[v] = None, 1
    for a in range(k):
        for v in range(n):
            if v != a and (v >= k or v > a) and rng.random() < p:
                edges.add((min(a, v), max(a, v)))
    return Instance(Graph(range(n), sorted(edges)), tuple(range(k)), d, "random-modulated",
                    {"n": n, "k": k, "d": d, "seed": seed})


def generate_instance(kind: str, params: dict, seed: int = 0) -> Instance:
    """Build an instance of the given kind and check the planted modulator."""
    if kind == "apex-pendants":
        inst = apex_pendants(int(params.get("k", 1)), int(params.get("copies", 10)), int(params.get("d", 1)))
    elif kind == "subdivided-grid":
        inst = subdivided_grid(int(params.get("rows", 5)), int(params.get("cols", 5)), int(params.get("subdiv", 3)))
    elif kind == "random-modulated":
        inst = random_modulated(int(params.get("n", 12)), int(params.get("k", 2)), int(params.get("d", 2)),
                                seed, float(params.get("p", 0.3)))
    else:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
    if not verify_modulator(inst.graph, inst.modulator, inst.d):
        raise AssertionError(f"planted set is not a treedepth-{inst.d} modulator")
    return inst
