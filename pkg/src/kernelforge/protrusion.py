"""Bag marking and clustering into a protrusion decomposition (Y_0; Y_1, ..., Y_l)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .decomposition import dfs_path_decomposition
from .graph import Graph, connected_components


class InvariantError(AssertionError):
    """An internal guarantee of the decomposition failed (a bug trap)."""


@dataclass(frozen=True)
class Cluster:
    vertices: frozenset[int]
    boundary: frozenset[int]
    components: tuple[frozenset[int], ...] = ()

    def to_dict(self) -> dict:
        return {"vertices": sorted(self.vertices), "boundary": sorted(self.boundary)}


@dataclass(frozen=True)
class ProtrusionDecomposition:
    y0: frozenset[int]
    clusters: tuple[Cluster, ...]
    d: int = 0
    t: int = 0
    marked_bags: tuple[frozenset[int], ...] = field(default=(), compare=False)

    def validate(self, g: Graph) -> None:
        seen = set(self.y0)
        boundaries = set()
        for c in self.clusters:
            if seen & c.vertices:
                raise InvariantError("cluster overlaps Y_0 or another cluster")
            seen |= c.vertices
            if c.boundary != g.neighborhood(c.vertices):
                raise InvariantError("cluster boundary is not N(cluster)")
            if not c.boundary <= self.y0:
                raise InvariantError("cluster boundary leaves Y_0")
            if c.boundary in boundaries:
                raise InvariantError("two clusters share a boundary")
            boundaries.add(c.boundary)
        if seen != set(g.vertices):
            raise InvariantError("Y_0 and clusters do not partition V(G)")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "t": self.t,
            "y0": sorted(self.y0),
            "marked_bags": [sorted(b) for b in self.marked_bags],
            "clusters": [c.to_dict() for c in self.clusters],
        }


class _PrefixComponents:
    """Union-find over the prefix graph, tracking each part's neighbors in S."""

    def __init__(self, g: Graph, s: frozenset[int], allowed: set[int]):
        self.g = g
        self.s = s
        self.allowed = allowed
        self.parent: dict[int, int] = {}
        self.nbrs: dict[int, set[int]] = {}

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if len(self.nbrs[ra]) < len(self.nbrs[rb]):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.nbrs[ra] |= self.nbrs.pop(rb)
        return ra

    def add(self, v: int) -> int:
        self.parent[v] = v
        self.nbrs[v] = {u for u in self.g.neighbors(v) if u in self.s}
        root = v
        for u in self.g.neighbors(v):
            if u in self.parent and u in self.allowed:
                root = self.union(root, u)
        return self.find(v)


def mark_bags(g: Graph, s: Iterable[int], d: int, t: int) -> tuple[frozenset[int], list[frozenset[int]]]:
    """Sweep DFS path decompositions left to right, marking bags that complete
    a connected subgraph with at least t neighbors in s.

    Returns (Y_0, marked bags in marking order).
    """
    if t < 1:
        raise ValueError("t must be positive")
    s = frozenset(s)
    marked: list[frozenset[int]] = []
    for comp in connected_components(g, s):
        if len(g.neighborhood(comp) & s) < t:
            continue
        bags = dfs_path_decomposition(g, comp).bags
        deleted: set[int] = set()
        allowed = set(comp)
        prefix: list[int] = []
        uf = _PrefixComponents(g, s, allowed)
        for bag in bags:
            live = [v for v in sorted(bag) if v not in deleted]
            hit = False
            for v in live:
                if v in uf.parent:
                    continue
                prefix.append(v)
                root = uf.add(v)
                if len(uf.nbrs[root]) >= t:
                    hit = True
            if not hit:
                continue
            marked.append(frozenset(live))
            deleted.update(live)
            allowed.difference_update(live)
            prefix = [v for v in prefix if v not in deleted]
            uf = _PrefixComponents(g, s, allowed)
            for v in prefix:
                uf.add(v)
    y0 = frozenset(s.union(*marked)) if marked else s
    return y0, marked


def cluster_components(g: Graph, y0: Iterable[int], d: int = 0, t: int = 0,
                       marked: Iterable[frozenset[int]] = ()) -> ProtrusionDecomposition:
    """Group the components of g - y0 by their exact neighborhood in y0."""
    y0 = frozenset(y0)
    groups: dict[frozenset[int], list[frozenset[int]]] = {}
    for comp in connected_components(g, y0):
        groups.setdefault(g.neighborhood(comp), []).append(comp)
    clusters = [
        Cluster(frozenset().union(*comps), boundary, tuple(comps))
        for boundary, comps in groups.items()
    ]
    clusters.sort(key=lambda c: (sorted(c.boundary), min(c.vertices)))
    return ProtrusionDecomposition(y0, tuple(clusters), d, t, tuple(marked))


def boundary_bound(d: int, t: int) -> int:
    return 2 * ((1 << d) - 1) + t


def decompose(g: Graph, s: Iterable[int], d: int, t: int) -> ProtrusionDecomposition:
    s = frozenset(s)
    y0, marked = mark_bags(g, s, d, t)
    pd = cluster_components(g, y0, d, t, marked)
    bound = boundary_bound(d, t)
    for c in pd.clusters:
        if len(c.boundary) > bound:
            raise InvariantError(f"cluster boundary {len(c.boundary)} exceeds 2(2^d-1)+t = {bound}")
        for comp in c.components:
            if len(c.boundary & s) >= t:
                raise InvariantError("residual component keeps >= t neighbors in the modulator")
    return pd
