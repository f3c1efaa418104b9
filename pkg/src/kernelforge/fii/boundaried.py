"""Boundaried graphs: gluing, ungluing and canonical encodings."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from ..graph import Graph, GraphError


@dataclass(frozen=True)
class BoundariedGraph:
    """A graph with boundary vertices labeled 1..t (label i = boundary[i-1])."""

    graph: Graph
    boundary: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.boundary)) != len(self.boundary):
            raise GraphError("boundary vertices must be distinct")
        for v in self.boundary:
            if v not in self.graph:
                raise GraphError(f"boundary vertex {v} not in graph")

    @property
    def t(self) -> int:
        return len(self.boundary)

    @property
    def n(self) -> int:
        return self.graph.n

    def internal(self) -> list[int]:
        bd = set(self.boundary)
        return [v for v in self.graph.vertices if v not in bd]

    def label(self, v: int) -> int:
        """1-based boundary label of v, or 0 for internal vertices."""
        try:
            return self.boundary.index(v) + 1
        except ValueError:
            return 0

    def strip_boundary_edges(self) -> "BoundariedGraph":
        """Drop edges with both ends in the boundary (they live in the host after gluing)."""
        bd = set(self.boundary)
        edges = [(u, v) for u, v in self.graph.edges() if not (u in bd and v in bd)]
        return BoundariedGraph(Graph(self.graph.vertices, edges), self.boundary)

    def boundary_edges(self) -> list[tuple[int, int]]:
        bd = set(self.boundary)
        return [(u, v) for u, v in self.graph.edges() if u in bd and v in bd]

    def normalized(self) -> "BoundariedGraph":
        """Relabel so boundary label i is vertex i-1 and internals follow in id order."""
        order = list(self.boundary) + self.internal()
        index = {v: i for i, v in enumerate(order)}
        g = Graph(range(len(order)), ((index[u], index[v]) for u, v in self.graph.edges()))
        return BoundariedGraph(g, tuple(range(self.t)))

    def attach(self, boundary_ids: Sequence[int], fresh_start: int) -> tuple["BoundariedGraph", int]:
        """Copy with boundary label i renamed to boundary_ids[i-1] and internals
        renamed to consecutive ids from fresh_start. Returns (copy, next free id)."""
        if len(boundary_ids) != self.t:
            raise GraphError("boundary size mismatch")
        mapping = dict(zip(self.boundary, boundary_ids))
        nxt = fresh_start
        for v in self.internal():
            mapping[v] = nxt
            nxt += 1
        g = Graph((mapping[v] for v in self.graph.vertices),
                  ((mapping[u], mapping[v]) for u, v in self.graph.edges()))
        return BoundariedGraph(g, tuple(boundary_ids)), nxt

    def to_dict(self) -> dict:
        return {"vertices": list(self.graph.vertices), "edges": [list(e) for e in self.graph.edges()],
                "boundary": list(self.boundary)}

    @classmethod
    def from_dict(cls, data: dict) -> "BoundariedGraph":
        g = Graph(data["vertices"], (tuple(e) for e in data["edges"]))
        return cls(g, tuple(data["boundary"]))


def glue(a: BoundariedGraph, b: BoundariedGraph) -> Graph:
    """Identify equally labeled boundary vertices; parallel edges collapse.

    ``a`` keeps its ids. Internal vertices of ``b`` keep theirs when they do not
    collide with ``a``, otherwise all of them are renamed past max id of ``a``.
    """
    if a.t != b.t:
        raise GraphError(f"cannot glue boundaries of size {a.t} and {b.t}")
    mapping = dict(zip(b.boundary, a.boundary))
    internal_b = b.internal()
    if any(v in a.graph for v in internal_b):
        nxt = max(a.graph.vertices, default=-1) + 1
        for v in internal_b:
            mapping[v] = nxt
            nxt += 1
    else:
        mapping.update((v, v) for v in internal_b)
    vertices = list(a.graph.vertices) + [mapping[v] for v in internal_b]
    edges = a.graph.edges() + [(mapping[u], mapping[v]) for u, v in b.graph.edges()]
    return Graph(vertices, edges)


def unglue(g: Graph, w: Iterable[int], boundary: Sequence[int]) -> tuple[BoundariedGraph, BoundariedGraph]:
    """Split g along ``boundary`` into the part spanned by w and the rest.

    Both sides keep the boundary vertices and the edges among them.
    """
    w = frozenset(w)
    boundary = tuple(boundary)
    if not set(boundary) <= w:
        raise GraphError("boundary must lie inside w")
    inner = w - set(boundary)
    for v in inner:
        for u in g.neighbors(v):
            if u not in w:
                raise GraphError(f"boundary does not separate: edge {v}-{u} leaves w")
    inside = BoundariedGraph(g.subgraph(w), boundary)
    outside = BoundariedGraph(g.remove(inner), boundary)
    return inside, outside


def protrusion_boundary(g: Graph, w: Iterable[int]) -> tuple[int, ...]:
    """The vertices of w with a neighbor outside w, in id order."""
    w = set(w)
    return tuple(sorted(v for v in w if any(u not in w for u in g.neighbors(v))))


def _refine(bg: BoundariedGraph) -> dict[int, tuple]:
    """Iterative color refinement of internal vertices; boundary labels are fixed colors."""
    bd = {v: i for i, v in enumerate(bg.boundary)}
    g = bg.graph
    color: dict[int, object] = {}
    for v in g.vertices:
        color[v] = ("b", bd[v]) if v in bd else ("i", tuple(sorted(bd[u] for u in g.neighbors(v) if u in bd)), g.degree(v))
    while True:
        sig = {v: (color[v], tuple(sorted(map(repr, (color[u] for u in g.neighbors(v)))))) for v in g.vertices}
        ranks = {s: i for i, s in enumerate(sorted(set(map(repr, sig.values()))))}
        new = {v: ranks[repr(sig[v])] for v in g.vertices}
        if len(set(new.values())) == len(set(map(repr, color.values()))):
            return {v: new[v] for v in g.vertices}
        color = new  # type: ignore[assignment]


def canonical_code(bg: BoundariedGraph) -> tuple[int, int, tuple[int, ...]]:
    """Encoding invariant under renaming internal vertices (boundary labels fixed).

    Color refinement splits internals into cells; all orderings consistent with
    the cells are tried and the lexicographically smallest adjacency row list wins.
    """
    t = bg.t
    internal = bg.internal()
    colors = _refine(bg)
    cells: dict[int, list[int]] = {}
    for v in internal:
        cells.setdefault(colors[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    g = bg.graph
    best = None
    for choice in product(*(permutations(c) for c in cell_list)):
        order = list(bg.boundary) + [v for cell in choice for v in cell]
        index = {v: i for i, v in enumerate(order)}
        rows = []
        for i, v in enumerate(order):
            m = 0
            for u in g.neighbors(v):
                j = index[u]
                if j < i:
                    m |= 1 << j
            rows.append(m)
        code = tuple(rows)
        if best is None or code < best:
            best = code
    return (g.n, t, best or ())
