"""Simple undirected graphs, parsing, and elementary algorithms."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for malformed graph input or violated graph contracts."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Immutable simple undirected graph with stable integer vertex ids.

    Neighbor lists are sorted tuples, so iteration order is canonical.
    """

    __slots__ = ("_adj", "_vertices", "_m")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for v in adj:
            if v < 0:
                raise GraphError(f"negative vertex id {v}")
        self._vertices = tuple(sorted(adj))
        self._adj = {v: tuple(sorted(adj[v])) for v in self._vertices}
        self._m = sum(len(n) for n in self._adj.values()) // 2

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> "Graph":
        return cls(adj.keys(), ((u, v) for u, ns in adj.items() for v in ns))

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self._adj.items()))

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self._m})"

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        ns = self._adj.get(u)
        return ns is not None and v in ns

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self._vertices for v in self._adj[u] if u < v]

    def max_degree(self) -> int:
        return max((len(n) for n in self._adj.values()), default=0)

    def neighborhood(self, vs: Iterable[int]) -> frozenset[int]:
        """Open neighborhood N(vs): neighbors of vs outside vs."""
        vs = set(vs)
        out = set()
        for v in vs:
            out.update(self._adj[v])
        return frozenset(out - vs)

    def subgraph(self, vs: Iterable[int]) -> "Graph":
        """Induced subgraph keeping the original vertex ids."""
        keep = set(vs)
        missing = keep.difference(self._adj)
        if missing:
            raise GraphError(f"vertices not in graph: {sorted(missing)}")
        g = Graph.__new__(Graph)
        g._vertices = tuple(sorted(keep))
        g._adj = {v: tuple(u for u in self._adj[v] if u in keep) for v in g._vertices}
        g._m = sum(len(n) for n in g._adj.values()) // 2
        return g

    def remove(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return self.subgraph(v for v in self._vertices if v not in drop)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self._vertices, list(self.edges()) + list(edges))

    def relabel(self) -> tuple["Graph", list[int]]:
        """Relabel to dense ids 0..n-1; returns the graph and new->old id list."""
        remap = list(self._vertices)
        index = {v: i for i, v in enumerate(remap)}
        g = Graph(range(len(remap)), ((index[u], index[v]) for u, v in self.edges()))
        return g, remap

    def bitmasks(self) -> tuple[list[int], list[int]]:
        """Local index order and neighbor bitmasks, for exponential-time routines."""
        order = list(self._vertices)
        index = {v: i for i, v in enumerate(order)}
        masks = [0] * len(order)
        for i, v in enumerate(order):
            m = 0
            for u in self._adj[v]:
                m |= 1 << index[u]
            masks[i] = m
        return order, masks


def _parse_pair(parts: list[str], lineno: int) -> tuple[int, int]:
    if len(parts) != 2:
        raise ParseError(f"expected 'u v', got {' '.join(parts)!r}", lineno)
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"non-integer vertex in {' '.join(parts)!r}", lineno) from None
    if u < 1 or v < 1:
        raise ParseError("vertex ids must be positive", lineno)
    if u == v:
        raise ParseError(f"self-loop at vertex {u}", lineno)
    return u, v


def parse_graph(text: str, format: str = "pace-gr") -> Graph:
    """Parse an edge list or PACE ``.gr`` file into a 0-based Graph.

    External ids are 1-based; vertex ``i`` in the file becomes ``i - 1``.
    Duplicate edges are collapsed, self-loops are rejected.
    """
    if format not in ("edge-list", "pace-gr"):
        raise GraphError(f"unknown graph format {format!r}")
    edges: list[tuple[int, int]] = []
    n_declared = None
    m_declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if format == "edge-list":
            if line.startswith("#"):
                continue
            edges.append(_parse_pair(line.split(), lineno))
            continue
        if line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n_declared is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "gr":
                raise ParseError("header must be 'p gr <n> <m>'", lineno)
            try:
                n_declared, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            continue
        if n_declared is None:
            raise ParseError("edge before 'p gr' header", lineno)
        u, v = _parse_pair(parts, lineno)
        if u > n_declared or v > n_declared:
            raise ParseError(f"vertex out of range 1..{n_declared}", lineno)
        edges.append((u, v))
    if format == "pace-gr":
        if n_declared is None:
            raise ParseError("missing 'p gr' header")
        if len(edges) != m_declared:
            raise ParseError(f"header declares {m_declared} edges, found {len(edges)}")
        vertices = range(n_declared)
    else:
        vertices = sorted({x - 1 for e in edges for x in e})
    return Graph(vertices, ((u - 1, v - 1) for u, v in edges))


def format_pace(g: Graph, comments: Iterable[str] = ()) -> str:
    """Write g in PACE format; ids are densified and shifted to 1-based."""
    h, _ = g.relabel()
    lines = [f"c {c}" for c in comments]
    lines.append(f"p gr {h.n} {h.m}")
    lines.extend(f"{u + 1} {v + 1}" for u, v in h.edges())
    return "\n".join(lines) + "\n"


def connected_components(g: Graph, excluded: Iterable[int] = ()) -> list[frozenset[int]]:
    """Components of g - excluded, ordered by minimum vertex id."""
    seen = set(excluded)
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """Return (degeneracy, removal order) by repeated min-degree deletion.

    Bucket queue; ties broken by smallest vertex id.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    maxd = max(deg.values(), default=0)
    buckets: list[set[int]] = [set() for _ in range(maxd + 1)]
    for v, d in deg.items():
        buckets[d].add(v)
    removed = set()
    order = []
    k = 0
    cur = 0
    for _ in range(g.n):
        cur = max(cur - 1, 0)
        while not buckets[cur]:
            cur += 1
        v = min(buckets[cur])
        buckets[cur].remove(v)
        k = max(k, cur)
        order.append(v)
        removed.add(v)
        for u in g.neighbors(v):
            if u not in removed:
                d = deg[u]
                buckets[d].remove(u)
                deg[u] = d - 1
                buckets[d - 1].add(u)
    return k, order


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """G[s] relabeled to 0..|s|-1, plus the new->original id remap."""
    return g.subgraph(s).relabel()


# Small named graphs used throughout tests and generators.

def path_graph(n: int, start: int = 0) -> Graph:
    return Graph(range(start, start + n), ((i, i + 1) for i in range(start, start + n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int) -> Graph:
    return Graph(range(leaves + 1), ((0, i) for i in range(1, leaves + 1)))


def empty_graph(n: int) -> Graph:
    return Graph(range(n))


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(range(rows * cols), edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union with ids shifted so the parts do not collide."""
    vertices: list[int] = []
    edges: list[tuple[int, int]] = []
    offset = 0
    for h in graphs:
        h2, _ = h.relabel()
        vertices.extend(v + offset for v in h2.vertices)
        edges.extend((u + offset, v + offset) for u, v in h2.edges())
        offset += h2.n
    return Graph(vertices, edges)
