"""Protrusion replacement driven bottom-up over a nice tree decomposition, and
the full kernelization pipeline built on it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..decomposition import (
    FORGET, INTRODUCE, JOIN, LEAF, TreedepthDecomposition, make_nice, treedepth_check,
    treedepth_lower_bound,
)
from ..graph import Graph
from ..modulator import approx_td_modulator
from ..oracles import BudgetExceeded
from ..protrusion import decompose
from .boundaried import BoundariedGraph, glue, protrusion_boundary
from .signatures import VERTEX_COVER
from .table import RepresentativeTable


class MissingRepresentative(LookupError):
    """A signature met during replacement has no entry in the table."""


@dataclass
class ReplacementResult:
    graph: Graph
    delta: int
    replaced: bool
    before: int  # interior vertex count
    after: int
    reason: str = ""

    def to_dict(self) -> dict:
        return {"replaced": self.replaced, "before": self.before, "after": self.after,
                "delta": self.delta, "reason": self.reason}


class _Engine:
    def __init__(self, g: Graph, table: RepresentativeTable):
        self.table = table
        self.next_id = max(g.vertices, default=-1) + 1

    def reduce(self, piece: BoundariedGraph) -> tuple[BoundariedGraph, int]:
        """Swap ``piece`` (boundary sorted by id) for its table representative.

        Returns the representative attached to the same boundary ids and the
        transposition constant (offset difference for Vertex Cover, 0 otherwise).
        """
        if piece.t > self.table.t:
            raise MissingRepresentative(f"boundary of size {piece.t} exceeds table t={self.table.t}")
        sig = self.table.signature(piece)
        entry = self.table.lookup(sig)
        if entry is None:
            raise MissingRepresentative(f"no representative for a {piece.n}-vertex piece "
                                        f"with boundary {piece.t}")
        rep, self.next_id = entry.representative.attach(piece.boundary, self.next_id)
        delta = sig.offset - entry.delta_base if self.table.problem == VERTEX_COVER else 0
        return rep, delta


def _shallow_decomposition(h: Graph, limit: int) -> TreedepthDecomposition | None:
    """Lowest-height treedepth decomposition of h up to ``limit``, else None."""
    for d in range(treedepth_lower_bound(h), limit + 1):
        dec = treedepth_check(h, d)
        if dec is not None:
            return dec
    return None


def replace_protrusion(g: Graph, w: Iterable[int], table: RepresentativeTable) -> ReplacementResult:
    """Replace the protrusion w by a table representative.

    The boundary is the set of vertices of w with neighbors outside w. A nice
    tree decomposition of g[w] whose root bag is the boundary (built from an
    elimination forest of the interior, so bags hold at most td + t vertices) is processed
    bottom-up; every intermediate piece is swapped for its representative, so
    no piece grows beyond two representatives plus one bag. Edges between
    boundary vertices stay with the host.
    """
    w = frozenset(w)
    boundary = protrusion_boundary(g, w)
    bset = frozenset(boundary)
    interior = w - bset
    if not interior:
        return ReplacementResult(g, 0, False, 0, 0, "empty interior")

    td = _shallow_decomposition(g.subgraph(interior), table.d)
    if td is None:
        return ReplacementResult(g, 0, False, len(interior), len(interior),
                                 f"unreduced: interior treedepth exceeds {table.d}")
    # tree decomposition: root bag = boundary; below it the elimination forest
    # of the interior, bag(v) = v, its ancestors and the boundary vertices
    # adjacent to the subtree of v
    order = sorted(interior, key=lambda v: (td.depth(v), v))
    slot = {v: i + 1 for i, v in enumerate(order)}
    touch = {v: {u for u in g.neighbors(v) if u in bset} for v in order}
    for v in reversed(order):
        p = td.parent[v]
        if p is not None:
            touch[p] |= touch[v]
    bags = [bset] + [frozenset(td.ancestors(v)) | {v} | touch[v] for v in order]
    edges = [(0 if td.parent[v] is None else slot[td.parent[v]], slot[v]) for v in order]
    core_graph = g.subgraph(w)
    nice = make_nice(core_graph, bags, bset, edges)

    engine = _Engine(g, table)
    state: dict[int, tuple[BoundariedGraph, int]] = {}
    try:
        for x in nice.postorder():
            node = nice.nodes[x]
            wx = tuple(sorted(node.bag))
            if node.kind == LEAF:
                if not wx:
                    piece, mu = BoundariedGraph(Graph(), ()), 0
                else:
                    piece, mu = BoundariedGraph(Graph(wx), wx), 0
            elif node.kind == INTRODUCE:
                child, mu = state.pop(node.children[0])
                g2 = Graph(list(child.graph.vertices) + [node.vertex], child.graph.edges())
                piece = BoundariedGraph(g2, wx)
            elif node.kind == FORGET:
                child, mu = state.pop(node.children[0])
                v = node.vertex
                extra = [(v, u) for u in core_graph.neighbors(v) if u in node.bag]
                piece = BoundariedGraph(child.graph.add_edges(extra), wx)
            elif node.kind == JOIN:
                (a, mu1), (b, mu2) = (state.pop(c) for c in node.children)
                piece = BoundariedGraph(glue(a, b), wx)
                mu = mu1 + mu2
            else:
                raise AssertionError(node.kind)
            rep, delta = engine.reduce(piece)
            state[x] = (rep, mu + delta)
    except (MissingRepresentative, BudgetExceeded) as exc:
        return ReplacementResult(g, 0, False, len(interior), len(interior), f"unreduced: {exc}")

    rep, mu = state[nice.root]
    new_interior = rep.internal()
    if len(new_interior) >= len(interior):
        return ReplacementResult(g, 0, False, len(interior), len(interior), "representative not smaller")
    host = g.remove(interior)
    # new internal ids start right after the largest surviving id
    rep, _ = rep.attach(rep.boundary, max(host.vertices, default=-1) + 1)
    vertices = list(host.vertices) + rep.internal()
    g2 = Graph(vertices, host.edges() + rep.graph.edges())
    return ReplacementResult(g2, mu, True, len(interior), len(rep.internal()))


@dataclass
class KernelReport:
    problem: str
    d: int
    t: int
    n_before: int
    n_after: int
    modulator_size: int
    y0_size: int
    clusters: list = field(default_factory=list)
    delta: int = 0
    unreduced: int = 0

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "d": self.d,
            "t": self.t,
            "n_before": self.n_before,
            "n_after": self.n_after,
            "modulator_size": self.modulator_size,
            "y0_size": self.y0_size,
            "num_clusters": len(self.clusters),
            "clusters": self.clusters,
            "delta": self.delta,
            "unreduced_clusters": self.unreduced,
        }


def kernelize(g: Graph, d: int, t: int, problem: str, table: RepresentativeTable,
              modulator: Iterable[int] | None = None) -> tuple[Graph, int, KernelReport]:
    """Modulator, protrusion decomposition, then per-cluster replacement.

    Returns (reduced graph, delta, report) with OPT(g) = OPT(reduced) + delta
    for Vertex Cover and equal longest paths for Longest Path.
    """
    if problem != table.problem:
        raise ValueError(f"table is for {table.problem}, not {problem}")
    s = approx_td_modulator(g, d).modulator if modulator is None else tuple(sorted(modulator))
    pd = decompose(g, s, d, t)
    report = KernelReport(problem, d, t, g.n, g.n, len(s), len(pd.y0))
    cur = g
    total = 0
    for cluster in pd.clusters:
        res = replace_protrusion(cur, cluster.vertices | cluster.boundary, table)
        cur = res.graph
        total += res.delta
        if not res.replaced and res.reason.startswith("unreduced"):
            report.unreduced += 1
        report.clusters.append({"boundary": sorted(cluster.boundary), **res.to_dict()})
    report.n_after = cur.n
    report.delta = total
    return cur, total, report
