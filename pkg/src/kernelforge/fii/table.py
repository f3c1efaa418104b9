"""Representative tables built by bounded enumeration of small boundaried graphs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from ..decomposition import treedepth_check
from ..graph import Graph
from .boundaried import BoundariedGraph, canonical_code
from .signatures import LONGEST_PATH, VERTEX_COVER, lp_signature, vc_signature

TABLE_FORMAT_VERSION = 1
DEFAULT_LIMITS = {"t": 4, "d": 3, "max_n": 8}


def enumerate_boundaried(t: int, d: int, max_n: int, boundary_edges: bool = False) -> Iterator[BoundariedGraph]:
    """All boundaried graphs with boundary labels 1..t, at most max_n vertices and
    treedepth at most d, one per isomorphism class fixing the labels.

    Graphs come in order of vertex count, then canonical code. Without
    ``boundary_edges`` no edge joins two boundary vertices.
    """
    if t > max_n:
        return
    bases = []
    pairs = list(combinations(range(t), 2))
    edge_sets = [()]
    if boundary_edges:
        edge_sets = [c for r in range(len(pairs) + 1) for c in combinations(pairs, r)]
    for es in edge_sets:
        bg = BoundariedGraph(Graph(range(t), es), tuple(range(t)))
        if treedepth_check(bg.graph, d) is not None:
            bases.append(bg)
    level = {canonical_code(b): b for b in bases}
    n = t
    while True:
        for code in sorted(level):
            yield level[code]
        if n == max_n or not level:
            return
        nxt: dict = {}
        for bg in level.values():
            for nbrs in range(1 << n):
                edges = bg.graph.edges() + [(n, j) for j in range(n) if nbrs >> j & 1]
                g = Graph(range(n + 1), edges)
                cand = BoundariedGraph(g, bg.boundary)
                code = canonical_code(cand)
                if code in nxt:
                    continue
                if treedepth_check(g, d) is None:
                    continue
                nxt[code] = cand
        level = nxt
        n += 1


@dataclass
class TableEntry:
    representative: BoundariedGraph
    delta_base: int
    signature_json: object = None


@dataclass
class RepresentativeTable:
    """Signature key -> smallest known representative, for boundary sizes 0..t."""

    problem: str
    t: int
    d: int
    max_n: int
    entries: dict = field(default_factory=dict)
    stabilized: dict = field(default_factory=dict)  # boundary size -> bool
    class_counts: dict = field(default_factory=dict)  # boundary size -> [count at n = b..max_n]

    def signature(self, h: BoundariedGraph):
        if self.problem == VERTEX_COVER:
            return vc_signature(h)
        return lp_signature(h)

    def lookup(self, sig) -> TableEntry | None:
        return self.entries.get(sig.key)

    def max_representative_size(self) -> int:
        return max((e.representative.n for e in self.entries.values()), default=0)

    def summary(self) -> dict:
        per_b: dict[int, int] = {}
        for e in self.entries.values():
            per_b[e.representative.t] = per_b.get(e.representative.t, 0) + 1
        return {
            "problem": self.problem,
            "t": self.t,
            "d": self.d,
            "max_n": self.max_n,
            "classes": {str(b): c for b, c in sorted(per_b.items())},
            "class_counts_by_n": {str(b): c for b, c in sorted(self.class_counts.items())},
            "stabilized": {str(b): s for b, s in sorted(self.stabilized.items())},
            "max_representative_size": self.max_representative_size(),
        }

    def to_json(self) -> str:
        data = {
            "format": "kernelforge-representative-table",
            "version": TABLE_FORMAT_VERSION,
            **{k: getattr(self, k) for k in ("problem", "t", "d", "max_n")},
            "stabilized": {str(b): s for b, s in sorted(self.stabilized.items())},
            "class_counts": {str(b): c for b, c in sorted(self.class_counts.items())},
            "entries": [
                {
                    "boundary_size": e.representative.t,
                    "signature": e.signature_json,
                    "delta_base": e.delta_base,
                    "representative": e.representative.to_dict(),
                }
                for _, e in sorted(self.entries.items(), key=lambda kv: repr(kv[0]))
            ],
        }
        return json.dumps(data, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "RepresentativeTable":
        data = json.loads(text)
        if data.get("format") != "kernelforge-representative-table":
            raise ValueError("not a representative table file")
        if data.get("version") != TABLE_FORMAT_VERSION:
            raise ValueError(f"unsupported table version {data.get('version')}")
        table = cls(data["problem"], data["t"], data["d"], data["max_n"])
        table.stabilized = {int(b): s for b, s in data["stabilized"].items()}
        table.class_counts = {int(b): c for b, c in data["class_counts"].items()}
        for item in data["entries"]:
            rep = BoundariedGraph.from_dict(item["representative"])
            sig = table.signature(rep)
            table.entries[sig.key] = TableEntry(rep, item["delta_base"], item["signature"])
        return table


def build_representative_table(problem: str, t: int, d: int, max_n: int,
                               limits: dict | None = None) -> RepresentativeTable:
    """Enumerate boundaried graphs (boundary sizes 0..t, treedepth <= d, at most
    max_n vertices) and keep the first, hence smallest, graph of every signature."""
    if problem not in (VERTEX_COVER, LONGEST_PATH):
        raise ValueError(f"unknown problem {problem!r}")
    limits = DEFAULT_LIMITS if limits is None else limits
    if t > limits["t"] or d > limits["d"] or max_n > limits["max_n"]:
        raise ValueError(f"table parameters exceed budget {limits}")
    table = RepresentativeTable(problem, t, d, max_n)
    for b in range(t + 1):
        counts: dict[int, int] = {}
        for bg in enumerate_boundaried(b, d, max_n):
            sig = table.signature(bg)
            if sig.key not in table.entries:
                delta = sig.offset if problem == VERTEX_COVER else 0
                table.entries[sig.key] = TableEntry(bg, delta, sig.to_json())
                counts[bg.n] = counts.get(bg.n, 0) + 1
        cumulative = []
        total = 0
        for n in range(b, max_n + 1):
            total += counts.get(n, 0)
            cumulative.append(total)
        table.class_counts[b] = cumulative
        table.stabilized[b] = len(cumulative) >= 2 and cumulative[-1] == cumulative[-2]
    return table
