"""Brute-force ground truth: longest path, vertex cover, exact s-t path.

These never approximate. When an instance exceeds the budget they raise
``BudgetExceeded`` instead.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass

from .graph import Graph, connected_components


class BudgetExceeded(RuntimeError):
    pass


def _default_millis() -> int:
    raw = os.environ.get("KERNELFORGE_BUDGET_MS")
    return int(raw) if raw else 60_000


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 16
    max_millis: int | None = None

    def __post_init__(self):
        if self.max_vertices <= 0 or (self.max_millis is not None and self.max_millis <= 0):
            raise ValueError("budget fields must be positive")

    def start(self) -> "_Clock":
        millis = self.max_millis if self.max_millis is not None else _default_millis()
        return _Clock(time.monotonic() + millis / 1000.0)

    def check_size(self, g: Graph, what: str) -> None:
        if g.n > self.max_vertices:
            raise BudgetExceeded(f"{what}: {g.n} vertices exceeds budget of {self.max_vertices}")


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline: float):
        self.deadline = deadline
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.ticks & 0x3FF == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("oracle time budget exhausted")


DEFAULT_BUDGET = OracleBudget()


def _longest_path_connected(masks: list[int], clock: _Clock) -> int:
    """Layered DP over (vertex set, endpoint) states reachable as simple paths."""
    n = len(masks)
    layer: dict[int, int] = {1 << v: 1 << v for v in range(n)}
    length = 0
    while True:
        nxt: dict[int, int] = {}
        for used, ends in layer.items():
            clock.tick()
            e = ends
            while e:
                v = (e & -e).bit_length() - 1
                e &= e - 1
                ext = masks[v] & ~used
                while ext:
                    u = (ext & -ext).bit_length() - 1
                    ext &= ext - 1
                    key = used | (1 << u)
                    nxt[key] = nxt.get(key, 0) | (1 << u)
        if not nxt:
            return length
        length += 1
        if length == n - 1:
            return length
        layer = nxt


def brute_longest_path(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum number of edges on a simple path of g (0 for a single vertex)."""
    budget.check_size(g, "brute_longest_path")
    if g.n == 0:
        return 0
    clock = budget.start()
    best = 0
    for comp in sorted(connected_components(g), key=len, reverse=True):
        if len(comp) - 1 <= best:
            break
        _, masks = g.subgraph(comp).bitmasks()
        best = max(best, _longest_path_connected(masks, clock))
    return best


def brute_vertex_cover(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Minimum vertex cover size by a branch-and-bound search tree."""
    budget.check_size(g, "brute_vertex_cover")
    clock = budget.start()
    _, masks = g.bitmasks()
    return _vc_masks(masks, (1 << g.n) - 1, clock)


def _vc_masks(masks: list[int], alive: int, clock: _Clock, best: int | None = None) -> int:
    # degree-0 vertices never need covering; degree-1 vertices: take the neighbor
    clock.tick()
    taken = 0
    changed = True
    while changed:
        changed = False
        a = alive
        while a:
            v = (a & -a).bit_length() - 1
            a &= a - 1
            if not alive >> v & 1:
                continue
            nb = masks[v] & alive
            if nb == 0:
                alive &= ~(1 << v)
                changed = True
            elif nb & (nb - 1) == 0:
                alive &= ~(nb | (1 << v))
                taken += 1
                changed = True
    if not alive:
        return taken
    # branch on a max-degree vertex: take it, or take all its neighbors
    v = max(_iter_bits(alive), key=lambda i: bin(masks[i] & alive).count("1"))
    nb = masks[v] & alive
    with_v = 1 + _vc_masks(masks, alive & ~(1 << v), clock)
    k = bin(nb).count("1")
    if k < with_v:
        without_v = k + _vc_masks(masks, alive & ~nb & ~(1 << v), clock)
        with_v = min(with_v, without_v)
    return taken + with_v


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def brute_exact_st_path(g: Graph, s: int, t: int, length: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Is there a simple s-t path with exactly ``length`` edges?"""
    budget.check_size(g, "brute_exact_st_path")
    if s == t:
        return length == 0
    if length <= 0:
        return False
    clock = budget.start()
    order, masks = g.bitmasks()
    index = {v: i for i, v in enumerate(order)}
    si, ti = index[s], index[t]

    def go(v: int, used: int, left: int) -> bool:
        clock.tick()
        if left == 0:
            return v == ti
        ext = masks[v] & ~used
        if left > 1:
            ext &= ~(1 << ti)
        for u in _iter_bits(ext):
            if go(u, used | (1 << u), left - 1):
                return True
        return False

    return go(si, 1 << si, length)
