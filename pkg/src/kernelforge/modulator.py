"""Treedepth-d modulators: 2^d-approximation, exact enumeration, verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .decomposition import (
    SizeLimitError,
    TreedepthDecomposition,
    dfs_tree,
    treedepth_check,
)
from .graph import Graph, connected_components

EXACT_MODULATOR_LIMIT = 16


@dataclass(frozen=True)
class ModulatorResult:
    modulator: tuple[int, ...]
    target_depth: int
    certificate: TreedepthDecomposition
    deleted_paths: tuple[tuple[int, ...], ...] = ()
    residual_exact: bool = True

    def to_dict(self) -> dict:
        return {
            "modulator": list(self.modulator),
            "target_depth": self.target_depth,
            "certificate": self.certificate.to_dict(),
            "deleted_paths": [list(p) for p in self.deleted_paths],
            "residual_exact": self.residual_exact,
        }


def verify_modulator(g: Graph, s: Iterable[int], d: int) -> bool:
    return treedepth_check(g.remove(s), d) is not None


def _certificate(g: Graph, s: Iterable[int], d: int) -> TreedepthDecomposition:
    cert = treedepth_check(g.remove(s), d)
    if cert is None:
        raise AssertionError("modulator does not certify: td(G - S) > d")
    return cert


def long_dfs_path(g: Graph, d: int) -> tuple[int, ...] | None:
    """Root path on 2^d vertices of some DFS tree, or None if every DFS tree is shallower.

    Components are scanned by minimum id, DFS roots at the minimum vertex; the
    first vertex in preorder to reach depth 2^d fixes the (leftmost) path.
    """
    target = 1 << d
    for comp in connected_components(g):
        if len(comp) < target:
            continue
        parent, depth, preorder = dfs_tree(g, min(comp))
        for v in preorder:
            if depth[v] == target:
                path = []
                while v is not None:
                    path.append(v)
                    v = parent[v]
                return tuple(reversed(path))
    return None


def minimal_obstruction(g: Graph, d: int) -> frozenset[int] | None:
    """Vertex-minimal set M with td(g[M]) > d, or None when td(g) <= d."""
    for comp in connected_components(g):
        h = g.subgraph(comp)
        if treedepth_check(h, d) is not None:
            continue
        members = set(comp)
        for v in sorted(comp, key=lambda x: (h.degree(x), x)):
            trial = members - {v}
            if treedepth_check(g.subgraph(trial), d) is None:
                members = trial
        return frozenset(members)
    return None


class _NodeBudget(Exception):
    pass


def _branch(g: Graph, d: int, k: int, counter: list[int]) -> list[int] | None:
    counter[0] -= 1
    if counter[0] < 0:
        raise _NodeBudget
    obstruction = minimal_obstruction(g, d)
    if obstruction is None:
        return []
    if k == 0:
        return None
    for v in sorted(obstruction):
        sub = _branch(g.remove([v]), d, k - 1, counter)
        if sub is not None:
            return [v] + sub
    return None


def optimal_residual_modulator(g: Graph, d: int, node_budget: int = 20_000) -> tuple[list[int], bool]:
    """Optimum modulator of g, component by component, by obstruction branching.

    Every modulator hits every obstruction, so iterative deepening over the
    branching depth is exact. If the node budget runs out the component falls
    back to deleting whole minimal obstructions, and the flag is False.
    """
    out: list[int] = []
    exact = True
    for comp in connected_components(g):
        h = g.subgraph(comp)
        if treedepth_check(h, d) is not None:
            continue
        counter = [node_budget]
        try:
            k = 1
            while True:
                sol = _branch(h, d, k, counter)
                if sol is not None:
                    out.extend(sol)
                    break
                k += 1
        except _NodeBudget:
            exact = False
            rest = h
            while True:
                m = minimal_obstruction(rest, d)
                if m is None:
                    break
                out.extend(m)
                rest = rest.remove(m)
    return sorted(out), exact


def approx_td_modulator(g: Graph, d: int) -> ModulatorResult:
    """Modulator to treedepth d of size at most 2^d times optimal.

    Phase 1 deletes DFS root paths on 2^d vertices (each hits every optimum
    modulator); the residual graph then has shallow DFS trees and is finished
    optimally.
    """
    if d <= 0:
        raise ValueError("d must be at least 1")
    s: list[int] = []
    paths = []
    h = g
    while True:
        p = long_dfs_path(h, d)
        if p is None:
            break
        paths.append(p)
        s.extend(p)
        h = h.remove(p)
    residual, exact = optimal_residual_modulator(h, d)
    s.extend(residual)
    s = sorted(s)
    return ModulatorResult(tuple(s), d, _certificate(g, s, d), tuple(paths), exact)


def exact_td_modulator(g: Graph, d: int, limit: int = EXACT_MODULATOR_LIMIT) -> ModulatorResult:
    """Minimum modulator by enumerating vertex subsets in increasing size."""
    if d <= 0:
        raise ValueError("d must be at least 1")
    if g.n > limit:
        raise SizeLimitError(f"exact_td_modulator limited to {limit} vertices (got {g.n})")
    for size in range(g.n + 1):
        for s in combinations(g.vertices, size):
            cert = treedepth_check(g.remove(s), d)
            if cert is not None:
                return ModulatorResult(tuple(s), d, cert)
    raise AssertionError("unreachable: V(G) is always a modulator")
