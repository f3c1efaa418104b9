"""Polynomial kernel for Longest Path parameterized by a treedepth modulator.

Each round keeps only the components of g - S that some longest path could
need, then moves one root per kept component into the modulator, which lowers
the treedepth of the rest by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .decomposition import treedepth_check
from .graph import Graph, connected_components
from .oracles import DEFAULT_BUDGET, OracleBudget
from .protrusion import InvariantError


@dataclass
class ComponentProfile:
    """Longest path lengths (edges) for one component U of g - S.

    ``from_x[x]`` is the longest path starting at x and continuing inside U;
    ``between[(x, y)]`` (x < y) the longest x-y path whose inner vertices all
    lie in U, absent when there is none. The direct edge xy is not counted: it
    belongs to no component.
    """

    component: frozenset
    inside: int
    from_x: dict = field(default_factory=dict)
    between: dict = field(default_factory=dict)

    @property
    def min_id(self) -> int:
        return min(self.component)


def lp_component_profiles(g: Graph, u: Iterable[int], s: Iterable[int],
                          budget: OracleBudget = DEFAULT_BUDGET) -> ComponentProfile:
    """Exhaustive simple-path search inside g[u] plus one or two modulator ends."""
    u = frozenset(u)
    s = sorted(set(s))
    clock = budget.start()
    order = sorted(u)
    index = {v: i for i, v in enumerate(order)}
    masks = [0] * len(order)
    for v in order:
        for w in g.neighbors(v):
            if w in index:
                masks[index[v]] |= 1 << index[w]
    # modulator vertex -> mask of its neighbors in u
    attach = {x: sum(1 << index[w] for w in g.neighbors(x) if w in index) for x in s}

    def walk(start: int, visit) -> None:
        stack = [(start, 1 << start, 0)]
        while stack:
            v, used, length = stack.pop()
            clock.tick()
            visit(v, length)
            ext = masks[v] & ~used
            while ext:
                w = (ext & -ext).bit_length() - 1
                ext &= ext - 1
                stack.append((w, used | (1 << w), length + 1))

    best = 0

    def inside_visit(v, length):
        nonlocal best
        best = max(best, length)

    for i in range(len(order)):
        walk(i, inside_visit)
    prof = ComponentProfile(u, best)

    for x in s:
        top = 0
        pairs: dict[int, int] = {}

        def visit(v, length, x=x):
            nonlocal top
            top = max(top, length + 1)
            for y in s:
                if y != x and attach[y] >> v & 1 and pairs.get(y, -1) < length + 2:
                    pairs[y] = length + 2

        m = attach[x]
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            walk(i, visit)
        prof.from_x[x] = top
        for y, length in pairs.items():
            if x < y:
                prof.between[(x, y)] = length
    return prof


@dataclass
class LPReductionRound:
    depth: int  # residual treedepth bound entering the round
    k: int
    kept_components: list = field(default_factory=list)
    new_modulator: tuple = ()
    roots_added: dict = field(default_factory=dict)
    n_before: int = 0
    n_after: int = 0

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "k": self.k,
            "kept_components": len(self.kept_components),
            "modulator_size": len(self.new_modulator),
            "roots_added": len(self.roots_added),
            "n_before": self.n_before,
            "n_after": self.n_after,
        }


def kept_components_bound(k: int) -> int:
    """Largest family a round may keep: k(k+1)^2/2 + 1."""
    return k * (k + 1) ** 2 // 2 + 1


def modulator_bound(k: int) -> int:
    return (k + 1) ** 3


def g_bound(d: int, k: int) -> int:
    """Kernel size bound: g(0,k) = k and g(i,k) = g(i-1, (k+1)^3)."""
    for _ in range(d):
        k = (k + 1) ** 3
    return k


def _top(profiles: list[ComponentProfile], value, count: int) -> list[ComponentProfile]:
    scored = [(value(p), p) for p in profiles]
    scored = [(v, p) for v, p in scored if v is not None and v > 0]
    scored.sort(key=lambda vp: (-vp[0], vp[1].min_id))
    return [p for _, p in scored[:count]]


def lp_reduce_round(g: Graph, s: Iterable[int], d: int,
                    budget: OracleBudget = DEFAULT_BUDGET) -> tuple[Graph, LPReductionRound]:
    """One reduction round; the longest path length of g is preserved exactly."""
    if d < 1:
        raise ValueError("a reduction round needs d >= 1")
    s = tuple(sorted(set(s)))
    k = len(s)
    comps = [frozenset(c) for c in connected_components(g, excluded=s)]
    rnd = LPReductionRound(d, k, n_before=g.n)
    if len(comps) <= k + 1:
        kept = comps
    else:
        profiles = [lp_component_profiles(g, c, s, budget) for c in comps]
        chosen: dict[frozenset, None] = {}
        u0 = min(profiles, key=lambda p: (-p.inside, p.min_id))
        chosen[u0.component] = None
        for x in s:
            for p in _top(profiles, lambda p, x=x: p.from_x[x], k + 1):
                chosen[p.component] = None
        for x, y in combinations(s, 2):
            for p in _top(profiles, lambda p, key=(x, y): p.between.get(key), k + 1):
                chosen[p.component] = None
        kept = sorted(chosen, key=min)
    roots = {}
    for c in kept:
        dec = treedepth_check(g.subgraph(c), d)
        if dec is None:
            raise InvariantError(f"component at vertex {min(c)} has treedepth above {d}")
        (root,) = dec.roots()
        roots[min(c)] = root
    new_s = tuple(sorted(set(s) | set(roots.values())))
    out = g.subgraph(set(s).union(*kept))
    rnd.kept_components = [sorted(c) for c in kept]
    rnd.roots_added = roots
    rnd.new_modulator = new_s
    rnd.n_after = out.n
    _check_round(out, rnd, d)
    return out, rnd


def _check_round(g: Graph, rnd: LPReductionRound, d: int) -> None:
    k = rnd.k
    if len(rnd.kept_components) > kept_components_bound(k):
        raise InvariantError(f"kept {len(rnd.kept_components)} components, bound is {kept_components_bound(k)}")
    if len(rnd.new_modulator) > modulator_bound(k):
        raise InvariantError(f"new modulator has {len(rnd.new_modulator)} vertices, bound is {modulator_bound(k)}")
    if treedepth_check(g.remove(rnd.new_modulator), d - 1) is None:
        raise InvariantError(f"residual treedepth after the round exceeds {d - 1}")


def lp_kernelize(g: Graph, s: Iterable[int], d: int,
                 budget: OracleBudget = DEFAULT_BUDGET) -> tuple[Graph, list[LPReductionRound]]:
    """Run d rounds at residual depths d, d-1, ..., 1; the result has at most
    g_bound(d, |s|) vertices and the same longest path length as g."""
    s = tuple(sorted(set(s)))
    if d < 0:
        raise ValueError("d must be non-negative")
    if treedepth_check(g.remove(s), d) is None:
        raise InvariantError(f"s is not a treedepth-{d} modulator")
    k0 = len(s)
    trace = []
    cur = g
    for depth in range(d, 0, -1):
        cur, rnd = lp_reduce_round(cur, s, depth, budget)
        trace.append(rnd)
        s = rnd.new_modulator
    if cur.n != len(s):
        raise InvariantError("vertices remain outside the final modulator")
    if cur.n > g_bound(d, k0):
        raise InvariantError(f"kernel has {cur.n} vertices, bound is {g_bound(d, k0)}")
    return cur, trace
