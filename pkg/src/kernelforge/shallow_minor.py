"""Shallow minors: the bipartite contraction sequence, grad oracles and clique counting."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .decomposition import SizeLimitError
from .graph import Graph, GraphError, degeneracy_order

GRAD_EXACT_LIMIT = 10
CLIQUE_BUDGET = 10_000_000


@dataclass(frozen=True)
class ContractionStep:
    y_vertex: int
    x_target: int
    x_edges_before: int
    x_edges_after: int


@dataclass
class ContractionTrace:
    steps: list[ContractionStep]
    final_graph: Graph
    x_side: frozenset[int]

    def survivors(self) -> list[int]:
        return [v for v in self.final_graph.vertices if v not in self.x_side]


def _x_edges(adj: dict[int, set[int]], x: frozenset[int]) -> int:
    return sum(1 for u in x for w in adj[u] if w in x and u < w)


def run_contraction_sequence(g: Graph, x: Iterable[int]) -> ContractionTrace:
    """Contract y-vertices into x-neighbors while some y-vertex sees two
    non-adjacent x-vertices.

    Every step adds at least one edge inside x. Choice rule: lowest-id
    eligible y-vertex, contracted into its lowest-id x-neighbor that has a
    non-adjacent co-neighbor.
    """
    x = frozenset(x)
    if not x <= set(g.vertices):
        raise GraphError("x must be a subset of V(g)")
    for u, v in g.edges():
        if u not in x and v not in x:
            raise GraphError(f"y-side is not independent: edge {u}-{v}")
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    ys = sorted(v for v in g.vertices if v not in x)
    steps = []
    x_edges = _x_edges(adj, x)
    while True:
        chosen = None
        for v in ys:
            if v not in adj:
                continue
            nb = sorted(adj[v])
            for u in nb:
                if any(w != u and w not in adj[u] for w in nb):
                    chosen = (v, u)
                    break
            if chosen:
                break
        if chosen is None:
            break
        v, u = chosen
        nb = adj.pop(v)
        for w in nb:
            adj[w].discard(v)
        gained = 0
        for w in nb:
            if w != u and w not in adj[u]:
                adj[u].add(w)
                adj[w].add(u)
                gained += 1
        steps.append(ContractionStep(v, u, x_edges, x_edges + gained))
        x_edges += gained
    final = Graph.from_adjacency(adj)
    return ContractionTrace(steps, final, x)


@dataclass(frozen=True)
class GradEstimate:
    rank: int
    value: Fraction
    witness: tuple[frozenset[int], ...] = field(default=(), compare=False)
    exact: bool = False

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "float": float(self.value),
            "exact": self.exact,
            "witness": [sorted(b) for b in self.witness],
        }


def _radius_ok(g: Graph, members: frozenset[int], d: int) -> bool:
    """Does g[members] have a center reaching every member within d steps?"""
    for c in members:
        dist = {c: 0}
        queue = deque([c])
        while queue:
            v = queue.popleft()
            if dist[v] == d:
                continue
            for u in g.neighbors(v):
                if u in members and u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        if len(dist) == len(members):
            return True
    return False


def is_shallow_packing(g: Graph, sets: Sequence[frozenset[int]], d: int) -> bool:
    used: set[int] = set()
    for b in sets:
        if not b or used & b or not b <= set(g.vertices):
            return False
        used |= b
        if not _radius_ok(g, b, d):
            return False
    return True


def minor_density(g: Graph, sets: Sequence[frozenset[int]]) -> Fraction:
    if not sets:
        return Fraction(0)
    owner = {v: i for i, b in enumerate(sets) for v in b}
    edges = set()
    for u, v in g.edges():
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            edges.add((min(a, b), max(a, b)))
    return Fraction(len(edges), len(sets))


def _branch_sets(g: Graph, d: int) -> list[list[tuple[int, int]]]:
    """Per local vertex i: all radius-<=d connected sets whose minimum index is i,
    as (set mask, neighborhood mask)."""
    order, masks = g.bitmasks()
    n = len(order)
    by_min: list[set[int]] = [set() for _ in range(n)]
    for c in range(n):
        # all subsets of the depth-d BFS ball around c that stay within radius d of c
        dist = {c: 0}
        queue = deque([c])
        while queue:
            v = queue.popleft()
            if dist[v] < d:
                for u in range(n):
                    if masks[v] >> u & 1 and u not in dist:
                        dist[u] = dist[v] + 1
                        queue.append(u)
        ball = sorted(dist)
        others = [v for v in ball if v != c]
        for sub in range(1 << len(others)):
            mask = 1 << c
            for j, v in enumerate(others):
                if sub >> j & 1:
                    mask |= 1 << v
            if _mask_radius_from(masks, mask, c) <= d:
                low = (mask & -mask).bit_length() - 1
                by_min[low].add(mask)
    out = []
    for i in range(n):
        sets = []
        for mask in sorted(by_min[i]):
            nb = 0
            m = mask
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                nb |= masks[v]
            sets.append((mask, nb & ~mask))
        out.append(sets)
    return out


def _mask_radius_from(masks: list[int], mask: int, c: int) -> int:
    seen = 1 << c
    frontier = 1 << c
    r = 0
    while seen != mask:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= masks[v] & mask
        nxt &= ~seen
        if not nxt:
            return 1 << 30
        seen |= nxt
        frontier = nxt
        r += 1
    return r


def grad_exact(g: Graph, d: int, limit: int = GRAD_EXACT_LIMIT) -> GradEstimate:
    """Exact nabla_d: max |E(H)|/|V(H)| over depth-d shallow minors H of g."""
    if d < 0:
        raise ValueError("rank must be non-negative")
    if g.n > limit:
        raise SizeLimitError(f"grad_exact limited to {limit} vertices (got {g.n}); use grad_lower_bound")
    if g.m == 0:
        return GradEstimate(d, Fraction(0), (), True)
    order = list(g.vertices)
    n = len(order)
    sets = _branch_sets(g, d)
    best = [0, 1, ()]  # numerator, denominator, chosen masks
    chosen: list[tuple[int, int]] = []

    def rec(i: int, used: int, edges: int) -> None:
        while i < n and used >> i & 1:
            i += 1
        k = len(chosen)
        if k and edges * best[1] > best[0] * k:
            best[0], best[1], best[2] = edges, k, tuple(m for m, _ in chosen)
        if i >= n:
            return
        # vertex i is either deleted or the minimum of a new branch set
        rec(i + 1, used | (1 << i), edges)
        for mask, nb in sets[i]:
            if mask & used:
                continue
            gained = sum(1 for m, _ in chosen if m & nb)
            chosen.append((mask, nb))
            rec(i + 1, used | mask, edges + gained)
            chosen.pop()

    rec(0, 0, 0)
    witness = tuple(frozenset(order[j] for j in range(n) if m >> j & 1) for m in best[2])
    return GradEstimate(d, Fraction(best[0], best[1]), witness, True)


def grad_lower_bound(g: Graph, d: int) -> GradEstimate:
    """Greedy shallow-minor witness: merge adjacent branch sets while the radius
    stays <= d and the density improves, then peel low-degree branch sets."""
    if g.n == 0:
        return GradEstimate(d, Fraction(0), ())
    sets = [frozenset([v]) for v in g.vertices]
    best_sets = list(sets)
    best = minor_density(g, sets)
    improved = d > 0
    while improved:
        improved = False
        owner = {v: i for i, b in enumerate(sets) for v in b}
        for i, b in enumerate(sets):
            nbr_sets = sorted({owner[u] for v in b for u in g.neighbors(v) if u in owner} - {i})
            for j in nbr_sets:
                merged = b | sets[j]
                if not _radius_ok(g, merged, d):
                    continue
                trial = [s for k, s in enumerate(sets) if k not in (i, j)] + [merged]
                val = minor_density(g, trial)
                if val > minor_density(g, sets):
                    sets = trial
                    improved = True
                    break
            if improved:
                break
        if minor_density(g, sets) > best:
            best, best_sets = minor_density(g, sets), list(sets)
    # peel: densest-subgraph style on the quotient
    cur = list(best_sets)
    while len(cur) > 1:
        owner = {v: i for i, b in enumerate(cur) for v in b}
        deg = [set() for _ in cur]
        for u, v in g.edges():
            a, c = owner.get(u), owner.get(v)
            if a is not None and c is not None and a != c:
                deg[a].add(c)
                deg[c].add(a)
        drop = min(range(len(cur)), key=lambda k: (len(deg[k]), min(cur[k])))
        cur = [b for k, b in enumerate(cur) if k != drop]
        val = minor_density(g, cur)
        if val > best:
            best, best_sets = val, list(cur)
    return GradEstimate(d, best, tuple(best_sets))


def count_cliques(g: Graph, budget: int = CLIQUE_BUDGET) -> int:
    """Number of nonempty complete subgraphs, enumerated along a degeneracy order."""
    k, order = degeneracy_order(g)
    if (1 << k) * max(g.n, 1) > budget:
        raise SizeLimitError(f"2^{k} * {g.n} cliques exceeds the clique budget {budget}")
    pos = {v: i for i, v in enumerate(order)}
    total = 0
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        total += 1 + _count_extensions(g, later)
    return total


def _count_extensions(g: Graph, cand: list[int]) -> int:
    total = 0
    for i, u in enumerate(cand):
        rest = [w for w in cand[i + 1:] if g.has_edge(u, w)]
        total += 1 + _count_extensions(g, rest)
    return total


def clique_bound(degeneracy: int, n: int) -> int:
    return (1 << degeneracy) * (n - degeneracy + 1)


def _pow4_at_least(exponent: Fraction, value: Fraction) -> bool:
    """Exact test 4**exponent >= value for exponent >= 0."""
    if value <= 0:
        return True
    p, q = exponent.numerator, exponent.denominator
    return Fraction(4) ** p >= value ** q


def check_corollary_bounds(g: Graph, s: Iterable[int], components: Sequence[Iterable[int]],
                           nabla_bound) -> dict:
    """Check the large-degree count and the distinct-neighborhood count against nabla_bound."""
    s = frozenset(s)
    comps = [frozenset(c) for c in components]
    nb = Fraction(nabla_bound)
    used: set[int] = set()
    for c in comps:
        if c & s or c & used:
            raise GraphError("components must be disjoint and avoid s")
        used |= c
        if len(c) > 1 and len(g.subgraph(c).edges()) < len(c) - 1:
            raise GraphError("component is not connected")
    neighborhoods = [g.neighborhood(c) & s for c in comps]
    threshold = 2 * nb
    large = sum(1 for nbh in neighborhoods if len(nbh) > threshold)
    large_limit = 2 * nb * len(s)
    # the empty neighborhood is not a cluster attached to s
    distinct = len({x for x in neighborhoods if x})
    if s:
        rest = Fraction(distinct) / len(s) - 2 * nb
        clusters_ok = _pow4_at_least(nb, rest)
    else:
        clusters_ok = distinct == 0
    return {
        "nabla_bound": str(nb),
        "large_degree_count": large,
        "large_degree_limit": str(large_limit),
        "large_degree_ok": large <= large_limit,
        "distinct_neighborhoods": distinct,
        "distinct_limit": f"(4^{nb} + 2*{nb})*{len(s)}",
        "distinct_ok": clusters_ok,
    }


def profile(g: Graph, ranks: Iterable[int] = (0, 1, 2)) -> dict:
    k, _ = degeneracy_order(g)
    try:
        cliques = count_cliques(g)
    except SizeLimitError:
        cliques = None
    grads = []
    for r in ranks:
        est = grad_exact(g, r) if g.n <= GRAD_EXACT_LIMIT else grad_lower_bound(g, r)
        grads.append(est.to_dict())
    return {
        "n": g.n,
        "m": g.m,
        "degeneracy": k,
        "cliques": cliques,
        "clique_bound": clique_bound(k, g.n) if g.n >= k else None,
        "grad": grads,
    }
