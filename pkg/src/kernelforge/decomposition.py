"""Treedepth decompositions, DFS path decompositions and nice tree decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, GraphError, connected_components

EXACT_TD_LIMIT = 20


class DecompositionError(GraphError):
    """A decomposition violates one of its axioms."""


class SizeLimitError(ValueError):
    """Instance too large for an exponential-time routine."""


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest given by a parent map; ``height`` counts vertices on the longest root path."""

    parent: dict[int, int | None]
    height: int

    @property
    def vertices(self) -> list[int]:
        return sorted(self.parent)

    def roots(self) -> list[int]:
        return sorted(v for v, p in self.parent.items() if p is None)

    def depth(self, v: int) -> int:
        d = 0
        while v is not None:
            d += 1
            v = self.parent[v]
        return d

    def ancestors(self, v: int) -> list[int]:
        out = []
        v = self.parent[v]
        while v is not None:
            out.append(v)
            v = self.parent[v]
        return out

    def validate(self, g: Graph) -> None:
        if set(self.parent) != set(g.vertices):
            raise DecompositionError("forest does not cover exactly V(G)")
        for v in self.parent:
            seen = set()
            u = v
            while u is not None:
                if u in seen:
                    raise DecompositionError(f"parent relation has a cycle through {v}")
                seen.add(u)
                u = self.parent[u]
        for u, v in g.edges():
            if u not in self.ancestors(v) and v not in self.ancestors(u):
                raise DecompositionError(f"edge {u}-{v} not in closure of the forest")
        h = max((self.depth(v) for v in self.parent), default=0)
        if h != self.height:
            raise DecompositionError(f"recorded height {self.height} != actual {h}")

    def to_dict(self) -> dict:
        return {
            "height": self.height,
            "parent": {str(v): p for v, p in sorted(self.parent.items())},
        }


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _TreedepthSolver:
    """Memoized vertex-removal recursion over connected vertex subsets (bitmasks)."""

    def __init__(self, g: Graph):
        self.order, self.masks = g.bitmasks()
        self.memo: dict[tuple[int, int], int | None] = {}
        self.comp_memo: dict[int, list[int]] = {}

    def components(self, mask: int) -> list[int]:
        hit = self.comp_memo.get(mask)
        if hit is not None:
            return hit
        out = []
        rest = mask
        masks = self.masks
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                i = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                new = masks[i] & mask & ~comp
                comp |= new
                frontier |= new
            out.append(comp)
            rest &= ~comp
        if len(self.comp_memo) < 500_000:
            self.comp_memo[mask] = out
        return out

    def dfs_depth(self, mask: int) -> int:
        """Depth (in vertices) of a DFS tree of the connected set ``mask``."""
        start = (mask & -mask).bit_length() - 1
        visited = 1 << start
        best = 1
        masks = self.masks
        path = [start]
        pending = [masks[start] & mask]
        while path:
            cand = pending[-1] & ~visited
            if not cand:
                path.pop()
                pending.pop()
                continue
            nxt = (cand & -cand).bit_length() - 1
            pending[-1] = cand & ~(1 << nxt)
            visited |= 1 << nxt
            path.append(nxt)
            pending.append(masks[nxt] & mask)
            if len(path) > best:
                best = len(path)
        return best

    def check(self, mask: int, d: int) -> bool:
        """True iff the connected set ``mask`` has treedepth <= d; records a root choice."""
        size = _popcount(mask)
        if size <= d:
            return True
        if d <= 0:
            return False
        key = (mask, d)
        if key in self.memo:
            return self.memo[key] is not None
        masks = self.masks
        if d == 1:
            self.memo[key] = None  # connected and size >= 2 means an edge
            return False
        if self.dfs_depth(mask) >= (1 << d):
            self.memo[key] = None
            return False
        # td <= d forces treewidth <= d-1, hence a vertex of degree <= d-1
        if min(_popcount(masks[i] & mask) for i in _bits(mask)) >= d:
            self.memo[key] = None
            return False
        cands = sorted(_bits(mask), key=lambda i: (-_popcount(masks[i] & mask), i))
        for v in cands:
            rest = mask & ~(1 << v)
            if all(self.check(c, d - 1) for c in self.components(rest)):
                self.memo[key] = v
                return True
        self.memo[key] = None
        return False

    def build(self, mask: int, d: int, parent: int | None, out: dict[int, int | None]) -> None:
        for comp in self.components(mask):
            self._build_conn(comp, d, parent, out)

    def _build_conn(self, mask: int, d: int, parent, out) -> None:
        size = _popcount(mask)
        if size <= d and (mask, d) not in self.memo:
            # chain: any order is a valid decomposition of height <= size
            prev = parent
            for i in _bits(mask):
                out[self.order[i]] = prev
                prev = self.order[i]
            return
        v = self.memo[(mask, d)]
        assert v is not None
        out[self.order[v]] = parent
        self.build(mask & ~(1 << v), d - 1, self.order[v], out)


def treedepth_check(g: Graph, d: int) -> TreedepthDecomposition | None:
    """Return a decomposition of height <= d if td(g) <= d, else None."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if g.n == 0:
        return TreedepthDecomposition({}, 0)
    parent: dict[int, int | None] = {}
    for comp in connected_components(g):
        h = g.subgraph(comp)
        solver = _TreedepthSolver(h)
        full = (1 << h.n) - 1
        if not solver.check(full, d):
            return None
        solver.build(full, d, None, parent)
    td = TreedepthDecomposition(parent, 0)
    return TreedepthDecomposition(parent, max(td.depth(v) for v in parent))


def treedepth_lower_bound(g: Graph) -> int:
    """Cheap lower bound: a DFS path on p vertices forces td >= ceil(log2(p+1))."""
    if g.n == 0:
        return 0
    best = 1
    for comp in connected_components(g):
        _, depth, _ = dfs_tree(g, min(comp))
        p = max(depth.values())
        best = max(best, p.bit_length())
    return best


def treedepth_exact(g: Graph, limit: int = EXACT_TD_LIMIT) -> TreedepthDecomposition:
    """Optimal treedepth decomposition by memoized search (small graphs only)."""
    if g.n > limit:
        raise SizeLimitError(
            f"treedepth_exact limited to {limit} vertices (got {g.n}); use treedepth_check"
        )
    if g.n == 0:
        return TreedepthDecomposition({}, 0)
    parent: dict[int, int | None] = {}
    height = 0
    for comp in connected_components(g):
        h = g.subgraph(comp)
        solver = _TreedepthSolver(h)
        full = (1 << h.n) - 1
        d = max(1, treedepth_lower_bound(h))
        while not solver.check(full, d):
            d += 1
        solver.build(full, d, None, parent)
        height = max(height, d)
    td = TreedepthDecomposition(parent, 0)
    return TreedepthDecomposition(parent, max(td.depth(v) for v in parent))


def treedepth(g: Graph) -> int:
    return treedepth_exact(g).height


def dfs_tree(g: Graph, root: int, allowed: Iterable[int] | None = None):
    """DFS from ``root`` visiting neighbors in ascending id order.

    Returns (parent, depth, preorder); depth counts vertices (root has depth 1).
    """
    allowed_set = set(g.vertices) if allowed is None else set(allowed)
    parent: dict[int, int | None] = {root: None}
    depth = {root: 1}
    preorder = [root]
    stack = [(root, iter(g.neighbors(root)))]
    while stack:
        v, it = stack[-1]
        for u in it:
            if u in allowed_set and u not in parent:
                parent[u] = v
                depth[u] = depth[v] + 1
                preorder.append(u)
                stack.append((u, iter(g.neighbors(u))))
                break
        else:
            stack.pop()
    return parent, depth, preorder


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def validate(self, g: Graph) -> None:
        validate_tree_decomposition(g, list(self.bags), [(i, i + 1) for i in range(len(self.bags) - 1)])

    def to_dict(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags]}


def dfs_path_decomposition(g: Graph, component: Iterable[int]) -> PathDecomposition:
    """Path decomposition whose bags are the leaf-to-root paths of a DFS tree.

    The DFS is rooted at the minimum vertex of ``component``; bags follow the
    DFS order of their leaves.
    """
    comp = set(component)
    if not comp:
        return PathDecomposition(())
    root = min(comp)
    parent, _, preorder = dfs_tree(g, root, comp)
    if len(parent) != len(comp):
        raise DecompositionError("component does not induce a connected subgraph")
    has_child = {p for p in parent.values() if p is not None}
    bags = []
    for leaf in preorder:
        if leaf in has_child:
            continue
        bag = []
        v = leaf
        while v is not None:
            bag.append(v)
            v = parent[v]
        bags.append(frozenset(bag))
    return PathDecomposition(tuple(bags))


def validate_tree_decomposition(g: Graph, bags: Sequence[frozenset[int]], edges: Sequence[tuple[int, int]]) -> None:
    """Raise DecompositionError naming the first violated axiom."""
    n = len(bags)
    if g.n and not n:
        raise DecompositionError("vertex coverage: no bags")
    if len(edges) != max(n - 1, 0):
        raise DecompositionError("decomposition tree must have n-1 edges")
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0} if n else set()
    stack = [0] if n else []
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        raise DecompositionError("decomposition tree is not connected")
    covered = set().union(*bags) if bags else set()
    if covered - set(g.vertices):
        raise DecompositionError("bags contain vertices not in the graph")
    if set(g.vertices) - covered:
        raise DecompositionError(f"vertex coverage: {sorted(set(g.vertices) - covered)[:5]} uncovered")
    for u, v in g.edges():
        if not any(u in b and v in b for b in bags):
            raise DecompositionError(f"edge coverage: edge {u}-{v} in no bag")
    for v in covered:
        nodes = {i for i in range(n) if v in bags[i]}
        start = next(iter(nodes))
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodes and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != nodes:
            raise DecompositionError(f"connectivity: bags containing {v} are not connected")


LEAF, JOIN, INTRODUCE, FORGET = "leaf", "join", "introduce", "forget"


@dataclass
class NiceNode:
    kind: str
    bag: frozenset[int]
    children: list[int] = field(default_factory=list)
    vertex: int | None = None


@dataclass
class NiceTreeDecomposition:
    nodes: list[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max((len(x.bag) for x in self.nodes), default=0) - 1

    def postorder(self) -> list[int]:
        out = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.nodes[x].children):
                stack.append((c, False))
        return out

    def validate(self, g: Graph) -> None:
        edges = [(x, c) for x, node in enumerate(self.nodes) for c in node.children]
        validate_tree_decomposition(g, [x.bag for x in self.nodes], edges)
        for i, x in enumerate(self.nodes):
            kids = [self.nodes[c] for c in x.children]
            if x.kind == LEAF:
                ok = not kids and len(x.bag) == 1
            elif x.kind == JOIN:
                ok = len(kids) == 2 and all(k.bag == x.bag for k in kids)
            elif x.kind == INTRODUCE:
                ok = len(kids) == 1 and x.vertex not in kids[0].bag and x.bag == kids[0].bag | {x.vertex}
            elif x.kind == FORGET:
                ok = len(kids) == 1 and x.vertex in kids[0].bag and x.bag == kids[0].bag - {x.vertex}
            else:
                ok = False
            if not ok:
                raise DecompositionError(f"node {i} violates the {x.kind} node constraint")

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "nodes": [
                {"kind": x.kind, "bag": sorted(x.bag), "children": x.children, "vertex": x.vertex}
                for x in self.nodes
            ],
        }


def make_nice(
    g: Graph,
    bags: Sequence[Iterable[int]],
    root_bag: Iterable[int],
    edges: Sequence[tuple[int, int]] | None = None,
) -> NiceTreeDecomposition:
    """Normalize a tree (default: path) decomposition into a nice one rooted at ``root_bag``."""
    bags = [frozenset(b) for b in bags]
    if edges is None:
        edges = [(i, i + 1) for i in range(len(bags) - 1)]
    root_bag = frozenset(root_bag)
    if not bags:
        bags = [frozenset()]
    validate_tree_decomposition(g, bags, edges)

    # root at the bag sharing most with root_bag; vertices of root_bag missing
    # from that bag must be absent from every bag.
    anchor = max(range(len(bags)), key=lambda i: (len(bags[i] & root_bag), -i))
    missing = root_bag - bags[anchor]
    if any(v in b for v in missing for b in bags):
        raise DecompositionError("root bag cannot be attached without breaking connectivity")
    if missing - set(g.vertices):
        raise DecompositionError("root bag contains vertices outside the graph")

    adj: dict[int, list[int]] = {i: [] for i in range(len(bags))}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    children: dict[int, list[int]] = {i: [] for i in range(len(bags))}
    order = [anchor]
    seen = {anchor}
    for x in order:
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                children[x].append(y)
                order.append(y)

    nodes: list[NiceNode] = []

    def add(kind, bag, kids, vertex=None) -> int:
        nodes.append(NiceNode(kind, bag, list(kids), vertex))
        return len(nodes) - 1

    def morph(top: int, target: frozenset[int]) -> int:
        cur = nodes[top].bag
        for v in sorted(cur - target):
            cur = cur - {v}
            top = add(FORGET, cur, [top], v)
        for v in sorted(target - cur):
            cur = cur | {v}
            top = add(INTRODUCE, cur, [top], v)
        return top

    def leaf_chain(bag: frozenset[int]) -> int:
        if not bag:
            raise DecompositionError("empty leaf bag")
        vs = sorted(bag)
        top = add(LEAF, frozenset([vs[0]]), [])
        return morph(top, bag)

    built: dict[int, int] = {}
    for x in reversed(order):
        bag = bags[x]
        tops = [morph(built[c], bag) for c in children[x]]
        if not tops:
            if not bag:
                # empty-bag leaf: only possible for the empty graph
                top = add(LEAF, bag, [])
            else:
                top = leaf_chain(bag)
        else:
            top = tops[0]
            for other in tops[1:]:
                top = add(JOIN, bag, [top, other])
        built[x] = top
    root = morph(built[anchor], root_bag)
    nice = NiceTreeDecomposition(nodes, root)
    if g.n:
        nice.validate(g)
    return nice
