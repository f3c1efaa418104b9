"""Problem signatures of boundaried graphs.

Vertex Cover: the normalized table of optimum cover sizes per boundary
intersection. Longest Path: the set of satisfiable path configurations.
Two boundaried graphs with equal signatures behave the same under every
gluing (up to the additive offset for Vertex Cover).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..oracles import BudgetExceeded, _vc_masks, OracleBudget
from .boundaried import BoundariedGraph

SIGNATURE_VERTEX_LIMIT = 24
VERTEX_COVER, LONGEST_PATH = "vertex-cover", "longest-path"


@dataclass(frozen=True)
class VCSignature:
    """``table[X]`` for X a bitmask over boundary labels (bit i = label i+1);
    ``None`` marks an infeasible entry. Entries never exceed the full-boundary entry."""

    t: int
    offset: int
    table: tuple[int | None, ...]

    @property
    def key(self) -> tuple:
        return (self.t, self.table)

    def to_json(self):
        return list(self.table)


def vc_costs(h: BoundariedGraph, budget: OracleBudget | None = None) -> list[int | None]:
    """Raw minimum cover sizes with S ∩ boundary = X, for each label mask X."""
    if h.n > SIGNATURE_VERTEX_LIMIT:
        raise BudgetExceeded(f"vc_signature: {h.n} vertices exceeds {SIGNATURE_VERTEX_LIMIT}")
    budget = budget or OracleBudget(max_vertices=SIGNATURE_VERTEX_LIMIT)
    clock = budget.start()
    order, masks = h.graph.bitmasks()
    index = {v: i for i, v in enumerate(order)}
    bd = [index[v] for v in h.boundary]
    bd_mask = 0
    for i in bd:
        bd_mask |= 1 << i
    full = (1 << len(order)) - 1
    costs: list[int | None] = []
    for x in range(1 << h.t):
        chosen = 0
        out = 0
        for j, i in enumerate(bd):
            if x >> j & 1:
                chosen |= 1 << i
            else:
                out |= 1 << i
        # excluded boundary vertices force all their neighbors into the cover
        forced = 0
        feasible = True
        m = out
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if masks[i] & out:
                feasible = False
                break
            forced |= masks[i]
        if not feasible:
            costs.append(None)
            continue
        forced &= ~bd_mask
        alive = full & ~bd_mask & ~forced
        k = bin(chosen).count("1") + bin(forced).count("1")
        costs.append(k + _vc_masks(masks, alive, clock))
    return costs


def vc_signature(h: BoundariedGraph) -> VCSignature:
    """Costs normalized by their minimum and capped at the full-boundary entry.

    The cap loses nothing: if X costs more than the whole boundary B, the host
    side pays at most t - |X| extra for B, so X never beats B in a gluing.
    """
    costs = vc_costs(h)
    finite = [c for c in costs if c is not None]
    offset = min(finite)
    full = costs[-1]
    cap = full if full is not None else offset + h.t + 1
    table = tuple(None if c is None else min(c, cap) - offset for c in costs)
    return VCSignature(h.t, offset, table)


Triple = tuple[int, int, int]


@dataclass(frozen=True)
class LPSignature:
    """The satisfiable configurations; each is a sorted tuple of (s, length, t)
    triples with s <= t, label 0 standing for a non-boundary end."""

    t: int
    satisfied: frozenset[tuple[Triple, ...]]
    max_length: int = 0

    @property
    def key(self) -> tuple:
        return (self.t, tuple(sorted(self.satisfied)))

    def to_json(self):
        return [[list(tr) for tr in c] for c in sorted(self.satisfied)]


@dataclass(frozen=True)
class _Segment:
    triple: Triple
    inner: int  # mask of non-boundary vertices on the path
    ends: tuple[int, ...]  # boundary labels used, one entry per use
    zeros: int  # non-boundary ends


def _segments(h: BoundariedGraph, cap: int | None, clock) -> Iterator[_Segment]:
    """Every simple path whose boundary vertices are among its ends."""
    order, masks = h.graph.bitmasks()
    label = [h.label(v) for v in order]
    n = len(order)
    bd_mask = 0
    for i in range(n):
        if label[i]:
            bd_mask |= 1 << i
    seen: set[tuple[Triple, int]] = set()

    def emit(a: int, b: int, length: int, inner: int):
        la, lb = label[a], label[b]
        lo, hi = min(la, lb), max(la, lb)
        key = ((lo, length, hi), inner)
        if key in seen:
            return None
        seen.add(key)
        if length == 0:
            ends = (la, la) if la else ()
            zeros = 0 if la else 2
        else:
            ends = tuple(x for x in (la, lb) if x)
            zeros = (la == 0) + (lb == 0)
        return _Segment((lo, length, hi), inner, ends, zeros)

    for a in range(n):
        seg = emit(a, a, 0, 0 if label[a] else 1 << a)
        if seg:
            yield seg
        # extend from a; once a boundary vertex is reached (other than a) the path stops
        stack = [(a, 1 << a, 0 if label[a] else 1 << a, 0)]
        while stack:
            v, used, inner, length = stack.pop()
            clock.tick()
            if cap is not None and length >= cap:
                continue
            ext = masks[v] & ~used
            while ext:
                u = (ext & -ext).bit_length() - 1
                ext &= ext - 1
                if label[u]:
                    seg = emit(a, u, length + 1, inner)
                    if seg:
                        yield seg
                else:
                    ni = inner | (1 << u)
                    seg = emit(a, u, length + 1, ni)
                    if seg:
                        yield seg
                    stack.append((u, used | (1 << u), ni, length + 1))


def lp_signature(h: BoundariedGraph, d: int | None = None,
                 budget: OracleBudget | None = None) -> LPSignature:
    """Configurations of internally disjoint paths realizable in h.

    Each boundary label may be used at most twice over all path ends (a
    single-vertex path on a boundary vertex uses it twice), and at most two
    ends lie off the boundary: the pieces a single host path can leave inside
    h. A segment with both ends off the boundary is the whole path and only
    appears alone. With ``d`` given, path lengths are capped at 2^d - 2.
    """
    if h.n > SIGNATURE_VERTEX_LIMIT:
        raise BudgetExceeded(f"lp_signature: {h.n} vertices exceeds {SIGNATURE_VERTEX_LIMIT}")
    cap = None if d is None else (1 << d) - 2
    budget = budget or OracleBudget(max_vertices=SIGNATURE_VERTEX_LIMIT)
    clock = budget.start()
    segs = _dedupe_orientation(list(_segments(h, cap, clock)))
    segs.sort(key=lambda s: (s.triple, s.inner))
    t = h.t
    found: set[tuple[Triple, ...]] = set()
    usage = [0] * (t + 1)
    chosen: list[Triple] = []

    def rec(start: int, inner: int, zeros: int) -> None:
        clock.tick()
        found.add(tuple(sorted(chosen)))
        for i in range(start, len(segs)):
            s = segs[i]
            if s.inner & inner or zeros + s.zeros > 2:
                continue
            if s.zeros == 2:
                # both ends inside h: the whole host path, so nothing else joins it
                if not chosen:
                    found.add((s.triple,))
                continue
            ok = True
            for lab in s.ends:
                usage[lab] += 1
                if usage[lab] > 2:
                    ok = False
            if ok:
                chosen.append(s.triple)
                rec(i + 1, inner | s.inner, zeros + s.zeros)
                chosen.pop()
            for lab in s.ends:
                usage[lab] -= 1

    rec(0, 0, 0)
    longest = max((tr[1] for c in found for tr in c), default=0)
    return LPSignature(t, frozenset(found), longest)


def _dedupe_orientation(segs: list[_Segment]) -> list[_Segment]:
    seen = set()
    out = []
    for s in segs:
        key = (s.triple, s.inner, tuple(sorted(s.ends)))
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def signature(problem: str, h: BoundariedGraph):
    if problem == VERTEX_COVER:
        return vc_signature(h)
    if problem == LONGEST_PATH:
        return lp_signature(h)
    raise ValueError(f"unknown problem {problem!r}")
