"""Stretch of partitions, sequence verification and exact stretch-width.

The stretch of a part X counts the other parts whose span meets the span of
the closed red neighbourhood of X. A sequence's stretch is the maximum over
all n partitions of its chain, finest and coarsest included.
"""
from __future__ import annotations

import heapq
import itertools
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .graph import (
    OrderedGraph,
    PartitionError,
    PartitionSequence,
    SequenceError,
    VertexPartition,
    inhomogeneous,
    iter_bits,
    relabel,
    relabel_sequence,
)

DEFAULT_LATTICE_LIMIT = 10
DEFAULT_ORDER_LIMIT = 7


@dataclass(frozen=True)
class StretchReport:
    per_step_stretch: tuple[int, ...]
    max_stretch: int
    worst_step: int
    worst_part: int


@dataclass(frozen=True)
class FixedOrderResult:
    value: int | None  # None when the cap was exceeded
    witness: PartitionSequence | None
    cap_exceeded: bool = False


@dataclass(frozen=True)
class ExactResult:
    value: int
    best_order: tuple[int, ...]
    witness: PartitionSequence  # in the labels of relabel(G, best_order)


def _span(mask: int) -> tuple[int, int]:
    return (mask & -mask).bit_length() - 1, mask.bit_length() - 1


def _stretch_of_masks(nbr: Sequence[int], masks: Sequence[int]) -> list[int]:
    """Per-part stretch for a partition given as block bitsets."""
    p = len(masks)
    spans = [_span(m) for m in masks]
    lo = [s[0] for s in spans]
    hi = [s[1] for s in spans]
    a, b = lo[:], hi[:]
    for i in range(p):
        for j in range(i + 1, p):
            if inhomogeneous(nbr, masks[i], masks[j]):
                a[i] = min(a[i], lo[j]); b[i] = max(b[i], hi[j])
                a[j] = min(a[j], lo[i]); b[j] = max(b[j], hi[i])
    out = []
    for i in range(p):
        c = 0
        for j in range(p):
            if j != i and lo[j] <= b[i] and hi[j] >= a[i]:
                c += 1
        out.append(c)
    return out


def partition_stretch(G: OrderedGraph, P: VertexPartition) -> tuple[int, dict[int, int]]:
    """(max stretch, representative -> stretch) for partition P of G."""
    if P.n != G.n:
        raise PartitionError("partition does not cover V(G)")
    per = _stretch_of_masks(G.nbr, P.masks)
    per_part = {b[0]: s for b, s in zip(P.blocks, per)}
    return max(per, default=0), per_part


class _Replay:
    """Incremental red graph and stretch along a merge chain.

    Red edges only change at the merged block. For a block W that was
    homogeneous to both X and Y, Z = X u Y is red to W iff W is full to one
    and empty to the other, which one vertex of each side decides.
    """

    def __init__(self, G: OrderedGraph):
        self.nbr = G.nbr
        self.mask = {v: 1 << v for v in range(G.n)}
        self.lo = {v: v for v in range(G.n)}
        self.hi = {v: v for v in range(G.n)}
        self.red: dict[int, set[int]] = {v: set() for v in range(G.n)}
        self.los = list(range(G.n))
        self.his = list(range(G.n))

    def merge(self, a: int, b: int) -> None:
        x, y = min(a, b), max(a, b)
        X, Y = self.mask[x], self.mask[y]
        Z = X | Y
        rx, ry = self.red.pop(x), self.red.pop(y)
        rx.discard(y); ry.discard(x)
        x0 = (X & -X).bit_length() - 1
        y0 = (Y & -Y).bit_length() - 1
        newred = set()
        for w, W in self.mask.items():
            if w == x or w == y:
                continue
            if w in rx or w in ry:
                newred.add(w)
            elif ((self.nbr[x0] & W) != 0) != ((self.nbr[y0] & W) != 0):
                newred.add(w)
        for w in rx | ry:
            self.red[w].discard(x); self.red[w].discard(y)
        for w in newred:
            self.red[w].add(x)
        self.red[x] = newred
        del self.mask[y]
        self.mask[x] = Z
        for arr, old in ((self.los, self.lo[x]), (self.los, self.lo[y]), (self.his, self.hi[x]), (self.his, self.hi[y])):
            arr.pop(bisect_left(arr, old))
        lo, hi = min(self.lo[x], self.lo[y]), max(self.hi[x], self.hi[y])
        del self.lo[y], self.hi[y]
        self.lo[x], self.hi[x] = lo, hi
        insort(self.los, lo)
        insort(self.his, hi)

    def stretch(self) -> tuple[int, int]:
        """(max stretch, representative attaining it)."""
        p = len(self.mask)
        best, arg = -1, -1
        for x in self.mask:
            a, b = self.lo[x], self.hi[x]
            for w in self.red[x]:
                a = min(a, self.lo[w]); b = max(b, self.hi[w])
            # parts meeting [a,b] = all minus those entirely right or left of it
            meet = p - (p - bisect_right(self.los, b)) - bisect_left(self.his, a)
            s = meet - 1
            if s > best:
                best, arg = s, x
        return max(best, 0), arg


def verify_sequence(G: OrderedGraph, seq: PartitionSequence) -> StretchReport:
    if seq.n != G.n:
        raise SequenceError(f"sequence is on {seq.n} vertices, graph on {G.n}")
    if len(seq.merges) != max(G.n - 1, 0):
        raise SequenceError(f"expected {max(G.n - 1, 0)} merges, got {len(seq.merges)}")
    state = _Replay(G)
    per = []
    worst = (-1, 0, 0)
    s, arg = state.stretch()
    per.append(s)
    worst = (s, 0, arg)
    for idx, (a, b) in enumerate(seq.merges):
        if a == b:
            raise SequenceError(f"merging {a} with itself", idx)
        for r in (a, b):
            if r not in state.mask:
                raise SequenceError(f"representative {r} is not a live block", idx)
        state.merge(a, b)
        s, arg = state.stretch()
        per.append(s)
        if s > worst[0]:
            worst = (s, idx + 1, arg)
    if G.n == 0:
        return StretchReport((), 0, 0, 0)
    return StretchReport(tuple(per), worst[0], worst[1], worst[2])


# ------------------------------------------------------------- exact search

def _merge_state(state: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    z = state[i] | state[j]
    rest = [m for k, m in enumerate(state) if k != i and k != j]
    rest.append(z)
    rest.sort(key=lambda m: m & -m)
    return tuple(rest)


def bottleneck_lattice_search(n: int, cost, cap: int | None = None) -> FixedOrderResult:
    """Minimise the maximum node cost along a path from the finest to the
    coarsest partition, moving by single merges.

    States are tuples of block bitsets sorted by lowest vertex, a canonical
    encoding equivalent to restricted-growth strings. `cost(state)` gives the
    stretch of a state. Nodes whose own cost exceeds `cap` are never entered.
    """
    start = tuple(1 << v for v in range(n))
    if n <= 1:
        return FixedOrderResult(0, PartitionSequence(n, ()))
    c0 = cost(start)
    if cap is not None and c0 > cap:
        return FixedOrderResult(None, None, True)
    best = {start: c0}
    parent: dict[tuple, tuple] = {}
    heap = [(c0, 0, start)]
    counter = itertools.count(1)
    done = set()
    while heap:
        c, _, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        if len(state) == 1:
            merges = []
            while state in parent:
                prev, pair = parent[state]
                merges.append(pair)
                state = prev
            merges.reverse()
            return FixedOrderResult(c, PartitionSequence(n, tuple(merges)))
        p = len(state)
        for i in range(p):
            for j in range(i + 1, p):
                nxt = _merge_state(state, i, j)
                if nxt in done:
                    continue
                own = cost(nxt)
                if cap is not None and own > cap:
                    continue
                nc = max(c, own)
                if nc < best.get(nxt, 1 << 60):
                    best[nxt] = nc
                    a = (state[i] & -state[i]).bit_length() - 1
                    b = (state[j] & -state[j]).bit_length() - 1
                    parent[nxt] = (state, (a, b))
                    heapq.heappush(heap, (nc, next(counter), nxt))
    return FixedOrderResult(None, None, True)


def exact_stw_fixed_order(G: OrderedGraph, cap: int | None = None, limit: int = DEFAULT_LATTICE_LIMIT) -> FixedOrderResult:
    """stw(G, index order) by bottleneck search over the partition lattice."""
    if G.n > limit:
        raise ValueError(f"n={G.n} above lattice limit {limit}")
    if cap is None:
        value, merges = _fixed_order_cached(G.n, G.edges)
        return FixedOrderResult(value, PartitionSequence(G.n, merges))
    nbr = G.nbr
    memo: dict = {}

    def cost(state):
        v = memo.get(state)
        if v is None:
            v = memo[state] = max(_stretch_of_masks(nbr, state))
        return v

    return bottleneck_lattice_search(G.n, cost, cap)


@lru_cache(maxsize=1 << 16)
def _fixed_order_cached(n: int, edges: tuple) -> tuple[int, tuple]:
    G = OrderedGraph(n, edges)
    nbr = G.nbr
    res = bottleneck_lattice_search(n, lambda st: max(_stretch_of_masks(nbr, st)))
    return res.value, res.witness.merges


def exact_stw(G: OrderedGraph, limit: int = DEFAULT_ORDER_LIMIT, lattice_limit: int = DEFAULT_LATTICE_LIMIT) -> ExactResult:
    """Minimum of stw(G, order) over all orders; an order and its reverse
    give the same value, so only one of each pair is searched."""
    if G.n > limit:
        raise ValueError(f"n={G.n} above order limit {limit}")
    best = None
    for order in itertools.permutations(range(G.n)):
        if G.n > 1 and order[0] > order[-1]:
            continue
        H = relabel(G, order)
        res = exact_stw_fixed_order(H, limit=lattice_limit)
        if best is None or res.value < best.value:
            best = ExactResult(res.value, tuple(order), res.witness)
            if best.value == 0:
                break
    return best


# ---------------------------------------------- order from red components

class ComponentSizeError(ValueError):
    def __init__(self, step: int, size: int, t: int):
        super().__init__(f"partition {step} has a red component of size {size} > {t}")
        self.step = step
        self.size = size


def _red_components(nbr, masks: dict[int, int]) -> list[list[int]]:
    reps = sorted(masks)
    adj = {r: [] for r in reps}
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            if inhomogeneous(nbr, masks[a], masks[b]):
                adj[a].append(b); adj[b].append(a)
    seen, comps = set(), []
    for r in reps:
        if r in seen:
            continue
        stack, comp = [r], []
        seen.add(r)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y); stack.append(y)
        comps.append(comp)
    return comps


def order_from_component_sequence(G: OrderedGraph, seq: PartitionSequence, t: int) -> list[int]:
    """Vertex order built by refining red components from the coarsest partition down.

    Returns `order` with order[position] = vertex. Every red component along
    the sequence must have at most t parts; otherwise ComponentSizeError names
    the offending partition index (0 = finest).
    """
    snaps = [dict(live) for live in seq.replay_masks()]
    nbr = G.nbr
    comp_lists = [_red_components(nbr, s) for s in snaps]
    for step, comps in enumerate(comp_lists):
        for c in comps:
            if len(c) > t:
                raise ComponentSizeError(step, len(c), t)
    # ordered list of components, each a set of vertices
    def verts(snap, comp):
        m = 0
        for r in comp:
            m |= snap[r]
        return m

    cur = [verts(snaps[-1], c) for c in comp_lists[-1]]
    for step in range(len(snaps) - 2, -1, -1):
        a, b = seq.merges[step]
        z = snaps[step + 1][min(a, b)]
        comps = sorted((verts(snaps[step], c) for c in comp_lists[step]), key=lambda m: m & -m)
        out = []
        for block in cur:
            if block & z:
                out.extend(c for c in comps if c & block)
            else:
                out.append(block)
        cur = out
    order = []
    for block in cur:
        order.extend(iter_bits(block))
    return order


def stretch_under_order(G: OrderedGraph, seq: PartitionSequence, order: Sequence[int]) -> StretchReport:
    """verify_sequence after moving G and seq to the given order."""
    return verify_sequence(relabel(G, order), relabel_sequence(seq, order))
