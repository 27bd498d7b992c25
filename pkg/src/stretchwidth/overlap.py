"""Overlap (crossing) graphs of ordered graphs, rainbows and clean bicliques.

Edges e, f cross when L(e) < L(f) < R(e) < R(f). Edge ids are indices into
G.edges, which is sorted by (L, R).
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .graph import OrderedGraph

DEFAULT_EDGE_BUDGET = 64
DEFAULT_NODE_CAP = 2_000_000


@dataclass(frozen=True)
class OverlapGraph:
    edges: tuple[tuple[int, int], ...]
    crossings: frozenset[tuple[int, int]]

    def degree(self, i: int) -> int:
        return sum(1 for a, b in self.crossings if a == i or b == i)

    def isolated(self) -> list[int]:
        touched = {x for p in self.crossings for x in p}
        return [i for i in range(len(self.edges)) if i not in touched]


def crosses(e, f) -> bool:
    (a, b), (c, d) = e, f
    return a < c < b < d or c < a < d < b


def _right_crossings(G: OrderedGraph) -> list[list[int]]:
    """For each edge e, the edges f with L(e) < L(f) < R(e) < R(f)."""
    E = G.edges
    lefts = [e[0] for e in E]
    out = []
    for a, b in E:
        lo = bisect_right(lefts, a)
        hi = bisect_left(lefts, b)
        out.append([j for j in range(lo, hi) if E[j][1] > b])
    return out


def overlap_graph(G: OrderedGraph) -> OverlapGraph:
    pairs = set()
    for i, js in enumerate(_right_crossings(G)):
        for j in js:
            pairs.add((i, j) if i < j else (j, i))
    return OverlapGraph(G.edges, frozenset(pairs))


# ---------------------------------------------------------------- rainbows

@dataclass(frozen=True)
class Rainbow:
    chain: tuple[int, ...]  # edge ids, outermost first
    edges: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.chain)


def nested_in(inner, outer) -> bool:
    """Non-strict interior containment of distinct edges."""
    return inner != outer and outer[0] <= inner[0] and inner[1] <= outer[1]


def edges_over(G: OrderedGraph, v: int, alive=None) -> list[int]:
    return [i for i, (a, b) in enumerate(G.edges) if a < v < b and (alive is None or alive(i))]


def max_rainbow_over(G: OrderedGraph, v: int, alive=None) -> Rainbow:
    """Maximum chain of nested edges strictly over v, lexicographically smallest
    by edge id among the maximum ones. `alive`, if given, filters edge ids."""
    ids = edges_over(G, v, alive)
    E = G.edges
    ids.sort(key=lambda i: (E[i][0], -E[i][1]))
    k = len(ids)
    best = [1] * k
    for x in range(k - 1, -1, -1):
        e = E[ids[x]]
        for y in range(x + 1, k):
            if nested_in(E[ids[y]], e) and best[y] + 1 > best[x]:
                best[x] = best[y] + 1
    if not k:
        return Rainbow((), ())
    need = max(best)
    chain = []
    cands = [x for x in range(k) if best[x] == need]
    while cands:
        x = min(cands, key=lambda c: ids[c])
        chain.append(ids[x])
        need -= 1
        e = E[ids[x]]
        cands = [y for y in range(k) if best[y] == need and nested_in(E[ids[y]], e)] if need else []
    return Rainbow(tuple(chain), tuple(E[i] for i in chain))


def is_rainbow(edges) -> bool:
    return all(nested_in(f, e) or nested_in(e, f) for i, e in enumerate(edges) for f in edges[i + 1:])


def max_crossing_chain_over(G: OrderedGraph, v: int) -> int:
    """Clique number of the overlap graph restricted to the edges over v.

    Edges over a common vertex either nest or cross, and a pairwise crossing
    set is a chain with strictly increasing left and right endpoints.
    """
    E = sorted(G.edges[i] for i in edges_over(G, v))
    best = [1] * len(E)
    for x in range(len(E)):
        for y in range(x):
            if E[y][0] < E[x][0] and E[y][1] < E[x][1]:
                best[x] = max(best[x], best[y] + 1)
    return max(best, default=0)


# ----------------------------------------------------------- clean bicliques

@dataclass(frozen=True)
class CleanBicliqueResult:
    status: str  # "found" | "absent" | "unresolved"
    s: int
    X: tuple[int, ...] = ()
    Y: tuple[int, ...] = ()
    exact: bool = True
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def check_clean_biclique(G: OrderedGraph, X, Y) -> bool:
    E = G.edges
    if not X or not Y:
        return False
    if max(E[x][0] for x in X) >= min(E[y][0] for y in Y):
        return False
    return all(crosses(E[x], E[y]) for x in X for y in Y)


def clean_biclique_at_least(G: OrderedGraph, s: int, budget: int = DEFAULT_EDGE_BUDGET,
                            node_cap: int = DEFAULT_NODE_CAP) -> CleanBicliqueResult:
    """Search for X, Y of s edges each with every x crossing every y from the left.

    A clean biclique is exactly a complete bipartite set in the directed
    relation x -> y (x crosses y and L(x) < L(y)), so no split enumeration is
    needed. Edges that cannot be on either side are peeled first, then X is
    built by branch and bound on the common out-neighbourhood. Within the
    edge budget the search always completes; beyond it a node cap applies and
    hitting it gives "unresolved".
    """
    if s < 1:
        raise ValueError("s >= 1 required")
    m = G.m
    exact = m <= budget
    out = [0] * m
    inn = [0] * m
    for i, js in enumerate(_right_crossings(G)):
        for j in js:
            out[i] |= 1 << j
            inn[j] |= 1 << i
    xs = (1 << m) - 1
    ys = (1 << m) - 1
    while True:
        nx = 0
        for i in range(m):
            if xs >> i & 1 and (out[i] & ys).bit_count() >= s:
                nx |= 1 << i
        ny = 0
        for j in range(m):
            if ys >> j & 1 and (inn[j] & nx).bit_count() >= s:
                ny |= 1 << j
        if nx == xs and ny == ys:
            break
        xs, ys = nx, ny
    cand = [i for i in range(m) if xs >> i & 1]
    nodes = 0
    result = None

    class _Cap(Exception):
        pass

    def grow(start, chosen, common):
        nonlocal nodes, result
        nodes += 1
        if not exact and nodes > node_cap:
            raise _Cap
        if len(chosen) == s:
            result = (tuple(chosen), common)
            return True
        need = s - len(chosen)
        for idx in range(start, len(cand) - need + 1):
            i = cand[idx]
            c2 = common & out[i]
            if c2.bit_count() < s:
                continue
            chosen.append(i)
            if grow(idx + 1, chosen, c2):
                return True
            chosen.pop()
        return False

    try:
        grow(0, [], ys)
    except _Cap:
        return CleanBicliqueResult("unresolved", s, exact=False, nodes=nodes)
    if result is None:
        return CleanBicliqueResult("absent", s, exact=True, nodes=nodes)
    X, common = result
    Y = []
    c = common
    while c and len(Y) < s:
        low = c & -c
        Y.append(low.bit_length() - 1)
        c ^= low
    assert check_clean_biclique(G, X, Y)
    return CleanBicliqueResult("found", s, X, tuple(Y), exact=True, nodes=nodes)


@dataclass(frozen=True)
class KttCertificate:
    status: str  # "certified" | "refuted" | "unresolved"
    t: int
    s: int
    implied_t: int  # K_{implied_t, implied_t} is absent from Ov when certified
    biclique: CleanBicliqueResult


def ktt_upper_check(G: OrderedGraph, t: int, budget: int = DEFAULT_EDGE_BUDGET,
                    node_cap: int = DEFAULT_NODE_CAP) -> KttCertificate:
    """Certify K_{2s,2s}-freeness of the overlap graph, s = ceil(t/2), from
    the absence of a clean K_{s,s}."""
    if t < 1:
        raise ValueError("t >= 1 required")
    s = math.ceil(t / 2)
    res = clean_biclique_at_least(G, s, budget, node_cap)
    status = {"absent": "certified", "found": "refuted", "unresolved": "unresolved"}[res.status]
    return KttCertificate(status, t, s, 2 * s, res)


def smallest_absent_clean_biclique(G: OrderedGraph, budget: int = DEFAULT_EDGE_BUDGET,
                                   node_cap: int = DEFAULT_NODE_CAP) -> int | None:
    """Smallest s with no clean K_{s,s} (None if some search is unresolved)."""
    s = 1
    while True:
        res = clean_biclique_at_least(G, s, budget, node_cap)
        if res.status == "unresolved":
            return None
        if res.status == "absent":
            return s
        s += 1


def certified_t(G: OrderedGraph, budget: int = DEFAULT_EDGE_BUDGET, node_cap: int = DEFAULT_NODE_CAP) -> int | None:
    """A t for which the overlap graph is certified K_{t,t}-free: 2s for the
    smallest s without a clean K_{s,s}."""
    s = smallest_absent_clean_biclique(G, budget, node_cap)
    return None if s is None else 2 * s
