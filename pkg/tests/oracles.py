"""Brute-force reference implementations, written straight from the definitions.

Deliberately slow and independent of the package internals: plain sets,
explicit loops, no bitsets, no memoisation tricks.
"""
from __future__ import annotations

import itertools


def edge_set(n, edges):
    return {frozenset(e) for e in edges}


def is_red(E, X, Y):
    has_edge = any(frozenset((u, v)) in E for u in X for v in Y)
    has_non = any(frozenset((u, v)) not in E for u in X for v in Y)
    return has_edge and has_non


def stretch(n, edges, blocks):
    E = edge_set(n, edges)
    blocks = [set(b) for b in blocks]
    best = 0
    for i, X in enumerate(blocks):
        closed = set(X)
        for j, Y in enumerate(blocks):
            if j != i and is_red(E, X, Y):
                closed |= Y
        a, b = min(closed), max(closed)
        count = 0
        for j, Y in enumerate(blocks):
            if j != i and min(Y) <= b and max(Y) >= a:
                count += 1
        best = max(best, count)
    return best


def _merges(blocks):
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            rest = [b for k, b in enumerate(blocks) if k not in (i, j)]
            yield rest + [blocks[i] | blocks[j]]


def brute_stw_fixed_order(n, edges):
    """Minimum over every explicit merge chain of the maximum stretch."""
    if n <= 1:
        return 0
    best = [None]

    def walk(blocks, worst):
        worst = max(worst, stretch(n, edges, blocks))
        if best[0] is not None and worst >= best[0]:
            return
        if len(blocks) == 1:
            best[0] = worst
            return
        for nxt in _merges(blocks):
            walk(nxt, worst)

    walk([{v} for v in range(n)], 0)
    return best[0]


def chain_stretch(n, edges, merges):
    """Max stretch along a merge chain given by representatives."""
    blocks = {v: {v} for v in range(n)}
    worst = stretch(n, edges, blocks.values())
    for a, b in merges:
        lo, hi = min(a, b), max(a, b)
        blocks[lo] |= blocks.pop(hi)
        worst = max(worst, stretch(n, edges, blocks.values()))
    return worst


def brute_stw(n, edges):
    best = None
    for perm in itertools.permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        val = brute_stw_fixed_order(n, [(pos[u], pos[v]) for u, v in edges])
        best = val if best is None else min(best, val)
    return best


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def crossing(e, f):
    (a, b), (c, d) = sorted(e), sorted(f)
    return a < c < b < d or c < a < d < b


def crossing_pairs(edges):
    return {(i, j) for i, j in itertools.combinations(range(len(edges)), 2) if crossing(edges[i], edges[j])}


def clean_biclique_brute(edges, s):
    """Exists X, Y of size s with max L(X) < min L(Y) and all of X x Y crossing?"""
    edges = [tuple(sorted(e)) for e in edges]
    idx = range(len(edges))
    for X in itertools.combinations(idx, s):
        lx = max(edges[i][0] for i in X)
        cand = [j for j in idx if edges[j][0] > lx and all(crossing(edges[i], edges[j]) for i in X)]
        if len(cand) >= s:
            return True
    return False


def mis_brute(n, edges):
    E = edge_set(n, edges)
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            if all(frozenset(p) not in E for p in itertools.combinations(S, 2)):
                return size
    return 0


def distinct_rows(M, rows, cols):
    return len({tuple(M[r][c] for c in cols) for r in rows}) if cols else 0


def is_part_wide_brute(M, bounds, i, k):
    """Definition check: every k-window of column blocks containing block i
    leaves at least k distinct rows in R_i."""
    p = len(bounds) - 1
    blocks = [list(range(bounds[h], bounds[h + 1])) for h in range(p)]
    rows = blocks[i]
    for j in range(i - k + 1, i + 1):
        removed = set()
        for h in range(j, j + k):
            if 0 <= h < p:
                removed.update(blocks[h])
        cols = [c for c in range(len(M)) if c not in removed]
        if distinct_rows(M, rows, cols) < k:
            return False
    return True


def matrix_stretch_brute(M, blocks):
    n = len(M)
    blocks = [sorted(b) for b in blocks]
    best = 0
    for i, R in enumerate(blocks):
        union = set(R)
        for j, C in enumerate(blocks):
            vals = {M[r][c] for r in R for c in C}
            if j == i or len(vals) > 1:
                union |= set(C)
        a, b = min(union), max(union)
        cnt = sum(1 for j, C in enumerate(blocks) if j != i and min(C) <= b and max(C) >= a)
        best = max(best, cnt)
    return best
