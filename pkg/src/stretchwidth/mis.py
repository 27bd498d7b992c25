"""Maximum independent set: exhaustive oracle, degree-threshold branching and
a dynamic program over tree decompositions."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import OrderedGraph, induced_ordered_subgraph, iter_bits, mask_of
from .separator import TreeDecomposition, check_tree_decomposition, min_degree_decomposition, tree_decomposition

EXACT_LIMIT = 24
DP_WIDTH_LIMIT = 22


@dataclass(frozen=True)
class MisResult:
    size: int
    set: tuple[int, ...]
    node_count: int = 0
    leaf_widths: tuple[int, ...] = ()


def is_independent(G: OrderedGraph, S) -> bool:
    m = mask_of(S)
    return all(not (G.nbr[v] & m) for v in S)


def _mis_bits(nbr, alive: int) -> int:
    """Maximum independent subset of `alive`, as a bitset."""
    best = 0

    def rec(alive, cur, size):
        nonlocal best
        if size + alive.bit_count() <= best.bit_count():
            return
        # vertices with no alive neighbour are always taken
        free = 0
        for v in iter_bits(alive):
            if not nbr[v] & alive:
                free |= 1 << v
        if free:
            alive &= ~free
            cur |= free
            size += free.bit_count()
        if not alive:
            if size > best.bit_count():
                best = cur
            return
        v = max(iter_bits(alive), key=lambda w: (nbr[w] & alive).bit_count())
        rec(alive & ~((1 << v) | nbr[v]), cur | (1 << v), size + 1)
        rec(alive & ~(1 << v), cur, size)

    rec(alive, 0, 0)
    return best


def mis_exact(G: OrderedGraph, limit: int = EXACT_LIMIT) -> MisResult:
    if G.n > limit:
        raise ValueError(f"n={G.n} above exact limit {limit}")
    best = _mis_bits(G.nbr, (1 << G.n) - 1)
    S = tuple(iter_bits(best))
    return MisResult(len(S), S)


def mis_tw_dp(G: OrderedGraph, td: TreeDecomposition, width_limit: int = DP_WIDTH_LIMIT) -> MisResult:
    """Optimal MIS by a join over bags.

    Each node keeps, for every independent subset S of its bag, the best
    independent set of its subtree meeting the bag exactly in S. A child
    contributes its best table entry agreeing with S on the shared vertices.
    """
    err = check_tree_decomposition(G, td)
    if err:
        raise ValueError(f"invalid tree decomposition: {err}")
    if G.n == 0:
        return MisResult(0, (), 0, (td.width,))
    if td.width > width_limit:
        raise ValueError(f"width {td.width} above DP limit {width_limit}")
    nbr = G.nbr
    kids = td.children()
    root = td.parent.index(-1)
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(kids[x])
    tables: dict[int, dict[int, int]] = {}
    for x in reversed(order):
        bag = sorted(td.bags[x])
        subsets = [0]
        for v in bag:  # independent subsets of the bag
            bit = 1 << v
            subsets += [s | bit for s in subsets if not nbr[v] & s]
        proj = []
        for c in kids[x]:
            shared = mask_of(td.bags[x] & td.bags[c])
            best_c: dict[int, int] = {}
            for s, sol in tables.pop(c).items():
                key = s & shared
                if key not in best_c or sol.bit_count() > best_c[key].bit_count():
                    best_c[key] = sol
            proj.append((shared, best_c))
        table = {}
        for s in subsets:
            sol = s
            ok = True
            for shared, best_c in proj:
                got = best_c.get(s & shared)
                if got is None:
                    ok = False
                    break
                sol |= got
            if ok:
                table[s] = sol
        tables[x] = table
    best = max(tables[root].values(), key=lambda m: (m.bit_count(), -m))
    S = tuple(iter_bits(best))
    assert is_independent(G, S)
    return MisResult(len(S), S, 0, (td.width,))


def min_degree_td(G: OrderedGraph) -> TreeDecomposition:
    bags, parent, root = min_degree_decomposition(G)
    return TreeDecomposition(tuple(bags), tuple(parent))


def leaf_decomposition(G: OrderedGraph, mode: str = "auto") -> TreeDecomposition:
    """'mindeg', 'separator' (t from a clean-biclique certificate) or 'auto'
    (separator when the certificate resolves, else min-degree)."""
    if mode == "mindeg" or G.n == 0:
        return min_degree_td(G)
    from .overlap import certified_t

    t = certified_t(G)
    if t is None:
        if mode == "separator":
            raise ValueError("clean-biclique search unresolved; no certified t")
        return min_degree_td(G)
    return tree_decomposition(G, t)


def default_threshold(n: int) -> int:
    return max(1, math.ceil(n ** 0.2))


def mis_branch(G: OrderedGraph, threshold: int | None = None, leaf: str = "auto") -> MisResult:
    """Branch on a vertex of degree >= threshold (take it, or drop it) until
    the maximum degree falls below threshold, then solve by tree-decomposition DP.

    node_count counts explored branches. Each take removes at least
    threshold + 1 vertices, so a root-to-leaf path has at most n / threshold takes.
    """
    n = G.n
    if threshold is None:
        threshold = default_threshold(n)
    if threshold < 1:
        raise ValueError("threshold >= 1 required")
    nbr = G.nbr
    best = [0, 0]  # bitset, size
    nodes = 0
    widths: list[int] = []

    def solve_leaf(alive: int) -> int:
        H, old = induced_ordered_subgraph(G, iter_bits(alive))
        res = mis_tw_dp(H, leaf_decomposition(H, leaf))
        widths.append(res.leaf_widths[0] if res.leaf_widths else -1)
        return mask_of(old[i] for i in res.set)

    def rec(alive: int, cur: int, takes: int):
        nonlocal nodes
        assert takes * threshold <= n, "too many takes on one path"
        if cur.bit_count() + alive.bit_count() <= best[1]:
            return
        v, dv = -1, -1
        for w in iter_bits(alive):
            d = (nbr[w] & alive).bit_count()
            if d > dv:
                v, dv = w, d
        if dv < threshold:
            sol = cur | (solve_leaf(alive) if alive else 0)
            if sol.bit_count() > best[1]:
                best[0], best[1] = sol, sol.bit_count()
            return
        nodes += 1
        rec(alive & ~((1 << v) | nbr[v]), cur | (1 << v), takes + 1)
        if cur.bit_count() + alive.bit_count() - 1 > best[1]:
            nodes += 1
            rec(alive & ~(1 << v), cur, takes)

    rec((1 << n) - 1, 0, 0)
    S = tuple(iter_bits(best[0]))
    assert is_independent(G, S)
    return MisResult(len(S), S, nodes, tuple(widths))
