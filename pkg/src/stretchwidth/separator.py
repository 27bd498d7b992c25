"""Left/right separators, balanced separators and separator-driven tree
decompositions for ordered graphs whose overlap graph excludes K_{t,t}.

The graph is never copied for the recursions: a call works on G with a
bitset of removed vertices and an inclusive window [lo, hi] of positions.
An edge is alive when both endpoints are in the window and not removed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import OrderedGraph, components, induced_ordered_subgraph, iter_bits, mask_of
from .overlap import nested_in

MIN_BALANCED_N = 12
TD_BASE_SIZE = 32


def g_of(t: int) -> int:
    return 6 * t * t + 3 * t


def lr_bound(t: int, l: int) -> int:
    """(6t^2 + 3t)(ceil(log2(l+1)) + 1), the size bound for initial rainbow length l."""
    return g_of(t) * (math.ceil(math.log2(l + 1)) + 1)


class _View:
    """Alive edges of G under a removed set and a window."""

    def __init__(self, G: OrderedGraph, removed: int, lo: int, hi: int):
        self.G, self.removed, self.lo, self.hi = G, removed, lo, hi
        self.edges = [
            (a, b) for a, b in G.edges
            if lo <= a and b <= hi and not (removed >> a) & 1 and not (removed >> b) & 1
        ]

    def over(self, v: int) -> list[tuple[int, int]]:
        return [e for e in self.edges if e[0] < v < e[1]]

    def survivors(self, first: int, last: int) -> list[int]:
        return [w for w in range(max(first, self.lo), min(last, self.hi) + 1) if not (self.removed >> w) & 1]


def _max_rainbow(edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Maximum chain under non-strict interior containment, outermost first;
    ties go to the lexicographically smallest chain of (L, R) pairs."""
    E = sorted(edges, key=lambda e: (e[0], -e[1]))
    k = len(E)
    best = [1] * k
    for x in range(k - 1, -1, -1):
        for y in range(x + 1, k):
            if nested_in(E[y], E[x]) and best[y] + 1 > best[x]:
                best[x] = best[y] + 1
    if not k:
        return []
    need = max(best)
    out = []
    cands = [x for x in range(k) if best[x] == need]
    while cands:
        x = min(cands, key=lambda c: E[c])
        out.append(E[x])
        need -= 1
        cands = [y for y in range(k) if need and best[y] == need and nested_in(E[y], E[x])]
    return out


def _length(rainbow) -> int:
    return rainbow[0][1] - rainbow[0][0] if rainbow else 0


def _between(edges, A, B):
    """Edges with one endpoint satisfying A and the other satisfying B."""
    return [e for e in edges if (A(e[0]) and B(e[1])) or (A(e[1]) and B(e[0]))]


def _families(edges, f1, ft, f2t, f3t):
    """Edge families whose left endpoints are deleted around the rainbow
    edges f1 (outermost), ft, f2t, f3t.

    X holds every edge containing f3t (non-strictly): besides the edges with
    both endpoints between f1 and f3t, this catches edges that start left of
    f1 and end between R(ft) and R(f1), which would otherwise stay over x.
    """
    def inside(e):  # interior
        return lambda w: e[0] < w < e[1]

    def outside(e):
        return lambda w: w < e[0] or w > e[1]

    X = [e for e in edges if e[0] <= f3t[0] and e[1] >= f3t[1]]
    Y1 = _between(edges, outside(f1), inside(ft))
    Y2 = _between(edges, outside(ft), inside(f2t))
    Y3 = _between(edges, outside(f2t), inside(f3t))
    return X, Y1, Y2, Y3


@dataclass
class LRResult:
    x: int
    U: frozenset[int]
    initial_length: int
    bound: int
    depth: int
    within_bound: bool
    lengths: list[int] = field(default_factory=list)  # rainbow length at each level


def left_right_separator(G: OrderedGraph, t: int, v: int, removed: int = 0,
                         lo: int = 0, hi: int | None = None) -> LRResult:
    """A vertex x and a set U containing x such that, in the window minus the
    removed vertices, no path avoiding U joins [lo, x[ and ]x, hi].

    Follows the halving recursion on maximum rainbows. The size bound
    (6t^2+3t)(ceil(log2(l+1))+1) holds when Ov(G) excludes K_{t,t};
    `within_bound` reports whether it held here.
    """
    if t < 1:
        raise ValueError("t >= 1 required")
    if hi is None:
        hi = G.n - 1
    U: set[int] = set()
    lengths: list[int] = []
    rem = removed
    cur = v
    l0 = None
    depth = 0
    while True:
        view = _View(G, rem, lo, hi)
        S = _max_rainbow(view.over(cur))
        l = _length(S)
        if l0 is None:
            l0 = l
        elif lengths:
            assert l <= lengths[-1] // 2, "recursive rainbow did not halve"
        lengths.append(l)
        if len(S) <= 3 * t:
            U.add(cur)
            U.update(e[0] for e in view.over(cur))
            x = cur
            break
        e1, et, e2t, e3t = S[0], S[t - 1], S[2 * t - 1], S[3 * t - 1]
        X, Y1, Y2, Y3 = _families(view.edges, e1, et, e2t, e3t)
        lefts = {e[0] for fam in (X, Y1, Y2, Y3) for e in fam}
        U.update(lefts)
        rem |= mask_of(lefts)
        xs = view.survivors(et[0] + 1, e2t[0])
        ys = view.survivors(e2t[1], et[1] - 1)
        xs = [w for w in xs if not (rem >> w) & 1]
        ys = [w for w in ys if not (rem >> w) & 1]
        if not xs:
            x = et[0]  # already deleted: e_t is in X
            U.add(x)
            break
        if not ys:
            x = et[1]
            U.add(x)
            break
        view2 = _View(G, rem, lo, hi)
        lx = _length(_max_rainbow(view2.over(xs[0])))
        ly = _length(_max_rainbow(view2.over(ys[0])))
        cur = xs[0] if lx <= ly else ys[0]
        depth += 1
    bound = lr_bound(t, l0)
    return LRResult(x, frozenset(U), l0, bound, depth, len(U) <= bound, lengths)


def verify_left_right(G: OrderedGraph, x: int, U, removed: int = 0, lo: int = 0, hi: int | None = None) -> bool:
    """x in U, and no path in the window avoiding U and the removed vertices
    joins a vertex left of x to a vertex right of x."""
    if hi is None:
        hi = G.n - 1
    U = set(U)
    if x not in U:
        return False
    alive = 0
    for w in range(lo, hi + 1):
        if w not in U and not (removed >> w) & 1:
            alive |= 1 << w
    for comp in components(G, alive):
        verts = list(iter_bits(comp))
        if min(verts) < x < max(verts):
            return False
    return True


# ------------------------------------------------------ balanced separators

@dataclass(frozen=True)
class Separation:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    balance: Fraction
    method: str = ""
    t: int = 0

    @staticmethod
    def make(n: int, A, B, method: str = "", t: int = 0) -> "Separation":
        A, B = frozenset(A), frozenset(B)
        C = A & B
        bal = Fraction(min(len(A - B), len(B - A)), n) if n else Fraction(0)
        return Separation(A, B, C, bal, method, t)


def verify_separation(G: OrderedGraph, sep: Separation, factor: Fraction | float = Fraction(1, 12)) -> bool:
    """A u B = V, C = A n B, no edge between A-B and B-A, and both exclusive
    sides have at most (1 - factor) n vertices."""
    V = set(range(G.n))
    if set(sep.A) | set(sep.B) != V or set(sep.C) != set(sep.A) & set(sep.B):
        return False
    only_a, only_b = sep.A - sep.B, sep.B - sep.A
    for u, v in G.edges:
        if (u in only_a and v in only_b) or (u in only_b and v in only_a):
            return False
    limit = (1 - Fraction(factor)) * G.n
    return len(only_a) <= limit and len(only_b) <= limit


def _separation_from_middle(G: OrderedGraph, first: int, last: int, C, method: str, t: int) -> Separation:
    middle = set(range(first, last + 1))
    C = set(C)
    A = middle | C
    B = (set(range(G.n)) - middle) | C
    return Separation.make(G.n, A, B, method, t)


def _is_mid(e, n) -> bool:
    length = e[1] - e[0]
    return n <= 12 * length <= 11 * n


def _case_one(G: OrderedGraph, t: int, v: int, S) -> Separation | None:
    n = G.n
    short = [e for e in S if 12 * (e[1] - e[0]) <= 11 * n]
    f = short[:3 * t]
    if len(f) < 3 * t or not all(_is_mid(e, n) for e in f):
        return None
    f1, ft, f2t, f3t = f[0], f[t - 1], f[2 * t - 1], f[3 * t - 1]
    edges = list(G.edges)

    def inside(e):
        return lambda w: e[0] < w < e[1]

    def outside(e):
        return lambda w: w < e[0] or w > e[1]

    X = [e for e in edges if f1[0] <= e[0] <= f3t[0] and f3t[1] <= e[1] <= f1[1]]
    Y1 = _between(edges, outside(f1), inside(ft))
    Y2 = _between(edges, outside(ft), inside(f2t))
    Y3 = _between(edges, outside(f2t), inside(f3t))
    # edges reaching past f1 on one side and deep under it on the other
    Z = [e for e in edges if e[0] < f1[0] and ft[1] <= e[1] <= f1[1]]
    Z2 = [e for e in edges if f1[0] <= e[0] <= ft[0] and e[1] > f1[1]]
    lefts = {e[0] for fam in (X, Y1, Y2, Y3, Z, Z2) for e in fam}
    removed = mask_of(lefts)
    C = set(lefts)
    xs = [w for w in range(ft[0] + 1, f2t[0] + 1) if not (removed >> w) & 1]
    if xs:
        rx = left_right_separator(G, t, xs[0], removed, 0, f1[1])
        ux = rx.x
        C |= rx.U
    else:
        ux = ft[0]
        C.add(ux)
    ys = [w for w in range(f2t[1], ft[1]) if not (removed >> w) & 1]
    if ys:
        ry = left_right_separator(G, t, ys[0], removed, f1[0], n - 1)
        uy = ry.x
        C |= ry.U
    else:
        uy = ft[1]
        C.add(uy)
    if uy - ux < 2:
        return None
    return _separation_from_middle(G, ux + 1, uy - 1, C, f"rainbow@{v}", t)


def _case_two(G: OrderedGraph, t: int) -> Separation:
    n = G.n
    x, y = n // 3, (2 * n) // 3
    M = [e for e in G.edges if _is_mid(e, n) and (e[0] < x < e[1] or e[0] < y < e[1])]
    A = {e[0] for e in M}
    removed = mask_of(A)
    hx = (11 * n - 1) // 12  # last position p with 12p < 11n
    ly = -(-n // 12)  # first position p with 12p >= n
    C = set(A)
    rx = left_right_separator(G, t, x, removed, 0, hx)
    ry = left_right_separator(G, t, y, removed, ly, n - 1)
    C |= rx.U | ry.U
    return _separation_from_middle(G, rx.x + 1, ry.x - 1, C, "thirds", t)


def balanced_separator(G: OrderedGraph, t: int, factor: Fraction = Fraction(1, 12)) -> Separation:
    """A separation whose exclusive sides both have at most (1 - factor) n
    vertices, built from left/right separators.

    First looks, left to right, for a vertex whose maximum rainbow has 3t
    edges of length between n/12 and 11n/12 and cuts under them; otherwise
    cuts around positions n/3 and 2n/3 after deleting the mid-length edges
    over them. Every candidate is verified; below 12 vertices the whole
    vertex set is returned as the separator.
    """
    if t < 1:
        raise ValueError("t >= 1 required")
    n = G.n
    if n < MIN_BALANCED_N:
        V = frozenset(range(n))
        return Separation(V, V, V, Fraction(0), "degenerate", t)
    for v in range(n):
        over = [e for e in G.edges if e[0] < v < e[1]]
        if sum(1 for e in over if _is_mid(e, n)) < 3 * t:
            continue
        S = _max_rainbow(over)
        if sum(1 for e in S if _is_mid(e, n)) < 3 * t:
            continue
        sep = _case_one(G, t, v, S)
        if sep is not None and verify_separation(G, sep, factor):
            return sep
    sep = _case_two(G, t)
    if not verify_separation(G, sep, factor):
        raise AssertionError("thirds separation failed verification")
    return sep


# ------------------------------------------------------ tree decompositions

@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]  # -1 for the root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p >= 0:
                out[p].append(i)
        return out


def check_tree_decomposition(G: OrderedGraph, td: TreeDecomposition) -> str | None:
    """None if valid, otherwise a description of the first violation."""
    k = len(td.bags)
    if len(td.parent) != k:
        return "parent array length differs from bag count"
    roots = [i for i, p in enumerate(td.parent) if p < 0]
    if G.n and len(roots) != 1:
        return f"expected one root, found {len(roots)}"
    # acyclicity and reachability
    for i in range(k):
        seen, j = set(), i
        while j >= 0:
            if j in seen:
                return f"cycle through node {j}"
            seen.add(j)
            if td.parent[j] >= k:
                return f"bad parent {td.parent[j]}"
            j = td.parent[j]
    covered = set().union(*td.bags) if td.bags else set()
    for v in range(G.n):
        if v not in covered:
            return f"vertex {v} in no bag"
    for u, v in G.edges:
        if not any(u in b and v in b for b in td.bags):
            return f"edge ({u},{v}) in no bag"
    for v in range(G.n):
        nodes = {i for i, b in enumerate(td.bags) if v in b}
        tops = [i for i in nodes if td.parent[i] not in nodes]
        if len(tops) != 1:
            return f"bags containing {v} are not connected"
    return None


def min_degree_decomposition(G: OrderedGraph, alive: int | None = None, clique: int = 0):
    """Elimination-order decomposition of G[alive] with `clique` made complete.

    Returns (bags, parent, root) with the root being a bag containing `clique`.
    """
    if alive is None:
        alive = (1 << G.n) - 1
    adj = {v: (G.nbr[v] & alive) for v in iter_bits(alive)}
    for v in iter_bits(clique):
        adj[v] |= clique & ~(1 << v)
    order, bags = [], []
    rest = alive
    while rest:
        v = min(iter_bits(rest), key=lambda w: ((adj[w] & rest).bit_count(), w))
        nb = adj[v] & rest
        bags.append((1 << v) | nb)
        order.append(v)
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        rest &= ~(1 << v)
    k = len(order)
    pos = {v: i for i, v in enumerate(order)}
    parent = [-1] * k
    for i, v in enumerate(order):
        nb = bags[i] & ~(1 << v)
        if nb:
            parent[i] = min(pos[u] for u in iter_bits(nb))
    # join forest components under the last bag of the first tree
    roots = [i for i in range(k) if parent[i] < 0]
    # re-root at a bag containing the clique
    target = None
    if clique:
        target = next(i for i in range(k) if bags[i] & clique == clique)
    main = roots[0] if roots else -1
    for r in roots[1:]:
        parent[r] = main
    if target is not None and target != main:
        # reverse the path from target up to the root
        prev, cur = -1, target
        while cur != -1:
            nxt = parent[cur]
            parent[cur] = prev
            prev, cur = cur, nxt
    root = target if target is not None else main
    return [frozenset(iter_bits(b)) for b in bags], parent, root


def tree_decomposition(G: OrderedGraph, t: int | None = None, base: int = TD_BASE_SIZE) -> TreeDecomposition:
    """Decomposition from recursive balanced separators.

    A piece W with interface I gets the bag I u C for a balanced separator C
    of G[W]; each component K of G[W] - (I u C) becomes a child on K u N(K)
    with interface N(K). Pieces of at most `base` vertices use min-degree
    elimination with the interface made a clique. With t=None every piece
    uses min-degree elimination.
    """
    bags: list[frozenset[int]] = []
    parent: list[int] = []
    if G.n == 0:
        return TreeDecomposition((), ())

    def leaf(W: int, I: int, par: int) -> None:
        sub_bags, sub_parent, root = min_degree_decomposition(G, W, I)
        offset = len(bags)
        bags.extend(sub_bags)
        for i, p in enumerate(sub_parent):
            parent.append(p + offset if p >= 0 else (par if i == root else offset + root))

    stack = [((1 << G.n) - 1, 0, -1)]
    while stack:
        W, I, par = stack.pop()
        size = W.bit_count()
        if t is None or size <= base:
            leaf(W, I, par)
            continue
        H, old = induced_ordered_subgraph(G, iter_bits(W))
        sep = balanced_separator(H, t)
        C = mask_of(old[c] for c in sep.C)
        top = I | C
        kids = []
        for K in components(G, W & ~top):
            NK = 0
            for u in iter_bits(K):
                NK |= G.nbr[u]
            NK &= top
            kids.append((K | NK, NK))
        if any(Wc == W for Wc, _ in kids):
            leaf(W, I, par)
            continue
        me = len(bags)
        bags.append(frozenset(iter_bits(top)))
        parent.append(par)
        for Wc, Ic in kids:
            stack.append((Wc, Ic, me))
    return TreeDecomposition(tuple(bags), tuple(parent))
