"""Instance generators with their witness orders and sequences.

Covers the s-t path bundle H_k (good and bad orders), the hierarchical graphs
A(b, h), grids, order-aware subdivisions (flattening) and seeded random
bounded-degree graphs.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .graph import GraphError, OrderedGraph, PartitionSequence, build_ordered_graph, normalize_edge

DEFAULT_VERTEX_BUDGET = 200_000


@dataclass(frozen=True)
class WitnessedInstance:
    graph: OrderedGraph
    witness_sequence: PartitionSequence | None = None
    claimed_stretch: int | None = None
    provenance: str = ""
    params: dict = field(default_factory=dict)


def _hk_edges(k, a, b, c, s, t):
    edges = []
    for i in range(k):
        edges += [(s, a[i]), (a[i], b[i]), (b[i], c[i]), (c[i], t)]
    return edges


def gen_hk(k: int) -> WitnessedInstance:
    """k internally disjoint paths s,a_i,b_i,c_i,t ordered s, a_1, b_1, c_1, ..., t.

    Witness: grow parts A, B, C (represented by a_1, b_1, c_1) by absorbing
    a_i, b_i, c_i for i = 2..k, then merge C into B, B into A, then s and t.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    s, t = 0, 3 * k + 1
    a = [1 + 3 * i for i in range(k)]
    b = [2 + 3 * i for i in range(k)]
    c = [3 + 3 * i for i in range(k)]
    G = build_ordered_graph(3 * k + 2, _hk_edges(k, a, b, c, s, t))
    merges = []
    for i in range(1, k):
        merges += [(1, a[i]), (2, b[i]), (3, c[i])]
    merges += [(2, 3), (1, 2), (0, 1), (0, t)]
    return WitnessedInstance(G, PartitionSequence(G.n, tuple(merges)), 6, "hk", {"k": k})


def gen_hk_bad_order(k: int) -> OrderedGraph:
    """H_k ordered s, a_1..a_k, b_k..b_1, c_1..c_k, t."""
    if k < 2:
        raise ValueError("k >= 2 required")
    s, t = 0, 3 * k + 1
    a = [1 + i for i in range(k)]
    b = [2 * k - i for i in range(k)]
    c = [2 * k + 1 + i for i in range(k)]
    return build_ordered_graph(3 * k + 2, _hk_edges(k, a, b, c, s, t))


def hk_bad_order_labels(k: int) -> dict[str, int]:
    """Vertex index of each named vertex ('s', 't', 'a1', 'b1', ...) in the bad order."""
    out = {"s": 0, "t": 3 * k + 1}
    for i in range(1, k + 1):
        out[f"a{i}"] = i
        out[f"b{i}"] = 2 * k + 1 - i
        out[f"c{i}"] = 2 * k + i
    return out


def gen_abh(b: int, h: int, budget: int = DEFAULT_VERTEX_BUDGET) -> WitnessedInstance:
    """A(b, h) on [0, b^h): u ~ v iff at some level l in [0, h-1] the level-l
    ancestors u // b^l and v // b^l differ by exactly b.

    For b = 3 the witness merges siblings level by level, left to right, and
    claims stretch 9.
    """
    if b < 2 or h < 1:
        raise ValueError("b >= 2 and h >= 1 required")
    n = b ** h
    if n > budget:
        raise ValueError(f"b^h = {n} exceeds the vertex budget {budget}")
    edges = []
    for l in range(h):
        size = b ** l
        groups = n // size
        for g in range(groups - b):
            g2 = g + b
            for u in range(g * size, (g + 1) * size):
                for v in range(g2 * size, (g2 + 1) * size):
                    edges.append((u, v))
    G = build_ordered_graph(n, edges)
    merges = []
    for l in range(1, h + 1):
        size = b ** (l - 1)
        for g in range(n // (size * b)):
            base = g * size * b
            for child in range(1, b):
                merges.append((base, base + child * size))
    seq = PartitionSequence(n, tuple(merges))
    return WitnessedInstance(G, seq, 9 if b == 3 else None, "abh", {"b": b, "h": h})


def gen_grid(k: int) -> OrderedGraph:
    """k x k grid in row-major order; edges tagged h<u>-<v> or v<u>-<v>."""
    if k < 2:
        raise ValueError("k >= 2 required")
    edges, tags = [], []
    for r in range(k):
        for c in range(k):
            u = r * k + c
            if c + 1 < k:
                edges.append((u, u + 1)); tags.append(f"h{u}-{u + 1}")
            if r + 1 < k:
                edges.append((u, u + k)); tags.append(f"v{u}-{u + k}")
    return build_ordered_graph(k * k, edges, tags)


def _stem(G: OrderedGraph, e: tuple[int, int]) -> str:
    tag = G.tag_of(e) if G.tags is not None else None
    return tag if tag is not None else f"{e[0]}-{e[1]}"


def _with_tags(G: OrderedGraph) -> list[str]:
    return [t if t is not None else f"{u}-{v}" for (u, v), t in zip(G.edges, G.tags or [None] * G.m)]


def flatten_edge(G: OrderedGraph, e: Sequence[int]) -> OrderedGraph:
    """Replace uv by a path that puts one new vertex in every gap between u
    and v: u, w_1, u_1, w_2, ..., u_h, w_{h+1}, v in the order."""
    u, v = normalize_edge(e)
    if (u, v) not in G.edge_set:
        raise GraphError(f"edge {(u, v)} not in graph")
    h = v - u - 1
    stem = _stem(G, (u, v))

    def pos(x):
        if x <= u:
            return x
        if x < v:
            return u + 2 * (x - u)
        return x + h + 1

    edges, tags = [], []
    for (x, y), tg in zip(G.edges, _with_tags(G)):
        if (x, y) == (u, v):
            continue
        edges.append((pos(x), pos(y))); tags.append(tg)
    path = [u] + [u + 2 * i - 1 for i in range(1, h + 2)] + [pos(v)]
    for x, y in zip(path, path[1:]):
        edges.append((x, y)); tags.append(stem)
    return build_ordered_graph(G.n + h + 1, edges, tags)


def _crosses(e, f) -> bool:
    (a, b), (c, d) = e, f
    return a < c < b < d or c < a < d < b


def _slot_keeps_crossings(G: OrderedGraph, u: int, v: int, w: int) -> bool:
    """Does a new vertex at index w, joined to u and v in place of uv, leave
    one new edge crossing exactly what uv crossed and the other crossing nothing?"""
    def pos(x):
        return x if x < w else x + 1

    e1, e2 = tuple(sorted((pos(u), w))), tuple(sorted((w, pos(v))))
    c0, c1, c2 = [], [], []
    for f in G.edges:
        if f == (u, v):
            continue
        g = (pos(f[0]), pos(f[1]))
        c0.append(_crosses((u, v), f))
        c1.append(_crosses(e1, g))
        c2.append(_crosses(e2, g))
    return (c1 == c0 and not any(c2)) or (c2 == c0 and not any(c1))


def subdivision_slot(G: OrderedGraph, e: Sequence[int]) -> int | None:
    """Index for one subdivision vertex of uv that keeps the crossings
    (the overlap graph only gains an isolated edge), or None.

    Slots next to an endpoint are tried first: right after u, right before
    v, right before u, right after v; then every other position.
    """
    u, v = normalize_edge(e)
    first = [u + 1, v, u, v + 1]
    for w in first + [w for w in range(G.n + 1) if w not in first]:
        if _slot_keeps_crossings(G, u, v, w):
            return w
    return None


def subdivide_simple(G: OrderedGraph, e: Sequence[int]) -> OrderedGraph:
    """Subdivide uv (u < v) once.

    The new vertex goes right after u when that keeps the crossings, else at
    the first slot from subdivision_slot. Some edges admit no such slot
    (both endpoints see vertices inside and outside (u, v) in a way every
    position disturbs); the vertex then goes right after u.
    """
    u, v = normalize_edge(e)
    if (u, v) not in G.edge_set:
        raise GraphError(f"edge {(u, v)} not in graph")
    stem = _stem(G, (u, v))
    w = subdivision_slot(G, (u, v))
    if w is None:
        w = u + 1

    def pos(x):
        return x if x < w else x + 1

    edges, tags = [], []
    for (x, y), tg in zip(G.edges, _with_tags(G)):
        if (x, y) == (u, v):
            continue
        edges.append((pos(x), pos(y))); tags.append(tg)
    edges += [(pos(u), w), (w, pos(v))]
    tags += [stem, stem]
    return build_ordered_graph(G.n + 1, edges, tags)


def iterated_subdivision(G: OrderedGraph, edge_order: Sequence[Sequence[int]] | None = None,
                         budget: int = DEFAULT_VERTEX_BUDGET) -> OrderedGraph:
    """Flatten every original edge once, in `edge_order` (default: sorted).

    Edges created along the way are never flattened. Each output edge carries
    the tag of the original edge it stems from.
    """
    order = [normalize_edge(e) for e in (edge_order if edge_order is not None else G.edges)]
    if sorted(order) != list(G.edges) or len(set(order)) != len(order):
        raise GraphError("edge_order must be a permutation of the edge set")
    H = build_ordered_graph(G.n, G.edges, _with_tags(G))
    where = list(range(G.n))  # original vertex -> current index
    for u0, v0 in order:
        u, v = where[u0], where[v0]
        h = v - u - 1
        if H.n + h + 1 > budget:
            raise ValueError(f"iterated subdivision exceeds the vertex budget {budget}")
        H = flatten_edge(H, (u, v))
        where = [x if x <= u else (u + 2 * (x - u) if x < v else x + h + 1) for x in where]
    assert H.n <= G.n * 2 ** G.m
    return H


def stem_counts(H: OrderedGraph) -> dict[str, int]:
    """Number of edges per stem tag."""
    out: dict[str, int] = {}
    for t in H.tags or ():
        out[t] = out.get(t, 0) + 1
    return out


def padded_subdivision(G: OrderedGraph, edge_order=None, target: int | None = None,
                       budget: int = DEFAULT_VERTEX_BUDGET) -> OrderedGraph:
    """Iterated subdivision followed by single subdivisions so that every
    original edge carries exactly `target` subdivision vertices (default n*2^m).

    Each padding step picks an edge of the stem whose subdivision keeps the
    crossings (one always exists on a flattened stem with an interior edge).
    """
    if target is None:
        target = G.n * 2 ** G.m
    if G.n + G.m * target > budget:
        raise ValueError("padded subdivision exceeds the vertex budget")
    H = iterated_subdivision(G, edge_order, budget)
    for stem, cnt in sorted(stem_counts(H).items()):
        missing = target - (cnt - 1)
        if missing < 0:
            raise ValueError(f"stem {stem} already has {cnt - 1} > {target} subdivision vertices")
        for _ in range(missing):
            own = [e for e, t in zip(H.edges, H.tags) if t == stem]
            e = next((e for e in own if _slot_keeps_crossings(H, e[0], e[1], e[0] + 1)), own[0])
            H = subdivide_simple(H, e)
    return H


def gen_flattened_grid(k: int, budget: int = DEFAULT_VERTEX_BUDGET) -> OrderedGraph:
    """Row-major k x k grid with horizontal edges flattened first (row-major),
    then vertical edges from left to right."""
    grid = gen_grid(k)
    horiz = [(r * k + c, r * k + c + 1) for r in range(k) for c in range(k - 1)]
    vert = [(r * k + c, (r + 1) * k + c) for c in range(k) for r in range(k - 1)]
    return iterated_subdivision(grid, horiz + vert, budget)


def random_bounded_degree(n: int, d: int, seed: int) -> OrderedGraph:
    """Shuffle all vertex pairs with a seeded RNG and keep each one whose
    endpoints both still have degree < d."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be non-negative")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < d and deg[v] < d:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return build_ordered_graph(n, edges)


def random_cograph(n: int, seed: int) -> tuple[OrderedGraph, PartitionSequence]:
    """Random cograph from a random cotree, with a twin-contraction sequence.

    Children of each cotree node are merged one after another in post-order,
    so every merged pair is a pair of twins and no red edge ever appears.
    """
    rng = random.Random(seed)
    merges: list[tuple[int, int]] = []
    edges: list[tuple[int, int]] = []
    labels = list(range(n))
    rng.shuffle(labels)
    counter = iter(labels)

    def build(size):
        # returns (vertex list, representative after contraction)
        if size == 1:
            v = next(counter)
            return [v], v
        k = rng.randint(2, min(size, 4))
        cuts = sorted(rng.sample(range(1, size), k - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [size])]
        kids = [build(s) for s in sizes]
        join = rng.random() < 0.5
        if join:
            for (A, _), (B, _) in itertools.combinations(kids, 2):
                edges.extend((x, y) for x in A for y in B)
        verts, rep = kids[0]
        verts = list(verts)
        for B, r in kids[1:]:
            merges.append((rep, r))
            rep = min(rep, r)
            verts += B
        return verts, rep

    if n:
        build(n)
    return build_ordered_graph(n, edges), PartitionSequence(n, tuple(merges))
