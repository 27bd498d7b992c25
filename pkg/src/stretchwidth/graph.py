"""Ordered graphs, vertex partitions, red graphs and partition sequences.

The vertex order is always the index order. Any other order is applied by
relabelling (see `relabel`), so a graph and its order can never disagree.
Adjacency is kept both as sorted neighbour tuples and as Python-int bitsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


class VertexRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class PartitionError(ValueError):
    pass


class SequenceError(ValueError):
    """Invalid merge in a partition sequence; `index` is the merge position."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"merge {index}: {message}")
        self.index = index


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class OrderedGraph:
    """Simple undirected graph on 0..n-1 ordered by index.

    `edges` is a sorted tuple of pairs (u, v) with u < v. `tags` is an optional
    tuple aligned with `edges` (used to record which original edge a
    subdivision path stems from); it does not take part in equality.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    tags: tuple[str | None, ...] | None = field(default=None, compare=False, repr=False)

    @cached_property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def nbr(self) -> tuple[int, ...]:
        """Neighbourhood bitsets."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.nbr[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def tag_of(self, e: tuple[int, int]) -> str | None:
        if self.tags is None:
            return None
        return self.tags[self.edges.index(normalize_edge(e))]


def normalize_edge(e: Sequence[int]) -> tuple[int, int]:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


def build_ordered_graph(n: int, edge_list: Iterable[Sequence[int]], tags=None) -> OrderedGraph:
    """Validate and build an ordered graph. Pairs may be given in either direction."""
    if n < 0:
        raise VertexRangeError(f"negative vertex count {n}")
    edge_list = list(edge_list)
    tag_list = list(tags) if tags is not None else None
    if tag_list is not None and len(tag_list) != len(edge_list):
        raise GraphError("tags must align with edges")
    seen: dict[tuple[int, int], str | None] = {}
    for idx, e in enumerate(edge_list):
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise SelfLoopError(f"self-loop at {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen[key] = tag_list[idx] if tag_list is not None else None
    edges = tuple(sorted(seen))
    out_tags = tuple(seen[e] for e in edges) if tag_list is not None else None
    return OrderedGraph(n, edges, out_tags)


def induced_ordered_subgraph(G: OrderedGraph, keep: Iterable[int]) -> tuple[OrderedGraph, tuple[int, ...]]:
    """Induced subgraph on `keep`, reindexed in order.

    Returns the subgraph and `old`, with old[new_index] = original vertex.
    """
    old = tuple(sorted(set(keep)))
    for v in old:
        if not 0 <= v < G.n:
            raise VertexRangeError(f"vertex {v} out of range")
    new = {v: i for i, v in enumerate(old)}
    edges, tags = [], []
    for idx, (u, v) in enumerate(G.edges):
        if u in new and v in new:
            edges.append((new[u], new[v]))
            tags.append(G.tags[idx] if G.tags is not None else None)
    return OrderedGraph(len(old), tuple(edges), tuple(tags) if G.tags is not None else None), old


def relabel(G: OrderedGraph, order: Sequence[int]) -> OrderedGraph:
    """Reorder G so that vertex order[i] becomes vertex i."""
    pos = check_permutation(order, G.n)
    return build_ordered_graph(G.n, [(pos[u], pos[v]) for u, v in G.edges], G.tags)


def reverse(G: OrderedGraph) -> OrderedGraph:
    return relabel(G, list(range(G.n - 1, -1, -1)))


def check_permutation(order: Sequence[int], n: int) -> list[int]:
    """Return the inverse of `order`, raising if it is not a permutation of 0..n-1."""
    if len(order) != n or sorted(order) != list(range(n)):
        raise GraphError(f"not a permutation of 0..{n - 1}")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def components(G: OrderedGraph, alive: int | None = None) -> list[int]:
    """Connected components of G restricted to the `alive` bitset, as bitsets."""
    if alive is None:
        alive = (1 << G.n) - 1
    comps = []
    rest = alive
    nbr = G.nbr
    while rest:
        start = rest & -rest
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for u in iter_bits(frontier):
                grow |= nbr[u]
            grow &= alive & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps



# ---------------------------------------------------------------- partitions

@dataclass(frozen=True)
class VertexPartition:
    """Partition of 0..n-1. Blocks are sorted tuples ordered by their minimum
    (the canonical representative)."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        bl = [tuple(sorted(set(b))) for b in blocks]
        seen = [False] * n
        for b in bl:
            if not b:
                raise PartitionError("empty block")
            for v in b:
                if not 0 <= v < n:
                    raise PartitionError(f"vertex {v} out of range")
                if seen[v]:
                    raise PartitionError(f"vertex {v} in two blocks")
                seen[v] = True
        if not all(seen):
            raise PartitionError(f"vertex {seen.index(False)} not covered")
        bl.sort()
        return VertexPartition(n, tuple(bl))

    @staticmethod
    def from_masks(n: int, masks: Iterable[int]) -> "VertexPartition":
        return VertexPartition.from_blocks(n, [list(iter_bits(m)) for m in masks])

    @staticmethod
    def finest(n: int) -> "VertexPartition":
        return VertexPartition(n, tuple((v,) for v in range(n)))

    @staticmethod
    def coarsest(n: int) -> "VertexPartition":
        return VertexPartition(n, (tuple(range(n)),) if n else ())

    @cached_property
    def part_of(self) -> tuple[int, ...]:
        out = [0] * self.n
        for i, b in enumerate(self.blocks):
            for v in b:
                out[v] = i
        return tuple(out)

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class RedGraph:
    parts: tuple[int, ...]
    red_edges: frozenset[tuple[int, int]]


def inhomogeneous(nbr: Sequence[int], X: int, Y: int) -> bool:
    """True iff bitsets X, Y see both an edge and a non-edge between them."""
    full = empty = False
    for u in iter_bits(X):
        a = nbr[u] & Y
        if a == 0:
            empty = True
        elif a == Y:
            full = True
        else:
            return True
        if full and empty:
            return True
    return False


def red_graph(G: OrderedGraph, P: VertexPartition) -> RedGraph:
    """Red graph of P: parts are block indices, red edges join inhomogeneous blocks."""
    if P.n != G.n:
        raise PartitionError("partition does not cover V(G)")
    masks = P.masks
    red = set()
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if inhomogeneous(G.nbr, masks[i], masks[j]):
                red.add((i, j))
    return RedGraph(tuple(range(len(masks))), frozenset(red))


@dataclass(frozen=True)
class PartitionSequence:
    """n-1 merges, each naming two live blocks by their minimum vertex."""

    n: int
    merges: tuple[tuple[int, int], ...]

    def replay_masks(self) -> Iterator[dict[int, int]]:
        """Yield the live blocks (rep -> bitset) of each partition, finest first.

        The same dict is mutated between yields; copy it to keep a snapshot.
        """
        if len(self.merges) != max(self.n - 1, 0):
            raise SequenceError(f"expected {max(self.n - 1, 0)} merges, got {len(self.merges)}")
        live = {v: 1 << v for v in range(self.n)}
        yield live
        for idx, (a, b) in enumerate(self.merges):
            if a == b:
                raise SequenceError(f"merging {a} with itself", idx)
            if a not in live or b not in live:
                bad = a if a not in live else b
                raise SequenceError(f"representative {bad} is not a live block", idx)
            lo, hi = min(a, b), max(a, b)
            live[lo] |= live.pop(hi)
            yield live

    def partitions(self) -> list[VertexPartition]:
        return [VertexPartition.from_masks(self.n, list(live.values())) for live in self.replay_masks()]

    def validate(self) -> None:
        for _ in self.replay_masks():
            pass


def relabel_sequence(seq: PartitionSequence, order: Sequence[int]) -> PartitionSequence:
    """Express `seq` in the labels of relabel(G, order): old vertex order[i] becomes i."""
    pos = check_permutation(order, seq.n)
    blocks = {v: [v] for v in range(seq.n)}  # old rep -> old vertices
    merges = []
    for idx, live in enumerate(seq.replay_masks()):
        if idx == len(seq.merges):
            break
        a, b = seq.merges[idx]
        na = min(pos[v] for v in blocks[a])
        nb = min(pos[v] for v in blocks[b])
        merges.append((na, nb))
        lo, hi = min(a, b), max(a, b)
        blocks[lo] = blocks[lo] + blocks.pop(hi)
    return PartitionSequence(seq.n, tuple(merges))


def sequence_from_partitions(chain: Sequence[VertexPartition]) -> PartitionSequence:
    """Merges realising a chain of partitions that coarsen one merge at a time."""
    merges = []
    for prev, nxt in zip(chain, chain[1:]):
        kept = set(nxt.blocks)
        gone = [b for b in prev.blocks if b not in kept]
        if len(gone) != 2 or len(nxt) != len(prev) - 1:
            raise SequenceError("consecutive partitions do not differ by one merge", len(merges))
        merges.append((gone[0][0], gone[1][0]))
    return PartitionSequence(chain[0].n if chain else 0, tuple(merges))
