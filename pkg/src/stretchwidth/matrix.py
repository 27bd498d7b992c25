"""Symmetric 0,1-matrices, symmetric divisions and the approximation algorithm.

A division cuts [0, n) into consecutive blocks used for both rows and
columns. A block is k-wide when every window of k consecutive column blocks
around it leaves at least k distinct rows in the block; a division is
q-diagonal when no block is q-wide. Greedily coarsening while staying
q-diagonal either reaches a single block, giving a partition sequence of
bounded stretch, or gets stuck, which exhibits a wide division.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .graph import (
    OrderedGraph,
    PartitionError,
    PartitionSequence,
    SequenceError,
    VertexPartition,
    build_ordered_graph,
)
from .stretch import StretchReport, bottleneck_lattice_search, verify_sequence


class MatrixError(ValueError):
    pass


class DivisionError(ValueError):
    def __init__(self, message: str, step: int | None = None, block: int | None = None):
        super().__init__(message)
        self.step = step
        self.block = block


@dataclass(frozen=True, eq=False)
class SymBitMatrix:
    bits: np.ndarray  # (n, n) uint8, symmetric

    def __post_init__(self):
        b = np.asarray(self.bits, dtype=np.uint8)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise MatrixError(f"matrix must be square, got shape {b.shape}")
        if b.size and b.max() > 1:
            raise MatrixError("entries must be 0 or 1")
        if not np.array_equal(b, b.T):
            i, j = np.argwhere(b != b.T)[0]
            raise MatrixError(f"not symmetric at ({i},{j})")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @staticmethod
    def from_rows(rows: Sequence) -> "SymBitMatrix":
        return SymBitMatrix(np.array([[int(c) for c in r] for r in rows], dtype=np.uint8).reshape(len(rows), -1))

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        return isinstance(other, SymBitMatrix) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    @cached_property
    def off_diagonal_graph(self) -> OrderedGraph:
        """Graph of the off-diagonal ones. Its graph-side stretch equals the
        matrix-side stretch, since diagonal zones never decide anything."""
        iu = np.argwhere(np.triu(self.bits, 1))
        return build_ordered_graph(self.n, [tuple(map(int, e)) for e in iu])


@dataclass(frozen=True)
class SymDivision:
    boundaries: tuple[int, ...]  # 0 = b_0 < b_1 < ... < b_p = n

    def __post_init__(self):
        b = tuple(int(x) for x in self.boundaries)
        if not b or b[0] != 0:
            raise DivisionError("boundaries must start at 0")
        if any(x >= y for x, y in zip(b, b[1:])):
            raise DivisionError("boundaries must be strictly increasing")
        object.__setattr__(self, "boundaries", b)

    @property
    def n(self) -> int:
        return self.boundaries[-1]

    @property
    def p(self) -> int:
        return len(self.boundaries) - 1

    def block(self, i: int) -> tuple[int, int]:
        return self.boundaries[i], self.boundaries[i + 1]

    @staticmethod
    def finest(n: int) -> "SymDivision":
        return SymDivision(tuple(range(n + 1)))

    def merged(self, j: int) -> "SymDivision":
        """Merge blocks j and j+1."""
        return SymDivision(self.boundaries[: j + 1] + self.boundaries[j + 2:])


@dataclass(frozen=True)
class DivisionSequence:
    chain: tuple[SymDivision, ...]

    def __post_init__(self):
        for s, (a, b) in enumerate(zip(self.chain, self.chain[1:])):
            if b.n != a.n or b.p != a.p - 1 or not set(b.boundaries) <= set(a.boundaries):
                raise DivisionError(f"step {s + 1} does not remove exactly one boundary", step=s + 1)

    @property
    def n(self) -> int:
        return self.chain[0].n if self.chain else 0

    def is_full(self) -> bool:
        return bool(self.chain) and self.chain[0].p == self.n and self.chain[-1].p == min(1, self.n)


def adjacency_matrix(G: OrderedGraph) -> SymBitMatrix:
    bits = np.zeros((G.n, G.n), dtype=np.uint8)
    for u, v in G.edges:
        bits[u, v] = bits[v, u] = 1
    return SymBitMatrix(bits)


def _check_block(D: SymDivision, i: int) -> None:
    if not 0 <= i < D.p:
        raise DivisionError(f"block index {i} out of range for {D.p} blocks", block=i)


def _cols_outside(D: SymDivision, first: int, last: int) -> np.ndarray:
    """Column indices outside blocks first..last; out-of-range blocks are empty."""
    f, l = max(first, 0), min(last, D.p - 1)
    if f > l:
        return np.arange(D.n)
    lo, hi = D.boundaries[f], D.boundaries[l + 1]
    return np.r_[0:lo, hi:D.n]


def _distinct(sub: np.ndarray) -> int:
    if sub.shape[1] == 0:
        return 0
    packed = np.packbits(sub, axis=1)
    return len({r.tobytes() for r in packed})


def distinct_rows_outside_band(M: SymBitMatrix, D: SymDivision, i: int, k: int) -> int:
    """Distinct rows of R_i once columns of C_{i-k+1}..C_{i+k-1} are deleted
    (0 when no column remains)."""
    _check_block(D, i)
    if k < 1:
        raise ValueError("k >= 1 required")
    r0, r1 = D.block(i)
    cols = _cols_outside(D, i - k + 1, i + k - 1)
    return _distinct(M.bits[r0:r1][:, cols])


def is_part_wide(M: SymBitMatrix, D: SymDivision, i: int, k: int) -> bool:
    """Every window of k consecutive column blocks containing C_i leaves at
    least k distinct rows in R_i. Out-of-range blocks are empty."""
    _check_block(D, i)
    if k < 1:
        raise ValueError("k >= 1 required")
    r0, r1 = D.block(i)
    if r1 - r0 < k:
        return False
    rows = M.bits[r0:r1]
    for j in range(i - k + 1, i + 1):
        cols = _cols_outside(D, j, j + k - 1)
        if _distinct(rows[:, cols]) < k:
            return False
    return True


def wide_blocks(M: SymBitMatrix, D: SymDivision, k: int) -> list[int]:
    return [i for i in range(D.p) if is_part_wide(M, D, i, k)]


def is_diagonal(M: SymBitMatrix, D: SymDivision, q: int) -> bool:
    return not wide_blocks(M, D, q)


def pairwise_merged(D: SymDivision) -> SymDivision:
    """Merge blocks 1-2, 3-4, ...; with an odd count the last three merge."""
    b = D.boundaries
    p = D.p
    keep = [b[0]]
    i = 2
    while i <= p:
        keep.append(b[i])
        i += 2
    if p % 2 == 1 and p > 1:
        keep[-1] = b[p]
    elif p == 1:
        keep.append(b[1])
    return SymDivision(tuple(keep))


@dataclass(frozen=True)
class GreedyResult:
    chain: DivisionSequence | None
    stuck_at: SymDivision | None = None
    witness: SymDivision | None = None

    @property
    def stuck(self) -> bool:
        return self.chain is None


def greedy_diagonal_sequence(M: SymBitMatrix, q: int) -> GreedyResult:
    """Coarsen from the finest division, always taking the leftmost merge of
    consecutive blocks that keeps the division q-diagonal.

    Merging only makes the other blocks' windows larger, so only the merged
    block needs to be checked.
    """
    if q < 2:
        raise ValueError("q >= 2 required")
    D = SymDivision.finest(M.n)
    chain = [D]
    while D.p > 1:
        for j in range(D.p - 1):
            cand = D.merged(j)
            if not is_part_wide(M, cand, j, q):
                D = cand
                chain.append(D)
                break
        else:
            return GreedyResult(None, D, pairwise_merged(D))
    return GreedyResult(DivisionSequence(tuple(chain)))


def _classes(M: SymBitMatrix, D: SymDivision, q: int):
    """Equal-row classes of each R_i outside the band of width q around it.

    Returns a list of (sort key, vertex tuple), sorted by key, where the key
    is (block index, restricted row vector).
    """
    out = []
    for i in range(D.p):
        r0, r1 = D.block(i)
        cols = _cols_outside(D, i - q + 1, i + q - 1)
        sub = M.bits[r0:r1][:, cols]
        groups: dict[bytes, list[int]] = {}
        for off in range(r1 - r0):
            groups.setdefault(sub[off].tobytes(), []).append(r0 + off)
        for key, verts in groups.items():
            out.append(((i, key), tuple(verts)))
    out.sort()
    return out


def sequence_from_divisions(M: SymBitMatrix, chain: DivisionSequence, q: int, check: bool = True) -> PartitionSequence:
    """Partition sequence following the refined partitions P'_s of a
    q-diagonal division chain (classes of equal rows outside the band).

    Between consecutive refined partitions, each new class absorbs its old
    subclasses in (block index, row vector) order.
    """
    if not chain.is_full():
        raise DivisionError("division chain must run from the finest division to one block")
    prev = None
    merges: list[tuple[int, int]] = []
    for s, D in enumerate(chain.chain):
        if check:
            bad = wide_blocks(M, D, q)
            if bad:
                raise DivisionError(f"division {s} is not {q}-diagonal: block {bad[0]} is {q}-wide", step=s, block=bad[0])
        cur = _classes(M, D, q)
        if prev is not None:
            where = {}
            for ci, (_, verts) in enumerate(cur):
                for v in verts:
                    where[v] = ci
            subs: dict[int, list] = {}
            for key, verts in prev:
                targets = {where[v] for v in verts}
                if len(targets) != 1:
                    raise DivisionError(f"refined partition {s} does not coarsen partition {s - 1}", step=s)
                subs.setdefault(targets.pop(), []).append((key, verts))
            for ci in sorted(subs):
                parts = sorted(subs[ci])
                rep = parts[0][1][0]
                for _, verts in parts[1:]:
                    merges.append((rep, verts[0]))
                    rep = min(rep, verts[0])
        prev = cur
    # trivial tail, only needed if the last refined partition is not a single block
    reps = sorted(verts[0] for _, verts in prev or [])
    for r in reps[1:]:
        merges.append((reps[0], r))
    return PartitionSequence(M.n, tuple(merges))


def matrix_partition_stretch(M: SymBitMatrix, P: VertexPartition) -> int:
    """Max over row blocks R of the number of other column blocks whose span
    meets the span of the union of C = sym(R) and every C with R x C non-constant.

    Row and column values agree by symmetry, so only rows are evaluated.
    """
    if P.n != M.n:
        raise PartitionError("partition does not cover the matrix")
    p = len(P.blocks)
    if p == 0:
        return 0
    ind = np.zeros((M.n, p), dtype=np.int64)
    for j, b in enumerate(P.blocks):
        ind[list(b), j] = 1
    ones = ind.T @ M.bits.astype(np.int64) @ ind
    sizes = np.array([len(b) for b in P.blocks], dtype=np.int64)
    full = np.outer(sizes, sizes)
    mixed = (ones > 0) & (ones < full)
    lo = np.array([b[0] for b in P.blocks])
    hi = np.array([b[-1] for b in P.blocks])
    best = 0
    for i in range(p):
        sel = mixed[i].copy()
        sel[i] = True
        a, b = lo[sel].min(), hi[sel].max()
        meet = (lo <= b) & (hi >= a)
        best = max(best, int(meet.sum()) - 1)
    return best


def verify_matrix_sequence(M: SymBitMatrix, seq: PartitionSequence) -> StretchReport:
    """Matrix-side stretch along a sequence (via the off-diagonal graph)."""
    if seq.n != M.n:
        raise SequenceError(f"sequence is on {seq.n} vertices, matrix has {M.n}")
    return verify_sequence(M.off_diagonal_graph, seq)


def exact_matrix_stw_fixed_order(M: SymBitMatrix, limit: int = 8) -> tuple[int, PartitionSequence]:
    """Matrix-side stw by lattice search with the matrix stretch as node cost."""
    if M.n > limit:
        raise ValueError(f"n={M.n} above lattice limit {limit}")
    n = M.n

    def cost(state):
        P = VertexPartition.from_masks(n, state)
        return matrix_partition_stretch(M, P)

    res = bottleneck_lattice_search(n, cost)
    return res.value, res.witness


@dataclass(frozen=True)
class ApproxOutcome:
    success: bool
    k: int
    q: int
    bound: int
    witness: PartitionSequence | None = None
    verified_stretch: int | None = None
    chain: DivisionSequence | None = None
    refusal_division: SymDivision | None = None
    claim: str | None = None


def approx_bound(k: int) -> int:
    q = 2 * (9 * k + 1)
    return 4 * q ** 3


def approx_stw(M: SymBitMatrix, k: int) -> ApproxOutcome:
    """Either a sequence of stretch at most 32(9k+1)^3, re-verified, or a
    9k-wide division showing stw(M) > k."""
    if k < 1:
        raise ValueError("k >= 1 required")
    q = 2 * (9 * k + 1)
    bound = 4 * q ** 3
    res = greedy_diagonal_sequence(M, q)
    if res.stuck:
        W = res.witness
        bad = [i for i in range(W.p) if not is_part_wide(M, W, i, 9 * k)]
        if bad:
            raise AssertionError(f"refusal witness block {bad[0]} is not {9 * k}-wide")
        return ApproxOutcome(False, k, q, bound, refusal_division=W, claim=f"stw > {k}")
    seq = sequence_from_divisions(M, res.chain, q, check=False)
    rep = verify_matrix_sequence(M, seq)
    if rep.max_stretch > bound:
        raise AssertionError(f"verified stretch {rep.max_stretch} exceeds {bound}")
    return ApproxOutcome(True, k, q, bound, seq, rep.max_stretch, res.chain)
