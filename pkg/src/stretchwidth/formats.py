"""Line-based text formats and JSON certificates.

graph      `graph <n> <m>`, optional `order p_0 .. p_{n-1}`, then m lines `u v [tag]`
matrix     `matrix <n>`, then n rows of 0/1 characters
sequence   `sequence <n>`, optional `order ...`, then n-1 lines `repA repB`
divisions  `divisions <n>`, then one line of boundaries per division

An `order` line lists the vertices from first to last. Graph files are
relabelled to that order when parsed. Sequence files keep their labels and
report the order so a verifier can move graph and sequence together.
Blank lines and lines starting with '#' are ignored.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .graph import OrderedGraph, PartitionSequence, build_ordered_graph, check_permutation, relabel
from .matrix import DivisionSequence, SymBitMatrix, SymDivision
from .mis import MisResult
from .separator import Separation, TreeDecomposition


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class SequenceFile:
    seq: PartitionSequence
    order: tuple[int, ...] | None = None


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def _ints(tokens, no):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def _header(lines, kind, arity):
    try:
        no, s = next(lines)
    except StopIteration:
        raise FormatError("empty input") from None
    tok = s.split()
    if tok[0] != kind or len(tok) != arity + 1:
        raise FormatError(f"expected header '{kind}' with {arity} numbers, got {s!r}", no)
    vals = _ints(tok[1:], no)
    if any(v < 0 for v in vals):
        raise FormatError("negative size in header", no)
    return vals


def _order_line(tok, n, no):
    order = _ints(tok[1:], no)
    try:
        check_permutation(order, n)
    except ValueError as e:
        raise FormatError(f"order line: {e}", no) from None
    return tuple(order)


def parse_graph(text: str) -> OrderedGraph:
    lines = _lines(text)
    n, m = _header(lines, "graph", 2)
    edges, tags, order = [], [], None
    for no, s in lines:
        tok = s.split()
        if tok[0] == "order":
            if order is not None:
                raise FormatError("duplicate order line", no)
            order = _order_line(tok, n, no)
            continue
        if len(tok) not in (2, 3):
            raise FormatError(f"expected 'u v [tag]', got {s!r}", no)
        u, v = _ints(tok[:2], no)
        edges.append((u, v))
        tags.append(tok[2] if len(tok) == 3 else None)
        if len(edges) > m:
            raise FormatError(f"more than {m} edges", no)
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        G = build_ordered_graph(n, edges, tags if any(t is not None for t in tags) else None)
    except ValueError as e:
        raise FormatError(str(e)) from None
    return relabel(G, order) if order is not None else G


def emit_graph(G: OrderedGraph) -> str:
    out = [f"graph {G.n} {G.m}"]
    for i, (u, v) in enumerate(G.edges):
        tag = G.tags[i] if G.tags is not None else None
        out.append(f"{u} {v}" + (f" {tag}" if tag is not None else ""))
    return "\n".join(out) + "\n"


def parse_matrix(text: str) -> SymBitMatrix:
    lines = _lines(text)
    (n,) = _header(lines, "matrix", 1)
    rows = []
    for no, s in lines:
        if len(s) != n or set(s) - {"0", "1"}:
            raise FormatError(f"expected {n} characters of 0/1, got {s!r}", no)
        rows.append(s)
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, found {len(rows)}")
    try:
        return SymBitMatrix(np.array([[int(c) for c in r] for r in rows], dtype=np.uint8).reshape(n, n))
    except ValueError as e:
        raise FormatError(str(e)) from None


def emit_matrix(M: SymBitMatrix) -> str:
    out = [f"matrix {M.n}"] + ["".join(str(int(x)) for x in row) for row in M.bits]
    return "\n".join(out) + "\n"


def read_sequence(text: str) -> SequenceFile:
    lines = _lines(text)
    (n,) = _header(lines, "sequence", 1)
    merges, order = [], None
    for no, s in lines:
        tok = s.split()
        if tok[0] == "order":
            if order is not None:
                raise FormatError("duplicate order line", no)
            order = _order_line(tok, n, no)
            continue
        if len(tok) != 2:
            raise FormatError(f"expected 'repA repB', got {s!r}", no)
        merges.append(tuple(_ints(tok, no)))
    seq = PartitionSequence(n, tuple(merges))
    seq.validate()
    return SequenceFile(seq, order)


def parse_sequence(text: str) -> PartitionSequence:
    return read_sequence(text).seq


def emit_sequence(seq: PartitionSequence, order: Sequence[int] | None = None) -> str:
    out = [f"sequence {seq.n}"]
    if order is not None:
        out.append("order " + " ".join(map(str, order)))
    out += [f"{a} {b}" for a, b in seq.merges]
    return "\n".join(out) + "\n"


def parse_divisions(text: str) -> DivisionSequence:
    lines = _lines(text)
    (n,) = _header(lines, "divisions", 1)
    chain = []
    for no, s in lines:
        b = _ints(s.split(), no)
        try:
            D = SymDivision(tuple(b))
        except ValueError as e:
            raise FormatError(str(e), no) from None
        if D.n != n:
            raise FormatError(f"division must end at {n}", no)
        chain.append(D)
    try:
        return DivisionSequence(tuple(chain))
    except ValueError as e:
        raise FormatError(str(e)) from None


def emit_divisions(chain: DivisionSequence | Sequence[SymDivision], n: int | None = None) -> str:
    divs = chain.chain if isinstance(chain, DivisionSequence) else tuple(chain)
    n = n if n is not None else divs[0].n
    out = [f"divisions {n}"] + [" ".join(map(str, D.boundaries)) for D in divs]
    return "\n".join(out) + "\n"


PARSERS = {"graph": parse_graph, "matrix": parse_matrix, "sequence": parse_sequence, "divisions": parse_divisions}


def sniff(text: str) -> str:
    for _, s in _lines(text):
        kind = s.split()[0]
        if kind in PARSERS:
            return kind
        if s.startswith("{"):
            return "json"
        raise FormatError(f"unknown file kind {kind!r}")
    raise FormatError("empty input")


def parse_instance(source) -> object:
    """Parse a path or text into the matching domain object."""
    if isinstance(source, Path) or (isinstance(source, str) and source and "\n" not in source and Path(source).is_file()):
        text = Path(source).read_text()
    else:
        text = source
    kind = sniff(text)
    if kind == "json":
        return json.loads(text)
    return PARSERS[kind](text)


# ------------------------------------------------------------ certificates

def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def separation_cert(sep: Separation, n: int) -> dict:
    return {
        "kind": "separation",
        "n": n,
        "A": sorted(sep.A),
        "B": sorted(sep.B),
        "C": sorted(sep.C),
        "balance": str(sep.balance),
        "method": sep.method,
        "t": sep.t,
    }


def separation_from_cert(d: dict) -> Separation:
    A, B = frozenset(d["A"]), frozenset(d["B"])
    return Separation(A, B, A & B, Fraction(d.get("balance", "0")), d.get("method", ""), d.get("t", 0))


def td_cert(td: TreeDecomposition) -> dict:
    return {"kind": "tree_decomposition", "bags": [sorted(b) for b in td.bags], "parent": list(td.parent), "width": td.width}


def td_from_cert(d: dict) -> TreeDecomposition:
    return TreeDecomposition(tuple(frozenset(b) for b in d["bags"]), tuple(d["parent"]))


def mis_cert(res: MisResult) -> dict:
    return {"kind": "independent_set", "size": res.size, "set": list(res.set)}


def left_right_cert(x: int, U, t: int, initial_length: int, bound: int) -> dict:
    return {"kind": "left_right", "x": x, "U": sorted(U), "t": t, "initial_length": initial_length, "bound": bound}
