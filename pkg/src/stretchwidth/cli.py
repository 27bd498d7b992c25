"""Command-line interface: `stretchwidth <group> <command> [flags]`.

Exit codes: 0 success, 1 refusal or absent outcome (including a failed
verification), 2 error.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import redirect_stderr
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import formats as fmt
from .generators import (
    gen_abh, gen_flattened_grid, gen_grid, gen_hk, gen_hk_bad_order, flatten_edge,
    iterated_subdivision, padded_subdivision, random_bounded_degree, random_cograph, subdivide_simple,
)
from .graph import OrderedGraph, PartitionSequence, check_permutation, normalize_edge, relabel, relabel_sequence
from .matrix import (
    SymBitMatrix, SymDivision, adjacency_matrix, approx_stw, distinct_rows_outside_band,
    greedy_diagonal_sequence, is_part_wide, sequence_from_divisions, verify_matrix_sequence, wide_blocks,
)
from .mis import EXACT_LIMIT, is_independent, leaf_decomposition, mis_branch, mis_exact, mis_tw_dp
from .overlap import (
    DEFAULT_EDGE_BUDGET, certified_t, check_clean_biclique, clean_biclique_at_least, is_rainbow,
    ktt_upper_check, max_rainbow_over, overlap_graph,
)
from .separator import (
    balanced_separator, check_tree_decomposition, left_right_separator, tree_decomposition,
    verify_left_right, verify_separation,
)
from .stretch import DEFAULT_LATTICE_LIMIT, DEFAULT_ORDER_LIMIT, exact_stw, exact_stw_fixed_order, verify_sequence


class UsageError(ValueError):
    pass


@dataclass
class Outcome:
    report: dict
    code: int = 0
    artifact: str | None = None  # file content for --output (or stdout for gen)


# ------------------------------------------------------------------ loading

def _read(path) -> object:
    if path is None:
        raise UsageError("--input is required")
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return fmt.parse_instance(text)


def load_graph(path) -> OrderedGraph:
    obj = _read(path)
    if isinstance(obj, SymBitMatrix):
        return obj.off_diagonal_graph
    if not isinstance(obj, OrderedGraph):
        raise UsageError(f"{path}: expected a graph file")
    return obj


def load_matrix(path) -> SymBitMatrix:
    obj = _read(path)
    if isinstance(obj, OrderedGraph):
        return adjacency_matrix(obj)
    if not isinstance(obj, SymBitMatrix):
        raise UsageError(f"{path}: expected a matrix or graph file")
    return obj


def load_json(path) -> dict:
    obj = json.loads(Path(path).read_text())
    if not isinstance(obj, dict) or "kind" not in obj:
        raise UsageError(f"{path}: expected a JSON certificate with a 'kind'")
    return obj


def _edge(G: OrderedGraph, pair) -> tuple[int, int]:
    e = normalize_edge(pair)
    if not G.has_edge(*e):
        raise UsageError(f"{e} is not an edge")
    return e


def _resolve_t(G: OrderedGraph, t, budget) -> int:
    if t in (None, "auto"):
        ct = certified_t(G, budget)
        if ct is None:
            raise UsageError("clean-biclique search unresolved; pass --t explicitly")
        return ct
    return int(t)


def _seq_report(rep) -> dict:
    return {"max_stretch": rep.max_stretch, "per_step_stretch": list(rep.per_step_stretch),
            "worst_step": rep.worst_step, "worst_part": rep.worst_part}


def _to_original(witness: PartitionSequence, order) -> PartitionSequence:
    """Sequence in the labels of relabel(G, order) -> labels of G."""
    return relabel_sequence(witness, check_permutation(order, len(order)))


# --------------------------------------------------------------------- gen

def _gen_graph(a) -> tuple[OrderedGraph, PartitionSequence | None, dict]:
    cmd = a.command
    if cmd == "hk":
        w = gen_hk(a.k)
        return w.graph, w.witness_sequence, {"provenance": "hk", "k": a.k, "claimed_stretch": w.claimed_stretch}
    if cmd == "hk-bad":
        return gen_hk_bad_order(a.k), None, {"provenance": "hk-bad", "k": a.k}
    if cmd == "a3":
        w = gen_abh(a.b, a.h, a.budget_vertices)
        return w.graph, w.witness_sequence, {"provenance": "abh", "b": a.b, "h": a.h, "claimed_stretch": w.claimed_stretch}
    if cmd == "grid":
        return gen_grid(a.k), None, {"provenance": "grid", "k": a.k}
    if cmd == "flatten-grid":
        return gen_flattened_grid(a.k, a.budget_vertices), None, {"provenance": "flatten-grid", "k": a.k}
    if cmd == "random":
        if a.seed is None:
            raise UsageError("gen random requires --seed")
        if a.model == "cograph":
            G, seq = random_cograph(a.n, a.seed)
            return G, seq, {"provenance": "cograph", "n": a.n, "seed": a.seed, "claimed_stretch": 0}
        return random_bounded_degree(a.n, a.d, a.seed), None, {"provenance": "bounded-degree", "n": a.n, "d": a.d, "seed": a.seed}
    G = load_graph(a.input)
    if cmd == "subdivide":
        if not a.edge:
            raise UsageError("gen subdivide requires --edge U V")
        return subdivide_simple(G, _edge(G, a.edge)), None, {"provenance": "subdivide", "edge": list(a.edge)}
    if cmd == "flatten":
        if a.edge:
            return flatten_edge(G, _edge(G, a.edge)), None, {"provenance": "flatten-edge", "edge": list(a.edge)}
        if a.pad:
            return padded_subdivision(G, budget=a.budget_vertices), None, {"provenance": "padded-subdivision"}
        return iterated_subdivision(G, budget=a.budget_vertices), None, {"provenance": "iterated-subdivision"}
    raise UsageError(f"unknown gen command {cmd}")


def cmd_gen(a, inp) -> Outcome:
    a.input = inp
    G, seq, info = _gen_graph(a)
    report = {"kind": a.emit, "n": G.n, "m": G.m, **info}
    if a.emit == "graph":
        art = fmt.emit_graph(G)
    elif a.emit == "matrix":
        art = fmt.emit_matrix(adjacency_matrix(G))
    else:
        if seq is None:
            raise UsageError(f"gen {a.command} has no witness sequence")
        report["verified_stretch"] = verify_sequence(G, seq).max_stretch
        art = fmt.emit_sequence(seq)
    return Outcome(report, 0, art)


# --------------------------------------------------------------------- stw

def cmd_stw_exact(a, inp) -> Outcome:
    G = load_graph(inp)
    limit = a.limit_n if a.limit_n is not None else DEFAULT_ORDER_LIMIT
    res = exact_stw(G, limit=limit)
    ident = exact_stw_fixed_order(G, limit=max(limit, DEFAULT_LATTICE_LIMIT))
    seq = _to_original(res.witness, res.best_order) if G.n else res.witness
    report = {"value": res.value, "order": list(res.best_order), "merges": [list(m) for m in seq.merges],
              "identity_order_value": ident.value}
    return Outcome(report, 0, fmt.emit_sequence(seq, res.best_order))


def cmd_stw_fixed(a, inp) -> Outcome:
    G = load_graph(inp)
    limit = a.limit_n if a.limit_n is not None else DEFAULT_LATTICE_LIMIT
    res = exact_stw_fixed_order(G, cap=a.cap, limit=limit)
    if res.cap_exceeded:
        return Outcome({"value": None, "cap": a.cap, "cap_exceeded": True}, 1)
    report = {"value": res.value, "merges": [list(m) for m in res.witness.merges], "cap_exceeded": False}
    return Outcome(report, 0, fmt.emit_sequence(res.witness))


def cmd_stw_approx(a, inp) -> Outcome:
    M = load_matrix(inp)
    out = approx_stw(M, a.k)
    report = {"success": out.success, "k": out.k, "q": out.q, "bound": out.bound}
    if out.success:
        report["verified_stretch"] = out.verified_stretch
        return Outcome(report, 0, fmt.emit_sequence(out.witness))
    W = out.refusal_division
    report.update(claim=out.claim, witness_boundaries=list(W.boundaries), wide_k=9 * a.k)
    return Outcome(report, 1, fmt.emit_divisions([W]))


def _permute_matrix(M: SymBitMatrix, order) -> SymBitMatrix:
    idx = np.asarray(order)
    return SymBitMatrix(M.bits[np.ix_(idx, idx)])


def cmd_stw_verify(a, inp) -> Outcome:
    if not a.sequence:
        raise UsageError("stw verify requires --sequence FILE")
    obj = _read(inp)
    sf = fmt.read_sequence(Path(a.sequence).read_text())
    seq = sf.seq
    if isinstance(obj, SymBitMatrix):
        M = obj
        if sf.order is not None:
            M, seq = _permute_matrix(M, sf.order), relabel_sequence(seq, sf.order)
        rep = verify_matrix_sequence(M, seq)
    elif isinstance(obj, OrderedGraph):
        G = obj
        if sf.order is not None:
            G, seq = relabel(G, sf.order), relabel_sequence(seq, sf.order)
        rep = verify_sequence(G, seq)
    else:
        raise UsageError(f"{inp}: expected a graph or matrix file")
    report = _seq_report(rep)
    code = 0
    if a.claim is not None:
        report["claim"] = a.claim
        report["within_claim"] = rep.max_stretch <= a.claim
        code = 0 if report["within_claim"] else 1
    return Outcome(report, code)


# ----------------------------------------------------------------- overlap

def cmd_overlap_build(a, inp) -> Outcome:
    G = load_graph(inp)
    Ov = overlap_graph(G)
    pairs = sorted((list(G.edges[i]), list(G.edges[j])) for i, j in Ov.crossings)
    report = {"m": G.m, "crossings": len(pairs), "pairs": [list(p) for p in pairs],
              "isolated": [list(G.edges[i]) for i in Ov.isolated()]}
    return Outcome(report)


def cmd_overlap_rainbow(a, inp) -> Outcome:
    G = load_graph(inp)
    if a.vertex is None:
        raise UsageError("overlap rainbow requires --vertex")
    R = max_rainbow_over(G, a.vertex)
    cert = {"kind": "rainbow", "vertex": a.vertex, "edges": [list(e) for e in R.edges]}
    return Outcome({"vertex": a.vertex, "length": len(R), "edges": cert["edges"]}, 0, fmt.dumps(cert))


def cmd_overlap_clean(a, inp) -> Outcome:
    G = load_graph(inp)
    res = clean_biclique_at_least(G, a.s, a.budget)
    report = {"status": res.status, "s": a.s, "nodes": res.nodes, "exact": res.exact}
    if not res.found:
        return Outcome(report, 1)
    X = [list(G.edges[i]) for i in res.X]
    Y = [list(G.edges[i]) for i in res.Y]
    report.update(X=X, Y=Y)
    return Outcome(report, 0, fmt.dumps({"kind": "clean_biclique", "s": a.s, "X": X, "Y": Y}))


def cmd_overlap_ktt(a, inp) -> Outcome:
    G = load_graph(inp)
    if a.t is None or a.t == "auto":
        raise UsageError("overlap ktt-check requires an integer --t")
    cert = ktt_upper_check(G, int(a.t), a.budget)
    report = {"status": cert.status, "t": cert.t, "s": cert.s, "implied_t": cert.implied_t}
    if cert.biclique.found:
        report.update(X=[list(G.edges[i]) for i in cert.biclique.X], Y=[list(G.edges[i]) for i in cert.biclique.Y])
    return Outcome(report, 0 if cert.status == "certified" else 1)


def cmd_overlap_verify(a, inp) -> Outcome:
    G = load_graph(inp)
    cert = load_json(a.certificate)
    idx = {e: i for i, e in enumerate(G.edges)}
    if cert["kind"] == "rainbow":
        E = [_edge(G, e) for e in cert["edges"]]
        v = cert["vertex"]
        ok = is_rainbow(E) and all(e[0] < v < e[1] for e in E)
        ok = ok and len(E) == len(max_rainbow_over(G, v))
    elif cert["kind"] == "clean_biclique":
        X = [idx[_edge(G, e)] for e in cert["X"]]
        Y = [idx[_edge(G, e)] for e in cert["Y"]]
        ok = len(set(X)) == len(set(Y)) == cert["s"] and check_clean_biclique(G, X, Y)
    else:
        raise UsageError(f"overlap verify cannot check kind {cert['kind']!r}")
    return Outcome({"kind": cert["kind"], "valid": ok}, 0 if ok else 1)


# ---------------------------------------------------------------- division

def _boundaries(text) -> SymDivision:
    if text is None:
        raise UsageError("--boundaries is required")
    return SymDivision(tuple(int(x) for x in text.replace(",", " ").split()))


def cmd_division_wide(a, inp) -> Outcome:
    M = load_matrix(inp)
    D = _boundaries(a.boundaries)
    if D.n != M.n:
        raise UsageError("division does not match the matrix size")
    blocks = range(D.p) if a.block is None else [a.block]
    rows = [{"block": i, "wide": is_part_wide(M, D, i, a.k),
             "distinct_outside_band": distinct_rows_outside_band(M, D, i, a.k)} for i in blocks]
    return Outcome({"k": a.k, "blocks": rows})


def cmd_division_diagonal(a, inp) -> Outcome:
    M = load_matrix(inp)
    res = greedy_diagonal_sequence(M, a.q)
    if res.stuck:
        report = {"stuck": True, "q": a.q, "stuck_at": list(res.stuck_at.boundaries),
                  "witness": list(res.witness.boundaries)}
        return Outcome(report, 1, fmt.emit_divisions([res.witness]))
    return Outcome({"stuck": False, "q": a.q, "length": len(res.chain.chain)}, 0, fmt.emit_divisions(res.chain))


def cmd_division_to_sequence(a, inp) -> Outcome:
    M = load_matrix(inp)
    if not a.chain:
        raise UsageError("division to-sequence requires --chain FILE")
    chain = fmt.parse_divisions(Path(a.chain).read_text())
    seq = sequence_from_divisions(M, chain, a.q)
    rep = verify_matrix_sequence(M, seq)
    return Outcome({"q": a.q, "verified_stretch": rep.max_stretch}, 0, fmt.emit_sequence(seq))


def cmd_division_verify(a, inp) -> Outcome:
    """A full chain is checked to be q-diagonal throughout; a single division
    with --wide K is checked to have every block K-wide."""
    M = load_matrix(inp)
    chain = fmt.parse_divisions(Path(a.chain).read_text())
    if chain.n != M.n:
        raise UsageError("division chain does not match the matrix size")
    if a.wide is not None:
        D = chain.chain[-1]
        narrow = [i for i in range(D.p) if not is_part_wide(M, D, i, a.wide)]
        ok = not narrow
        return Outcome({"mode": "wide", "k": a.wide, "valid": ok, "narrow_blocks": narrow}, 0 if ok else 1)
    if a.q is None:
        raise UsageError("division verify needs --q or --wide")
    bad = [(s, wide_blocks(M, D, a.q)) for s, D in enumerate(chain.chain)]
    bad = [(s, b) for s, b in bad if b]
    ok = chain.is_full() and not bad
    report = {"mode": "diagonal", "q": a.q, "full": chain.is_full(), "valid": ok,
              "first_wide": [bad[0][0], bad[0][1][0]] if bad else None}
    return Outcome(report, 0 if ok else 1)


# --------------------------------------------------------------- separator

def cmd_sep_balanced(a, inp) -> Outcome:
    G = load_graph(inp)
    t = _resolve_t(G, a.t, a.budget)
    sep = balanced_separator(G, t, Fraction(a.factor))
    cert = fmt.separation_cert(sep, G.n)
    report = {"t": t, "size": len(sep.C), "balance": cert["balance"], "method": sep.method,
              "valid": verify_separation(G, sep, Fraction(a.factor))}
    return Outcome(report, 0, fmt.dumps(cert))


def cmd_sep_left_right(a, inp) -> Outcome:
    G = load_graph(inp)
    if a.vertex is None:
        raise UsageError("separator left-right requires --vertex")
    t = _resolve_t(G, a.t, a.budget)
    res = left_right_separator(G, t, a.vertex)
    cert = fmt.left_right_cert(res.x, res.U, t, res.initial_length, res.bound)
    report = {"t": t, "x": res.x, "size": len(res.U), "bound": res.bound, "within_bound": res.within_bound,
              "initial_length": res.initial_length, "depth": res.depth}
    return Outcome(report, 0, fmt.dumps(cert))


def cmd_sep_treedecomp(a, inp) -> Outcome:
    G = load_graph(inp)
    t = None if a.t == "none" else _resolve_t(G, a.t, a.budget)
    td = tree_decomposition(G, t)
    return Outcome({"t": t, "bags": len(td.bags), "width": td.width}, 0, fmt.dumps(fmt.td_cert(td)))


def cmd_sep_verify(a, inp) -> Outcome:
    G = load_graph(inp)
    if not a.certificate:
        raise UsageError("separator verify requires --certificate FILE")
    cert = load_json(a.certificate)
    kind = cert["kind"]
    if kind == "separation":
        ok = verify_separation(G, fmt.separation_from_cert(cert), Fraction(a.factor))
        report = {"kind": kind, "valid": ok, "factor": a.factor, "size": len(cert["C"])}
    elif kind == "left_right":
        ok = verify_left_right(G, cert["x"], cert["U"])
        report = {"kind": kind, "valid": ok, "size": len(cert["U"])}
    elif kind == "tree_decomposition":
        err = check_tree_decomposition(G, fmt.td_from_cert(cert))
        ok = err is None
        report = {"kind": kind, "valid": ok, "error": err}
    else:
        raise UsageError(f"separator verify cannot check kind {kind!r}")
    return Outcome(report, 0 if ok else 1)


# --------------------------------------------------------------------- mis

def _mis_outcome(res, extra=None) -> Outcome:
    report = {"size": res.size, "set": list(res.set), **(extra or {})}
    return Outcome(report, 0, fmt.dumps(fmt.mis_cert(res)))


def cmd_mis_exact(a, inp) -> Outcome:
    G = load_graph(inp)
    return _mis_outcome(mis_exact(G, a.limit_n if a.limit_n is not None else EXACT_LIMIT))


def cmd_mis_branch(a, inp) -> Outcome:
    G = load_graph(inp)
    res = mis_branch(G, a.threshold, a.leaf)
    widths = res.leaf_widths
    return _mis_outcome(res, {"node_count": res.node_count, "leaves": len(widths),
                              "max_leaf_width": max(widths, default=-1)})


def cmd_mis_dp(a, inp) -> Outcome:
    G = load_graph(inp)
    td = fmt.td_from_cert(load_json(a.td)) if a.td else leaf_decomposition(G, a.leaf)
    res = mis_tw_dp(G, td)
    return _mis_outcome(res, {"width": td.width})


def cmd_mis_verify(a, inp) -> Outcome:
    G = load_graph(inp)
    if not a.certificate:
        raise UsageError("mis verify requires --certificate FILE")
    cert = load_json(a.certificate)
    S = cert["set"]
    ok = (all(0 <= v < G.n for v in S) and len(set(S)) == len(S) == cert["size"]
          and is_independent(G, S))
    report = {"valid": ok, "size": len(S)}
    if ok and G.n <= (a.limit_n if a.limit_n is not None else EXACT_LIMIT):
        best = mis_exact(G).size
        report["optimal"] = len(S) == best
        ok = report["optimal"]
    return Outcome(report, 0 if ok else 1)


# ------------------------------------------------------------------ parser

HANDLERS = {
    ("stw", "exact"): cmd_stw_exact,
    ("stw", "fixed-order"): cmd_stw_fixed,
    ("stw", "approx"): cmd_stw_approx,
    ("stw", "verify"): cmd_stw_verify,
    ("overlap", "build"): cmd_overlap_build,
    ("overlap", "rainbow"): cmd_overlap_rainbow,
    ("overlap", "clean-biclique"): cmd_overlap_clean,
    ("overlap", "ktt-check"): cmd_overlap_ktt,
    ("overlap", "verify"): cmd_overlap_verify,
    ("division", "wide"): cmd_division_wide,
    ("division", "diagonal-seq"): cmd_division_diagonal,
    ("division", "to-sequence"): cmd_division_to_sequence,
    ("division", "verify"): cmd_division_verify,
    ("separator", "balanced"): cmd_sep_balanced,
    ("separator", "left-right"): cmd_sep_left_right,
    ("separator", "verify"): cmd_sep_verify,
    ("separator", "treedecomp"): cmd_sep_treedecomp,
    ("mis", "exact"): cmd_mis_exact,
    ("mis", "branch"): cmd_mis_branch,
    ("mis", "dp"): cmd_mis_dp,
    ("mis", "verify"): cmd_mis_verify,
}
for _c in ("hk", "hk-bad", "a3", "grid", "flatten-grid", "random", "subdivide", "flatten"):
    HANDLERS[("gen", _c)] = cmd_gen


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global")
    g.add_argument("--input", action="append", help="input file ('-' for stdin); repeat for a batch")
    g.add_argument("--output", help="write the emitted instance or certificate here")
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.add_argument("--seed", type=int)
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--budget", type=int, default=DEFAULT_EDGE_BUDGET, help="edge budget for exact biclique search")
    g.add_argument("--limit-n", type=int, dest="limit_n", help="vertex cap for exhaustive oracles")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = _Parser(prog="stretchwidth", description="stretch-width toolkit")
    groups = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, names):
        gp = groups.add_parser(group)
        sp = gp.add_subparsers(dest="command", required=True, parser_class=_Parser)
        return {n: sp.add_parser(n, parents=[common]) for n in names}

    gen = sub("gen", ["hk", "hk-bad", "a3", "grid", "flatten-grid", "random", "subdivide", "flatten"])
    for name, p in gen.items():
        p.add_argument("--emit", choices=["graph", "matrix", "sequence"], default="graph")
        p.add_argument("--budget-vertices", type=int, default=200_000, dest="budget_vertices")
    for name in ("hk", "hk-bad", "grid", "flatten-grid"):
        gen[name].add_argument("--k", type=int, required=True)
    gen["a3"].add_argument("--b", type=int, default=3)
    gen["a3"].add_argument("--h", type=int, required=True)
    gen["random"].add_argument("--n", type=int, required=True)
    gen["random"].add_argument("--d", type=int, default=3)
    gen["random"].add_argument("--model", choices=["bounded-degree", "cograph"], default="bounded-degree")
    for name in ("subdivide", "flatten"):
        gen[name].add_argument("--edge", type=int, nargs=2, metavar=("U", "V"))
    gen["flatten"].add_argument("--pad", action="store_true", help="pad every stem to n*2^m subdivision vertices")

    stw = sub("stw", ["exact", "fixed-order", "approx", "verify"])
    stw["fixed-order"].add_argument("--cap", type=int)
    stw["approx"].add_argument("--k", type=int, required=True)
    stw["verify"].add_argument("--sequence")
    stw["verify"].add_argument("--claim", type=int)

    ov = sub("overlap", ["build", "rainbow", "clean-biclique", "ktt-check", "verify"])
    ov["rainbow"].add_argument("--vertex", type=int)
    ov["clean-biclique"].add_argument("--s", type=int, required=True)
    ov["ktt-check"].add_argument("--t")
    ov["verify"].add_argument("--certificate", required=True)

    dv = sub("division", ["wide", "diagonal-seq", "to-sequence", "verify"])
    dv["wide"].add_argument("--boundaries")
    dv["wide"].add_argument("--block", type=int)
    dv["wide"].add_argument("--k", type=int, required=True)
    dv["diagonal-seq"].add_argument("--q", type=int, required=True)
    dv["to-sequence"].add_argument("--chain")
    dv["to-sequence"].add_argument("--q", type=int, required=True)
    dv["verify"].add_argument("--chain", required=True)
    dv["verify"].add_argument("--q", type=int)
    dv["verify"].add_argument("--wide", type=int)

    sp = sub("separator", ["balanced", "left-right", "verify", "treedecomp"])
    for name in ("balanced", "left-right"):
        sp[name].add_argument("--t", default="auto")
    sp["treedecomp"].add_argument("--t", default="auto", help="integer, 'auto', or 'none' for min-degree only")
    sp["left-right"].add_argument("--vertex", type=int)
    for name in ("balanced", "verify"):
        sp[name].add_argument("--factor", default="1/12")
    sp["verify"].add_argument("--certificate")

    mis = sub("mis", ["exact", "branch", "dp", "verify"])
    mis["branch"].add_argument("--threshold", type=int)
    for name in ("branch", "dp"):
        mis[name].add_argument("--leaf", choices=["auto", "mindeg", "separator"], default="auto")
    mis["dp"].add_argument("--td")
    mis["verify"].add_argument("--certificate")
    return root


# ----------------------------------------------------------------- running

def render(report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if isinstance(report, list):
        return "".join(render(r, False) for r in report)
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, list) and all(isinstance(x, int) for x in v):
            v = " ".join(map(str, v))
        elif isinstance(v, (list, dict)):
            v = json.dumps(v, sort_keys=True, separators=(",", ":"))
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _run_one(a, inp) -> tuple[Outcome | None, str]:
    """Run one job; returns (outcome, error message)."""
    try:
        return HANDLERS[(a.group, a.command)](a, inp), ""
    except (ValueError, KeyError, OSError, AssertionError, json.JSONDecodeError) as e:
        return None, f"error: {e}"


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        with redirect_stderr(io.StringIO()):
            a = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=stderr)
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    inputs = a.input or [None]
    if len(inputs) > 1 and a.output:
        print("error: --output cannot be combined with several --input files", file=stderr)
        return 2
    if a.jobs < 1:
        print("error: --jobs must be at least 1", file=stderr)
        return 2
    if a.jobs > 1 and len(inputs) > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            results = list(ex.map(_run_one, [a] * len(inputs), inputs))
    else:
        results = [_run_one(a, inp) for inp in inputs]
    as_json = a.format == "json"
    code = 0
    reports = []
    for inp, (out, err) in zip(inputs, results):
        if out is None:
            print(err, file=stderr)
            code = 2
            continue
        code = max(code, out.code)
        if out.artifact is not None and a.output:
            Path(a.output).write_text(out.artifact)
        if a.group == "gen" and not a.output:
            stdout.write(out.artifact)
            continue
        reports.append(out.report if len(inputs) == 1 else {"input": inp, "exit": out.code, "report": out.report})
    if reports:
        stdout.write(render(reports[0] if len(inputs) == 1 else reports, as_json))
    return code


def main(argv=None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
