"""Small fixed instance corpus used by the round-trip suite and the scripts."""
from __future__ import annotations

from pathlib import Path

from .formats import emit_graph, emit_matrix
from .generators import (
    gen_abh, gen_flattened_grid, gen_grid, gen_hk, gen_hk_bad_order, random_bounded_degree, random_cograph,
)
from .graph import OrderedGraph, build_ordered_graph
from .matrix import adjacency_matrix

FIG5_EDGES = [(0, 3), (0, 4), (1, 4), (2, 5), (3, 6), (4, 5)]


def path(n: int) -> OrderedGraph:
    return build_ordered_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> OrderedGraph:
    return build_ordered_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star(leaves: int) -> OrderedGraph:
    return build_ordered_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def corpus_graphs() -> dict[str, OrderedGraph]:
    out = {
        "p3": path(3),
        "p6": path(6),
        "c5": cycle(5),
        "c40": cycle(40),
        "star9": star(9),
        "fig5": build_ordered_graph(7, FIG5_EDGES),
    }
    for k in (1, 2, 3):
        out[f"hk{k}"] = gen_hk(k).graph
    for k in (4, 6):
        out[f"hkbad{k}"] = gen_hk_bad_order(k)
    for h in (1, 2, 3):
        out[f"a3h{h}"] = gen_abh(3, h).graph
    out["grid3"] = gen_grid(3)
    out["fgrid2"] = gen_flattened_grid(2)
    out["fgrid3"] = gen_flattened_grid(3)
    for seed in (1, 2, 3):
        out[f"rand12d3s{seed}"] = random_bounded_degree(12, 3, seed)
    for seed in (1, 2):
        out[f"cograph16s{seed}"] = random_cograph(16, seed)[0]
    return out


def corpus_matrices() -> dict[str, object]:
    return {
        "p3": adjacency_matrix(path(3)),
        "hk2": adjacency_matrix(gen_hk(2).graph),
        "a3h3": adjacency_matrix(gen_abh(3, 3).graph),
        "rand12d3s1": adjacency_matrix(random_bounded_degree(12, 3, 1)),
    }


def write_corpus(directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name, G in corpus_graphs().items():
        p = d / f"{name}.graph"
        p.write_text(emit_graph(G))
        written.append(p)
    for name, M in corpus_matrices().items():
        p = d / f"{name}.matrix"
        p.write_text(emit_matrix(M))
        written.append(p)
    return written
