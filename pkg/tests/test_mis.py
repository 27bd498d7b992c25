import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import ordered_graphs
from stretchwidth.generators import random_bounded_degree
from stretchwidth.graph import build_ordered_graph
from stretchwidth.mis import (
    default_threshold, is_independent, leaf_decomposition, mis_branch, mis_exact, mis_tw_dp,
)
from stretchwidth.separator import TreeDecomposition


def cycle(n):
    return build_ordered_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def path(n):
    return build_ordered_graph(n, [(i, i + 1) for i in range(n - 1)])


STAR9 = build_ordered_graph(10, [(0, i) for i in range(1, 10)])


def test_exact_examples():
    assert mis_exact(path(2)).size == 1
    assert mis_exact(cycle(5)).size == 2
    assert mis_exact(path(6)).size == 3
    with pytest.raises(ValueError):
        mis_exact(path(30))


def test_branch_examples():
    res = mis_branch(STAR9, threshold=2)
    assert res.size == 9 and res.node_count == 2
    res = mis_branch(cycle(5), threshold=10)
    assert res.size == 2 and res.node_count == 0 and len(res.leaf_widths) == 1


def test_dp_examples():
    P4 = path(4)
    td = TreeDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})), (-1, 0, 1))
    assert mis_tw_dp(P4, td).size == 2
    C6 = cycle(6)
    td = TreeDecomposition((frozenset({0, 1, 5}), frozenset({1, 2, 5}), frozenset({2, 4, 5}), frozenset({2, 3, 4})),
                           (-1, 0, 1, 2))
    assert td.width == 2 and mis_tw_dp(C6, td).size == 3


def test_dp_rejects_bad_decomposition():
    td = TreeDecomposition((frozenset({0, 1}), frozenset({2, 3})), (-1, 0))
    with pytest.raises(ValueError):
        mis_tw_dp(path(4), td)


@settings(max_examples=80)
@given(ordered_graphs(max_n=9))
def test_exact_matches_brute_force(G):
    res = mis_exact(G)
    assert res.size == oracles.mis_brute(G.n, G.edges)
    assert is_independent(G, res.set)


@settings(max_examples=40)
@given(st.integers(1, 18), st.integers(1, 4), st.integers(0, 10 ** 6), st.sampled_from(["auto", "mindeg"]))
def test_branch_and_dp_match_exact(n, d, seed, leaf):
    G = random_bounded_degree(n, d, seed)
    best = mis_exact(G).size
    res = mis_branch(G, leaf=leaf)
    assert res.size == best and is_independent(G, res.set)
    assert mis_tw_dp(G, leaf_decomposition(G, leaf)).size == best
    assert mis_branch(G, threshold=1).size == best


def test_threshold_default():
    assert default_threshold(1) == 1
    assert default_threshold(32) == 2
    assert default_threshold(243) == 3
