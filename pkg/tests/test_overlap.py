import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import ordered_graphs
from stretchwidth.generators import gen_hk_bad_order, hk_bad_order_labels, iterated_subdivision, random_bounded_degree
from stretchwidth.graph import build_ordered_graph
from stretchwidth.overlap import (
    certified_t, check_clean_biclique, clean_biclique_at_least, crosses, is_rainbow, ktt_upper_check,
    max_crossing_chain_over, max_rainbow_over, nested_in, overlap_graph, smallest_absent_clean_biclique,
)

FIG5 = build_ordered_graph(7, [(0, 3), (0, 4), (1, 4), (2, 5), (3, 6), (4, 5)])
NESTED = build_ordered_graph(7, [(0, 6), (1, 5), (2, 4)])


def test_overlap_graph_figure():
    Ov = overlap_graph(FIG5)
    assert len(Ov.crossings) == 7
    assert [FIG5.edges[i] for i in Ov.isolated()] == [(4, 5)]


def test_overlap_graph_no_crossings():
    star = build_ordered_graph(6, [(0, i) for i in range(1, 6)])
    assert not overlap_graph(star).crossings
    assert not overlap_graph(NESTED).crossings


@settings(max_examples=100)
@given(ordered_graphs(max_n=8))
def test_overlap_graph_matches_definition(G):
    Ov = overlap_graph(G)
    assert set(Ov.crossings) == oracles.crossing_pairs(list(G.edges))


def test_rainbow_examples():
    R = max_rainbow_over(NESTED, 3)
    assert len(R) == 3 and R.edges == ((0, 6), (1, 5), (2, 4))
    G = build_ordered_graph(5, [(0, 3), (1, 4)])
    assert len(max_rainbow_over(G, 2)) == 1
    assert len(max_rainbow_over(build_ordered_graph(4, []), 2)) == 0


def _longest_rainbow_brute(G, v):
    over = [e for e in G.edges if e[0] < v < e[1]]
    best = 0
    for mask in range(1 << len(over)):
        S = [over[i] for i in range(len(over)) if mask >> i & 1]
        if len(S) > best and all(not crosses(a, b) and (nested_in(a, b) or nested_in(b, a))
                                 for i, a in enumerate(S) for b in S[i + 1:]):
            best = len(S)
    return best


@settings(max_examples=100)
@given(ordered_graphs(min_n=3, max_n=8), st.data())
def test_rainbow_is_maximum_and_independent(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    R = max_rainbow_over(G, v)
    assert is_rainbow(list(R.edges))
    assert all(e[0] < v < e[1] for e in R.edges)
    ids = set(R.chain)
    assert not any(a in ids and b in ids for a, b in overlap_graph(G).crossings)
    assert len(R) == _longest_rainbow_brute(G, v)


def test_crossing_chain_over():
    G = build_ordered_graph(7, [(0, 4), (1, 5), (2, 6)])
    assert max_crossing_chain_over(G, 3) == 3
    assert max_crossing_chain_over(NESTED, 3) == 1


def test_clean_biclique_bad_order():
    G = gen_hk_bad_order(4)
    res = clean_biclique_at_least(G, 2)
    assert res.found and check_clean_biclique(G, res.X, res.Y)
    lab = hk_bad_order_labels(4)
    a_b = {tuple(sorted((lab[f"a{i}"], lab[f"b{i}"]))) for i in range(1, 5)}
    b_c = {tuple(sorted((lab[f"b{i}"], lab[f"c{i}"]))) for i in range(1, 5)}
    # a_i b_i crosses b_j c_j exactly when j > i
    ai = {e: i for i in range(1, 5) for e in [tuple(sorted((lab[f"a{i}"], lab[f"b{i}"])))]}
    bj = {e: j for j in range(1, 5) for e in [tuple(sorted((lab[f"b{j}"], lab[f"c{j}"])))]}
    for e in a_b:
        for f in b_c:
            assert crosses(e, f) == (bj[f] > ai[e])
    assert check_clean_biclique(G, [G.edges.index(e) for e in sorted(a_b)[:2]],
                                [G.edges.index(f) for f in b_c if bj[f] >= 3])


@pytest.mark.parametrize("s", [2, 3, 4])
def test_bad_order_has_clean_kss(s):
    G = gen_hk_bad_order(2 * s)
    assert clean_biclique_at_least(G, s).found


def test_clean_biclique_absent_cases():
    assert clean_biclique_at_least(NESTED, 1).status == "absent"
    assert clean_biclique_at_least(FIG5, 2).found == oracles.clean_biclique_brute(FIG5.edges, 2)


@settings(max_examples=80)
@given(ordered_graphs(min_n=2, max_n=8), st.integers(1, 3))
def test_clean_biclique_matches_brute_force(G, s):
    res = clean_biclique_at_least(G, s)
    assert res.found == oracles.clean_biclique_brute(G.edges, s)
    if res.found:
        assert len(res.X) == len(res.Y) == s and check_clean_biclique(G, res.X, res.Y)


def test_node_cap_gives_unresolved():
    G = random_bounded_degree(40, 6, 1)
    res = clean_biclique_at_least(G, 6, budget=10, node_cap=5)
    assert res.status == "unresolved" and not res.exact
    assert clean_biclique_at_least(G, 6).status == "found"
    assert ktt_upper_check(G, 12, budget=10, node_cap=5).status == "unresolved"


def test_ktt_certificates():
    cert = ktt_upper_check(NESTED, 2)
    assert cert.status == "certified" and cert.implied_t == 2
    assert ktt_upper_check(gen_hk_bad_order(4), 4).status == "refuted"
    with pytest.raises(ValueError):
        ktt_upper_check(NESTED, 0)


def test_cubic_subdivision_certificate():
    K4 = build_ordered_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    H = iterated_subdivision(K4)
    assert ktt_upper_check(H, 8, budget=10 ** 6).status == "certified"


def test_certified_t():
    assert smallest_absent_clean_biclique(NESTED) == 1
    assert certified_t(NESTED) == 2
    assert certified_t(FIG5) == 2 * smallest_absent_clean_biclique(FIG5)
