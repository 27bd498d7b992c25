import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import merge_sequences, ordered_graphs
from stretchwidth.generators import gen_abh, gen_hk, random_cograph
from stretchwidth.graph import (
    PartitionSequence, SequenceError, VertexPartition, build_ordered_graph, relabel,
)
from stretchwidth.stretch import (
    ComponentSizeError, bottleneck_lattice_search, exact_stw, exact_stw_fixed_order,
    order_from_component_sequence, partition_stretch, stretch_under_order, verify_sequence,
)
from test_graph import FIG1


def path(n):
    return build_ordered_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return build_ordered_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def edgeless(n):
    return build_ordered_graph(n, [])


def test_partition_stretch_examples():
    K2 = build_ordered_graph(2, [(0, 1)])
    assert partition_stretch(K2, VertexPartition.finest(2))[0] == 0
    P = VertexPartition.from_blocks(3, [{0, 2}, {1}])
    best, per = partition_stretch(edgeless(3), P)
    assert best == 1 and per == {0: 1, 1: 1}
    assert partition_stretch(path(3), P)[0] == 1


@settings(max_examples=80)
@given(ordered_graphs(min_n=1, max_n=7), st.data())
def test_partition_stretch_matches_definition(G, data):
    labels = data.draw(st.lists(st.integers(0, G.n - 1), min_size=G.n, max_size=G.n))
    groups = {}
    for v, l in enumerate(labels):
        groups.setdefault(l, set()).add(v)
    P = VertexPartition.from_blocks(G.n, groups.values())
    assert partition_stretch(G, P)[0] == oracles.stretch(G.n, G.edges, groups.values())


@settings(max_examples=80)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(ordered_graphs(min_n=n, max_n=n), merge_sequences(n))))
def test_verify_sequence_matches_definition(arg):
    G, merges = arg
    rep = verify_sequence(G, PartitionSequence(G.n, tuple(merges)))
    assert rep.max_stretch == oracles.chain_stretch(G.n, G.edges, merges)
    assert len(rep.per_step_stretch) == G.n
    assert rep.per_step_stretch[rep.worst_step] == rep.max_stretch


def test_verify_sequence_examples():
    seq = PartitionSequence(4, ((0, 1), (0, 2), (0, 3)))
    assert verify_sequence(edgeless(4), seq).max_stretch == 0
    w = gen_hk(5)
    assert verify_sequence(w.graph, w.witness_sequence).max_stretch <= 6
    w = gen_abh(3, 2)
    assert verify_sequence(w.graph, w.witness_sequence).max_stretch <= 9


def test_verify_sequence_errors():
    with pytest.raises(SequenceError) as exc:
        verify_sequence(path(3), PartitionSequence(3, ((0, 1), (1, 2))))
    assert exc.value.index == 1
    with pytest.raises(SequenceError):
        verify_sequence(path(3), PartitionSequence(3, ((0, 1),)))
    with pytest.raises(SequenceError):
        verify_sequence(path(3), PartitionSequence(4, ((0, 1), (0, 2), (0, 3))))


# identity-order values from the chain-enumeration oracle
FIXED = {
    "K2": (build_ordered_graph(2, [(0, 1)]), 0),
    "P3": (path(3), 1),
    "E4": (edgeless(4), 0),
    "P4": (path(4), 1),
    "C4": (build_ordered_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), 1),
    "K13": (build_ordered_graph(4, [(0, 1), (0, 2), (0, 3)]), 0),
    "C5": (cycle(5), 2),
    "crossing-pair": (build_ordered_graph(4, [(0, 2), (1, 3)]), 1),
    "overlap-example": (build_ordered_graph(7, [(0, 3), (0, 4), (1, 4), (2, 5), (3, 6), (4, 5)]), 2),
    "fig1": (build_ordered_graph(7, FIG1), 2),
}


@pytest.mark.parametrize("name", sorted(FIXED))
def test_fixed_order_frozen_values(name):
    G, value = FIXED[name]
    res = exact_stw_fixed_order(G)
    assert res.value == value
    assert verify_sequence(G, res.witness).max_stretch == value


# minimum over all orders, from the same oracle
EXACT = {"P3": (path(3), 0), "K3": (build_ordered_graph(3, [(0, 1), (1, 2), (0, 2)]), 0),
         "E5": (edgeless(5), 0), "P4": (path(4), 1), "C4": (FIXED["C4"][0], 0), "C5": (cycle(5), 2),
         "crossing-pair": (FIXED["crossing-pair"][0], 0)}


@pytest.mark.parametrize("name", sorted(EXACT))
def test_exact_frozen_values(name):
    G, value = EXACT[name]
    res = exact_stw(G)
    assert res.value == value
    H = relabel(G, res.best_order)
    assert verify_sequence(H, res.witness).max_stretch == value


def test_path3_depends_on_order():
    # identity order gives 1; putting the middle vertex last gives 0
    assert exact_stw_fixed_order(path(3)).value == 1
    assert exact_stw(path(3)).best_order == (0, 2, 1)


@settings(max_examples=40)
@given(ordered_graphs(max_n=5))
def test_fixed_order_matches_chain_enumeration(G):
    assert exact_stw_fixed_order(G).value == oracles.brute_stw_fixed_order(G.n, G.edges)


def test_fixed_order_cap():
    res = exact_stw_fixed_order(cycle(5), cap=1)
    assert res.cap_exceeded and res.value is None
    assert exact_stw_fixed_order(cycle(5), cap=2).value == 2


def test_limits():
    with pytest.raises(ValueError):
        exact_stw(edgeless(8))
    with pytest.raises(ValueError):
        exact_stw_fixed_order(edgeless(11))


def test_bottleneck_search_trivial():
    assert bottleneck_lattice_search(1, lambda s: 0).value == 0


def test_component_order_small():
    K2 = build_ordered_graph(2, [(0, 1)])
    seq = PartitionSequence(2, ((0, 1),))
    assert order_from_component_sequence(K2, seq, 1) == [0, 1]
    assert stretch_under_order(K2, seq, [0, 1]).max_stretch == 0


def test_component_order_on_contraction_example():
    G = build_ordered_graph(7, FIG1)
    seq = PartitionSequence(7, ((4, 5), (0, 3), (1, 4), (0, 6), (1, 2), (0, 1)))
    t = 1
    while True:
        try:
            order = order_from_component_sequence(G, seq, t)
            break
        except ComponentSizeError:
            t += 1
    assert t == 3
    assert stretch_under_order(G, seq, order).max_stretch <= t - 1


@settings(max_examples=30)
@given(st.integers(1, 24), st.integers(0, 10 ** 6))
def test_cograph_twin_sequence_gives_stretch_zero(n, seed):
    G, seq = random_cograph(n, seed)
    order = order_from_component_sequence(G, seq, 1)
    assert sorted(order) == list(range(n))
    assert stretch_under_order(G, seq, order).max_stretch == 0


def test_component_size_error():
    with pytest.raises(ComponentSizeError) as exc:
        order_from_component_sequence(path(3), PartitionSequence(3, ((0, 1), (0, 2))), 1)
    assert exc.value.size == 2
