import random

from hypothesis import given, settings, strategies as st

from helpers import graphs, link_graphs
from w2pack.generators import path, star
from w2pack.graph import LinkGraph, WeightedGraph
from w2pack.oracle import brute_mw2ps, brute_mwis, is_2packing, is_independent
from w2pack.transform import TRANSFORM_CONFIGS, PeakMemory, lift, reduce_and_transform, square, transform_stats


def test_square_p4():
    inst = square(path(4))
    assert sorted(inst.graph.edges()) == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    w, s = brute_mwis(inst.graph)
    assert w == 2 == brute_mw2ps(path(4))[0]
    assert s == {0, 3}


def test_square_triangle_and_link():
    tri = WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert sorted(square(tri).graph.edges()) == sorted(tri.edges())
    lg = LinkGraph.from_graph(WeightedGraph.from_edges(2, []))
    lg.add_link(0, 1)
    assert list(square(lg).graph.edges()) == [(0, 1)]


def test_reduce_and_transform_examples():
    inst, ri = reduce_and_transform(star(3), "strong")
    assert inst.n == 0 and ri.offset == 1 and ri.fully_reduced
    g = path(7)
    inst, ri = reduce_and_transform(g, "transform")
    assert ri.offset == 0
    assert sorted(inst.graph.edges()) == sorted(square(g).graph.edges())


def test_lift_examples():
    inst, ri = reduce_and_transform(star(3), "full")
    assert lift(set(), ri, inst).weight == ri.offset
    inst, ri = reduce_and_transform(path(4), "transform")
    assert lift({0, 3}, ri, inst).vertices == {0, 3}


def test_transform_stats():
    g = path(30)
    inst, ri = reduce_and_transform(g, "strong")
    st_ = transform_stats(g, inst, ri, "strong")
    assert st_.n_square <= st_.n_full_square and st_.m_square <= st_.m_full_square


def test_peak_memory():
    with PeakMemory("tracemalloc") as mem:
        blob = [0] * 100000
    assert mem.peak > 0 and blob
    with PeakMemory("off") as mem:
        pass
    assert mem.peak == 0


@settings(max_examples=150)
@given(link_graphs(n_max=10), st.randoms(use_true_random=False))
def test_independent_in_square_iff_2packing(lg, rnd):
    inst = square(lg)
    for _ in range(10):
        s = {i for i in range(inst.n) if rnd.random() < 0.3}
        assert is_independent(inst.graph, s) == is_2packing(lg, inst.to_origin(s))


@settings(max_examples=150)
@given(graphs(n_max=11), st.sampled_from(TRANSFORM_CONFIGS))
def test_transform_equivalence(g, config):
    inst, ri = reduce_and_transform(g, config, seed=1)
    w, s = brute_mwis(inst.graph)
    opt = brute_mw2ps(g)[0]
    assert w + ri.offset == opt
    sol = lift(s, ri, inst)
    assert is_2packing(g, sol.vertices) and sol.weight == opt
