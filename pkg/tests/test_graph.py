import random
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from helpers import link_graphs, random_link_graph
from w2pack.generators import path, star
from w2pack.graph import GraphError, LinkGraph, WeightedGraph


def triangle(weights=(3, 2, 1)):
    return LinkGraph.from_graph(WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], weights))


def test_from_graph_p3():
    lg = LinkGraph.from_graph(path(3))
    assert [lg.degree(v) for v in range(3)] == [1, 2, 1]
    assert [lg.neighbor_weight(v) for v in range(3)] == [1, 2, 1]
    assert lg.num_links == 0


def test_empty_graph():
    lg = LinkGraph.from_graph(WeightedGraph.from_edges(0, []))
    assert lg.is_empty() and lg.num_vertices == 0


def test_triangle_max_neighbor_weight():
    lg = triangle()
    assert [lg.max_neighbor_weight(v) for v in range(3)] == [2, 3, 3]


def test_materialize_links_examples():
    lg = LinkGraph.from_graph(path(4))
    assert lg.materialize_links(0) == {2}
    s = LinkGraph.from_graph(star(3))
    assert s.materialize_links(0) == set()
    assert s.materialize_links(1) == {2, 3}


def test_materialize_links_dead_vertex():
    lg = LinkGraph.from_graph(path(4))
    lg.hide_vertex(1)
    with pytest.raises(GraphError):
        lg.materialize_links(1)


def test_add_link():
    lg = LinkGraph.from_graph(WeightedGraph.from_edges(2, []))
    lg.add_link(0, 1)
    lg.add_link(0, 1)
    assert lg.num_links == 1
    assert lg.materialize_links(0) == {1}
    assert lg.conflict(0, 1)
    with pytest.raises(GraphError):
        LinkGraph.from_graph(path(2)).add_link(0, 1)


def test_hide_vertex_examples():
    lg = triangle()
    lg.hide_vertex(0)
    assert [lg.degree(v) for v in (1, 2)] == [1, 1]
    assert [lg.max_neighbor_weight(v) for v in (1, 2)] == [1, 2]

    iso = LinkGraph.from_graph(WeightedGraph.from_edges(3, [(0, 1)]))
    before = iso.structure()
    iso.hide_vertex(2)
    after = iso.structure()
    assert before[1][:2] == after[1] and after[0] == (0, 1)

    p4 = LinkGraph.from_graph(path(4))
    p4.add_link(0, 2)
    p4.hide_vertex(1)
    assert p4.degree(0) == 0
    assert p4.link_partners(0) == [2]
    p4.hide_vertex(2)
    assert p4.link_partners(0) == [] and p4.num_links == 0


def test_bulk_hide_examples():
    lg = LinkGraph.from_graph(star(3))
    before = lg.structure()
    lg.bulk_hide(set())
    assert lg.structure() == before
    lg.bulk_hide({1, 2, 3})
    assert lg.vertices() == [0] and lg.degree(0) == 0


def test_bulk_hide_dead_member():
    lg = LinkGraph.from_graph(path(3))
    lg.hide_vertex(0)
    with pytest.raises(GraphError):
        lg.bulk_hide({0, 1})


def test_audit_detects_corruption():
    lg = triangle()
    assert lg.audit_aggregates() == []
    lg._sumw[1] += 1
    bad = lg.audit_aggregates()
    assert len(bad) == 1 and bad[0].vertex == 1


def test_audit_detects_stale_link_weight():
    lg = LinkGraph.from_graph(path(4))
    assert lg.link_weight(0) == lg.weight[2]
    lg._wL[0] += 1
    bad = lg.audit_aggregates()
    assert [b.vertex for b in bad] == [0]


def _link_distance_two(lg: LinkGraph, s: int) -> set[int]:
    """Vertices at distance exactly 2, counting a link as length 2 (BFS on doubled links)."""
    dist = {s: 0}
    q = deque([s])
    while q:
        v = q.popleft()
        if dist[v] >= 2:
            continue
        for u in lg.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
        if dist[v] == 0:
            for u in lg.link_partners(v):
                dist.setdefault(u, 2)
    return {u for u, d in dist.items() if d == 2}


def test_random_operations_keep_aggregates():
    rng = random.Random(5)
    for trial in range(40):
        lg = random_link_graph(rng, n_max=12, links=2)
        for _ in range(100):
            vs = lg.vertices()
            if len(vs) < 2:
                break
            r = rng.random()
            if r < 0.3:
                lg.hide_vertex(rng.choice(vs))
            elif r < 0.7:
                a, b = rng.sample(vs, 2)
                if not lg.adjacent(a, b):
                    lg.add_link(a, b)
            else:
                lg.materialize_links(rng.choice(vs))
            assert lg.audit_aggregates() == []
        for v in lg.vertices():
            assert lg.materialize_links(v) == _link_distance_two(lg, v)


@settings(max_examples=150)
@given(link_graphs(), st.randoms(use_true_random=False))
def test_link_neighborhood_is_distance_two(lg, rnd):
    for v in lg.vertices():
        if rnd.random() < 0.5:
            lg.materialize_links(v)
    victims = [v for v in lg.vertices() if rnd.random() < 0.3]
    for v in victims:
        lg.hide_vertex(v)
    for v in lg.vertices():
        L = lg.materialize_links(v)
        assert L == _link_distance_two(lg, v)
        assert not (L & set(lg.neighbors(v))) and v not in L
    for a, b in lg.links():
        assert not lg.adjacent(a, b) and lg.linked(b, a)
    assert lg.audit_aggregates() == []


@settings(max_examples=150)
@given(link_graphs(), st.randoms(use_true_random=False))
def test_bulk_hide_equals_sequential_hides(lg, rnd):
    for v in lg.vertices():
        lg.materialize_links(v)
    X = [v for v in lg.vertices() if rnd.random() < 0.4]
    a, b = lg.copy(), lg.copy()
    a.bulk_hide(set(X))
    order = list(X)
    rnd.shuffle(order)
    for v in order:
        b.hide_vertex(v)
    assert a.structure() == b.structure()
    for v in a.vertices():
        assert a.materialize_links(v) == b.materialize_links(v)
