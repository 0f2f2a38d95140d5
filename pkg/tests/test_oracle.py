from itertools import combinations

import pytest
from hypothesis import given, settings

from helpers import graphs, link_graphs
from w2pack.generators import cycle, path, star
from w2pack.graph import LinkGraph, WeightedGraph
from w2pack.oracle import OracleBudget, OracleBudgetExceeded, brute_mw2ps, brute_mwis, is_2packing, is_independent


def _conflict(lg: LinkGraph, a: int, b: int) -> bool:
    na, nb = set(lg.neighbors(a)), set(lg.neighbors(b))
    return b in na or lg.linked(a, b) or bool(na & nb)


def _naive_mw2ps(lg: LinkGraph) -> int:
    vs = lg.vertices()
    best = 0
    for r in range(len(vs) + 1):
        for sub in combinations(vs, r):
            if all(not _conflict(lg, a, b) for a, b in combinations(sub, 2)):
                best = max(best, sum(lg.weight[v] for v in sub))
    return best


def test_is_2packing_examples():
    p4 = path(4)
    assert is_2packing(p4, {0, 3})
    assert not is_2packing(p4, {0, 2})
    assert is_2packing(p4, set())


def test_is_2packing_respects_links():
    lg = LinkGraph.from_graph(WeightedGraph.from_edges(3, []))
    lg.add_link(0, 2)
    assert not is_2packing(lg, {0, 2})
    assert is_2packing(lg, {0, 1})


def test_brute_mw2ps_examples():
    assert brute_mw2ps(path(7))[0] == 3
    g = star(5).with_weights([2, 7, 1, 9, 3, 4])
    assert brute_mw2ps(g)[0] == 9


def test_brute_mwis_examples():
    assert brute_mwis(cycle(5))[0] == 2
    tri = WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], [3, 2, 1])
    assert brute_mwis(tri)[0] == 3
    assert brute_mwis(WeightedGraph.from_edges(0, []))[0] == 0


def test_budget():
    with pytest.raises(OracleBudgetExceeded):
        brute_mw2ps(path(20))
    assert brute_mw2ps(path(20), budget=OracleBudget(20))[0] == 7


@settings(max_examples=200)
@given(link_graphs(n_max=8))
def test_brute_mw2ps_matches_naive_enumeration(lg):
    w, s = brute_mw2ps(lg)
    assert w == _naive_mw2ps(lg)
    assert is_2packing(lg, s) and sum(lg.weight[v] for v in s) == w


@settings(max_examples=200)
@given(graphs(n_max=9))
def test_brute_mwis_matches_naive_enumeration(g):
    w, s = brute_mwis(g)
    assert is_independent(g, s) and g.weight_of(s) == w
    best = 0
    for r in range(g.n + 1):
        for sub in combinations(range(g.n), r):
            if is_independent(g, sub):
                best = max(best, g.weight_of(sub))
    assert w == best
