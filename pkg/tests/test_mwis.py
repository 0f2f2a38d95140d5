import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import graphs
from w2pack.generators import cycle, grid, path, random_sparse
from w2pack.graph import WeightedGraph
from w2pack.io import WeightSpec, generate_weights
from w2pack.mwis import MwisSolverSpec, SolverKind, exact_mwis_bb, greedy_mwis, local_search_mwis, solve_mwis
from w2pack.oracle import brute_mwis, is_independent
from w2pack.transform import square


def is_maximal(g, s):
    s = set(s)
    return all(v in s or any(u in s for u in g.adjacency[v]) for v in range(g.n))


def test_greedy_examples():
    assert greedy_mwis(WeightedGraph.from_edges(0, [])).weight == 0
    p3 = path(3).with_weights([1, 5, 1])
    assert greedy_mwis(p3).vertices == {1}
    s = greedy_mwis(path(4))
    assert is_maximal(path(4), s.vertices) and is_independent(path(4), s.vertices)


def test_exact_examples():
    tri = WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], [3, 2, 1])
    res = exact_mwis_bb(tri)
    assert res.solution.weight == 3 and res.proven_optimal
    res = exact_mwis_bb(square(path(4)).graph)
    assert res.solution.weight == 2


def test_local_search_from_optimum_keeps_weight():
    g = cycle(9).with_weights([3, 1, 4, 1, 5, 9, 2, 6, 5])
    w, s = brute_mwis(g)
    res = local_search_mwis(g, s, MwisSolverSpec(time_limit=0.2, seed=3))
    assert res.solution.weight == w


def test_local_search_rejects_dependent_start():
    with pytest.raises(ValueError):
        local_search_mwis(path(3), {0, 1})


def test_local_search_best_is_monotone():
    g = generate_weights(random_sparse(300, 900, seed=4), WeightSpec("uniform", 4))
    seen = []
    res = local_search_mwis(g, None, MwisSolverSpec(time_limit=0.5, seed=1), lambda t, w: seen.append((t, w)))
    assert seen == sorted(seen) and seen[-1][1] == res.solution.weight
    assert res.solution.weight >= greedy_mwis(g).weight
    assert is_independent(g, res.solution.vertices)


def test_local_search_is_seed_deterministic():
    g = generate_weights(grid(8, 8), WeightSpec("uniform", 2))
    spec = MwisSolverSpec(time_limit=30, seed=7, max_iterations=3000)
    a = local_search_mwis(g, None, spec).solution
    b = local_search_mwis(g, None, spec).solution
    assert a == b


def test_exact_timeout_falls_back_to_greedy():
    g = generate_weights(random_sparse(120, 600, seed=1), WeightSpec("uniform", 1))
    res = exact_mwis_bb(g, MwisSolverSpec(SolverKind.EXACT_BB, time_limit=0.01))
    assert is_independent(g, res.solution.vertices)
    capped = exact_mwis_bb(g, MwisSolverSpec(SolverKind.EXACT_BB, exact_size_cap=5))
    assert not capped.proven_optimal and is_maximal(g, capped.solution.vertices)


def test_spec_validation():
    with pytest.raises(ValueError):
        MwisSolverSpec(time_limit=0)


@settings(max_examples=200)
@given(graphs(n_max=14))
def test_exact_matches_oracle(g):
    res = exact_mwis_bb(g)
    assert res.proven_optimal
    assert res.solution.weight == brute_mwis(g)[0]


@settings(max_examples=60)
@given(graphs(n_max=14), st.sampled_from(list(SolverKind)))
def test_solve_mwis_dispatch(g, kind):
    res = solve_mwis(g, MwisSolverSpec(kind, time_limit=0.05, seed=0))
    assert is_independent(g, res.solution.vertices)
    assert res.solution.weight <= brute_mwis(g)[0]
    assert is_maximal(g, res.solution.vertices)
