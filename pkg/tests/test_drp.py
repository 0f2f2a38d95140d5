import random

import pytest

from helpers import random_graph
from w2pack.drp import CYCLE, DrpParams, build_dcore, difference_set, drp, embed, next_config
from w2pack.generators import path, random_sparse, star
from w2pack.graph import LinkGraph, Solution
from w2pack.io import WeightSpec, generate_weights
from w2pack.mwis import MwisSolverSpec, SolverKind, exact_mwis_bb
from w2pack.oracle import brute_mw2ps, is_2packing
from w2pack.peel import Action, Mode, Rating, redw2pack
from w2pack.reductions import reduce_exhaustively
from w2pack.transform import lift, reduce_and_transform


def test_presets():
    b, k, n = DrpParams.bchils(), DrpParams.kamis(), DrpParams.no_core()
    assert (b.phi, b.phi_plus, b.phi_minus, b.t_H) == (0.6, 1.00, 1.00, 80)
    assert (k.phi, k.phi_plus, k.phi_minus, k.t_H) == (0.8, 1.05, 0.95, 80)
    assert not n.uses_core and b.uses_core and k.uses_core
    assert DrpParams.preset("DRP-KaMIS") == k
    with pytest.raises(ValueError):
        DrpParams.preset("DRP-x")
    with pytest.raises(ValueError):
        DrpParams.bchils(phi=1.5)


def test_difference_set():
    assert difference_set([{1, 4}, {1, 4}]) == set()
    assert difference_set([{1, 4, 7}, {2, 5}]) == {1, 2, 4, 5, 7}
    assert difference_set([{3}]) == set()
    assert difference_set([]) == set()


def test_build_dcore():
    lg = LinkGraph.from_graph(path(8))
    U = set(range(8)) - difference_set([{1, 4, 7}, {2, 5}])
    core = build_dcore(lg, U)
    assert core.vertices() == [1, 2, 4, 5, 7]
    # 2-4 share the removed vertex 3, so they stay in conflict through a link
    assert core.linked(2, 4) and core.adjacent(1, 2)
    assert build_dcore(lg, set(range(8))).is_empty()


def test_next_config_schedule():
    c0 = next_config(0)
    assert (c0.rating, c0.mode, c0.action) == (Rating.WEIGHT_DIFF, Mode.ADAPTIVE, Action.EXCLUDE)
    for i in range(3 * CYCLE):
        a, b = next_config(i), next_config(i + CYCLE)
        assert (a.rating, a.mode, a.action) == (b.rating, b.mode, b.action)
        assert b.k == a.k + 1
        assert 0.5 <= a.p <= 1.0
        if a.rating is Rating.DEGREE:
            assert a.action is Action.EXCLUDE
    tuples = {(c.rating, c.mode, c.action) for c in map(next_config, range(CYCLE))}
    assert len(tuples) == 10
    assert next_config(5, seed=2) == next_config(5, seed=2)
    with pytest.raises(ValueError):
        next_config(-1)


def test_embed_examples():
    lg = LinkGraph.from_graph(path(8))
    best = Solution.of({0, 3, 6}, lg)
    U = {0, 1, 2}
    part = {v for v in best.vertices if v not in U}
    assert embed(lg, best, U, part) is best
    assert embed(lg, best, set(range(8)), set()) is best


def test_embed_randomized_feasible():
    rng = random.Random(11)
    for t in range(40):
        g = random_graph(rng, n_max=50, n_min=10, density=(0.03, 0.12))
        kk = reduce_exhaustively(LinkGraph.from_graph(g), "strong", seed=t)
        K = kk.graph
        if K.is_empty():
            continue
        pool = [redw2pack(K, next_config(i, seed=t)) for i in range(3)]
        best = max(pool, key=lambda s: s.weight)
        U = set(K.vertices()) - difference_set(pool)
        core = build_dcore(K, U, best.vertices)
        inst, ri = reduce_and_transform(core, "strong")
        s_core = lift(exact_mwis_bb(inst).solution, ri, inst)
        new = embed(K, best, U, s_core.vertices)
        assert is_2packing(K, new.vertices) and new.weight >= best.weight


def test_drp_fully_reducible():
    res = drp(star(5), DrpParams.kamis(time_limit=5))
    assert res.solution.weight == 1 and res.proven_optimal
    assert res.peels == 0 and res.rounds == 0


def test_drp_no_core_is_best_of_pool():
    g = generate_weights(random_sparse(400, 900, seed=3), WeightSpec("uniform", 3))
    res = drp(g, DrpParams.no_core(time_limit=30, max_peels=5))
    assert res.rounds == 0 and res.peels == 5
    assert res.solution.weight >= max(res.pool_weights)
    assert is_2packing(g, res.solution.vertices)


def test_drp_trace_monotone_and_deterministic():
    g = generate_weights(random_sparse(300, 700, seed=5), WeightSpec("uniform", 5))
    params = DrpParams.bchils(time_limit=30, max_rounds=3, max_peels=15, t_H=1)
    a, b = drp(g, params), drp(g, params)
    ws = [w for _, w in a.trace]
    assert ws == sorted(ws) and ws[-1] <= a.solution.weight
    assert a.solution.weight >= max(a.pool_weights)
    assert a.pool_weights == b.pool_weights


def test_drp_kamis_matches_optimum_small():
    rng = random.Random(4)
    for t in range(6):
        g = random_graph(rng, n_max=60, n_min=30, w_max=200, density=(0.04, 0.1))
        inst, ri = reduce_and_transform(g, "strong")
        best = lift(exact_mwis_bb(inst).solution, ri, inst).weight
        res = drp(g, DrpParams.kamis(time_limit=60, seed=t, max_rounds=20))
        assert res.solution.weight == best
        if g.n <= 16:
            assert best == brute_mw2ps(g)[0]
