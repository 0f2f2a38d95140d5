"""Difference-Core Reduce and Peel.

A pool of reduce-and-peel solutions on the reduced instance marks the
vertices whose status never changes (the similar set ``U``).  Once few enough
vertices are similar, the remaining difference core is reduced, squared and
handed to an MWIS solver; a strictly better core solution replaces the
corresponding part of the incumbent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .graph import LinkGraph, Solution, WeightedGraph
from .mwis import MwisSolverSpec, SolverKind, solve_mwis
from .oracle import is_2packing
from .peel import DEFAULT_K, Action, Mode, PeelConfig, Rating, redw2pack
from .reductions import Reducer, ReducedInstance, reduce_exhaustively, restore
from .transform import lift, reduce_and_transform

_RATINGS = (Rating.WEIGHT_DIFF, Rating.WEIGHT, Rating.DEGREE)
CYCLE = 12


@dataclass(frozen=True)
class DrpParams:
    name: str = "custom"
    phi: float = 0.6
    phi_plus: float = 1.0
    phi_minus: float = 1.0
    t_H: float = 80.0
    core_solver: MwisSolverSpec | None = None
    time_limit: float = 60.0
    seed: int = 0
    k0: int = DEFAULT_K
    max_rounds: int | None = None
    max_peels: int | None = None

    def __post_init__(self):
        if self.core_solver is not None:
            if not 0 < self.phi < 1:
                raise ValueError("phi must lie in (0, 1)")
            if self.phi_plus < 1 or self.phi_minus > 1:
                raise ValueError("need phi_plus >= 1 and phi_minus <= 1")
            if self.t_H <= 0:
                raise ValueError("t_H must be positive")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")

    @property
    def uses_core(self) -> bool:
        return self.core_solver is not None

    def replace(self, **kw) -> DrpParams:
        d = dict(self.__dict__)
        d.update(kw)
        return DrpParams(**d)

    @classmethod
    def bchils(cls, **kw) -> DrpParams:
        base = cls("DRP-BChils", 0.6, 1.00, 1.00, 80.0, MwisSolverSpec(SolverKind.LOCAL_SEARCH))
        return base.replace(**kw)

    @classmethod
    def kamis(cls, **kw) -> DrpParams:
        base = cls("DRP-KaMIS", 0.8, 1.05, 0.95, 80.0, MwisSolverSpec(SolverKind.EXACT_BB))
        return base.replace(**kw)

    @classmethod
    def no_core(cls, **kw) -> DrpParams:
        base = cls("DRP-no-core", 0.6, 1.0, 1.0, 80.0, None)
        return base.replace(**kw)

    @classmethod
    def preset(cls, name: str, **kw) -> DrpParams:
        table = {"DRP-BChils": cls.bchils, "DRP-KaMIS": cls.kamis, "DRP-no-core": cls.no_core}
        if name not in table:
            raise ValueError(f"unknown preset {name!r}")
        return table[name](**kw)


def next_config(i: int, seed: int = 0, k0: int = DEFAULT_K) -> PeelConfig:
    """Peeling strategy for pool step ``i``.

    Ratings cycle in the order weight_diff, weight, degree; each is used
    adaptively and then non-adaptively, and weight_diff and weight also
    alternate exclusion with inclusion.  One full cycle has twelve steps, and
    every revisit raises k by one and draws a fresh p.
    """
    if i < 0:
        raise ValueError("step index must be non-negative")
    rating = _RATINGS[i % 3]
    r = i // 3
    mode = Mode.ADAPTIVE if r % 2 == 0 else Mode.NON_ADAPTIVE
    if rating is Rating.DEGREE:
        action = Action.EXCLUDE
    else:
        action = Action.EXCLUDE if (r // 2) % 2 == 0 else Action.INCLUDE
    k = k0 + i // CYCLE
    p = float(np.random.default_rng([seed, i]).uniform(0.5, 1.0))
    return PeelConfig(rating, mode, action, k=k, p=p, seed=seed * 1_000_003 + i)


def difference_set(pool) -> set[int]:
    """Vertices contained in some but not all solutions of ``pool``."""
    sets = [set(getattr(s, "vertices", s)) for s in pool]
    if not sets:
        return set()
    return set().union(*sets) - set.intersection(*sets)


def build_dcore(kk: ReducedInstance | LinkGraph, U: set[int], best: Solution | set[int] | None = None) -> LinkGraph:
    """Induced link-subgraph on ``V_K \\ U``.

    Conflicts running through removed vertices are kept as links.  When
    ``best`` is given, vertices in conflict with its members inside ``U`` are
    removed too, so any core solution can be embedded.
    """
    g = kk.graph if isinstance(kk, ReducedInstance) else kk
    core = g.copy()
    drop = {v for v in U if core.is_alive(v)}
    if best is not None:
        for v in set(best) & drop:
            drop |= core.two_neighborhood(v)
    red = Reducer(core)
    if drop:
        red._cut(drop)
    return core


def embed(kgraph: LinkGraph, best: Solution, U: set[int], s_core: Solution | set[int]) -> Solution:
    """Swap the difference part of ``best`` for ``s_core`` if that is strictly heavier."""
    core = set(s_core)
    outside = {v for v in best.vertices if v not in U}
    w = kgraph.weight
    if sum(w[v] for v in core) <= sum(w[v] for v in outside):
        return best
    merged = {v for v in best.vertices if v in U} | core
    if not is_2packing(kgraph, merged):
        raise AssertionError("embedding produced an infeasible solution")
    return Solution.of(merged, kgraph)


@dataclass
class DrpResult:
    solution: Solution
    kernel_solution: Solution
    offset: int
    trace: list[tuple[float, int]] = field(default_factory=list)
    pool_weights: list[int] = field(default_factory=list)
    phi_history: list[float] = field(default_factory=list)
    rounds: int = 0
    peels: int = 0
    time_to_best: float = 0.0
    kernel_size: int = 0
    kernel_edges: int = 0
    proven_optimal: bool = False


def drp(g: WeightedGraph | LinkGraph, params: DrpParams | None = None) -> DrpResult:
    """Run the difference-core metaheuristic and return a solution of ``g``.

    Stops at ``params.time_limit`` seconds, after ``max_rounds`` core solves
    or ``max_peels`` pool solutions, or once a core covering the whole reduced
    instance has been solved to proven optimality.
    """
    params = params or DrpParams.bchils()
    t0 = time.monotonic()
    deadline = t0 + params.time_limit
    lg = LinkGraph.from_graph(g) if isinstance(g, WeightedGraph) else g
    kk = reduce_exhaustively(lg, "strong", seed=params.seed)
    off = kk.offset
    K = kk.graph
    n_k = K.num_vertices
    result = DrpResult(Solution(frozenset(), 0), Solution(frozenset(), 0), off, kernel_size=n_k,
                       kernel_edges=K.num_edges)

    def elapsed() -> float:
        return time.monotonic() - t0

    if n_k == 0:
        result.solution = restore(kk, ())
        result.trace.append((elapsed(), off))
        result.proven_optimal = True
        return result

    VK = set(K.vertices())
    phi = params.phi
    result.phi_history.append(phi)

    def pool_solution(i: int) -> Solution | None:
        cfg = next_config(i, params.seed, params.k0)
        s = redw2pack(K, cfg, deadline)
        if s is None:
            return None
        result.peels += 1
        result.pool_weights.append(s.weight + off)
        return s

    def record(s: Solution) -> None:
        t = elapsed()
        result.trace.append((t, s.weight + off))
        result.time_to_best = t

    i = 0
    S = pool_solution(i)
    if S is None:
        # even one pass did not fit the budget; fall back to greedy
        S = restore(ReducedInstance(K.copy(), [], 0, K), ())
    record(S)
    U = set(VK)

    def out_of_budget() -> bool:
        if time.monotonic() > deadline:
            return True
        return params.max_peels is not None and result.peels >= params.max_peels

    while not out_of_budget():
        while (not params.uses_core or len(U) / n_k > phi) and not out_of_budget():
            i += 1
            S2 = pool_solution(i)
            if S2 is None:
                break
            if S2.weight > S.weight:
                S = S2
                U = set(VK)
                record(S)
            else:
                U &= VK - (S.vertices ^ S2.vertices)
        if not params.uses_core or out_of_budget():
            break
        D_size = n_k - len(U)
        budget = params.t_H * D_size / n_k
        budget = min(budget, max(deadline - time.monotonic(), 1e-3))
        s_h, optimal = _solve_core(K, U, S, params.core_solver, budget, params.seed + result.rounds)
        result.rounds += 1
        before = S
        if s_h is not None:
            S = embed(K, S, U, s_h)
        if S is not before:
            record(S)
            if params.phi_plus * phi < 1:
                phi = params.phi_plus * phi
            elif optimal:
                phi = params.phi_minus * len(U) / n_k
            if optimal and not U:
                result.proven_optimal = True
                break
        else:
            if optimal and not U:
                result.proven_optimal = True
                break
            U = set(VK)
            if params.phi_plus * phi < 1:
                phi = params.phi_plus * phi
        result.phi_history.append(phi)
        if params.max_rounds is not None and result.rounds >= params.max_rounds:
            break

    result.kernel_solution = S
    result.solution = restore(kk, S)
    return result


def _solve_core(K: LinkGraph, U: set[int], S: Solution, spec: MwisSolverSpec, budget: float,
                seed: int) -> tuple[Solution | None, bool]:
    core = build_dcore(K, U, S.vertices)
    if core.is_empty():
        return Solution(frozenset(), 0), True
    inst, ri = reduce_and_transform(core, "strong", seed=seed)
    res = solve_mwis(inst, spec.replace(time_limit=max(budget, 1e-3), seed=seed))
    s_h = lift(res.solution, ri, inst)
    return Solution.of(s_h.vertices, K), res.proven_optimal
