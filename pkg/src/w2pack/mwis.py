"""Maximum weight independent set solvers for transformed instances.

Three solvers share one entry point, :func:`solve_mwis`: a greedy
constructor, an iterated local search and an exact branch-and-bound.  They
take either a :class:`~w2pack.transform.MwisInstance` or a bare
:class:`~w2pack.graph.WeightedGraph`.
"""

from __future__ import annotations

import enum
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .graph import Solution, WeightedGraph
from .oracle import is_independent


class SolverKind(enum.Enum):
    GREEDY = "greedy"
    LOCAL_SEARCH = "local_search"
    EXACT_BB = "exact_bb"


@dataclass(frozen=True)
class MwisSolverSpec:
    kind: SolverKind = SolverKind.LOCAL_SEARCH
    time_limit: float = 1.0
    seed: int = 0
    exact_size_cap: int = 600
    max_iterations: int | None = None
    k_stall: int = 1000

    def __post_init__(self):
        if not self.time_limit > 0:
            raise ValueError("time_limit must be positive")
        if self.exact_size_cap < 1:
            raise ValueError("exact_size_cap must be at least 1")

    def replace(self, **kw) -> MwisSolverSpec:
        d = dict(self.__dict__)
        d.update(kw)
        return MwisSolverSpec(**d)


@dataclass
class MwisResult:
    solution: Solution
    proven_optimal: bool
    time_to_best: float


def _graph(inst) -> WeightedGraph:
    return getattr(inst, "graph", inst)


def greedy_mwis(inst, seed: int | None = None, start: Iterable[int] = ()) -> Solution:
    """Maximal independent set by decreasing w(v)/(deg(v)+1), ties by id.

    ``seed`` is accepted for interface symmetry; the order is deterministic.
    """
    g = _graph(inst)
    order = sorted(range(g.n), key=lambda v: (-Fraction(g.weights[v], g.degree(v) + 1), v))
    chosen = set(start)
    blocked = set()
    for v in chosen:
        blocked.update(g.adjacency[v])
    for v in order:
        if v in chosen or v in blocked:
            continue
        chosen.add(v)
        blocked.update(g.adjacency[v])
    return Solution.of(chosen, g)


class _LocalSearch:
    def __init__(self, g: WeightedGraph, start: set[int], rng: random.Random):
        self.g = g
        self.rng = rng
        self.w = g.weights
        self.nbr = [set(a) for a in g.adjacency]
        self.sol = set()
        self.tight = [0] * g.n
        self.weight = 0
        for v in start:
            self.insert(v)

    def insert(self, v: int) -> None:
        if v in self.sol:
            return
        self.sol.add(v)
        self.weight += self.w[v]
        for u in self.nbr[v]:
            self.tight[u] += 1

    def remove(self, v: int) -> None:
        self.sol.discard(v)
        self.weight -= self.w[v]
        for u in self.nbr[v]:
            self.tight[u] -= 1

    def force(self, v: int) -> None:
        if v in self.sol:
            return
        for u in [u for u in self.nbr[v] if u in self.sol]:
            self.remove(u)
        self.insert(v)

    def try_vertex(self, x: int) -> bool:
        """Try an improving move centred on ``x``; True if one was made."""
        w = self.w
        if x in self.sol:
            # (1,2): swap x for free-after-removal neighbors of larger weight
            cands = sorted((u for u in self.nbr[x] if self.tight[u] == 1), key=lambda u: (-w[u], u))
            if len(cands) < 2:
                return False
            picked, gain = [], 0
            for u in cands:
                if all(u not in self.nbr[p] for p in picked):
                    picked.append(u)
                    gain += w[u]
            if len(picked) >= 2 and gain > w[x]:
                self.remove(x)
                for u in picked:
                    self.insert(u)
                return True
            return False
        if self.tight[x] == 0:
            self.insert(x)
            return True
        # (omega,1): insert x, eject its solution neighbors
        lost = sum(w[u] for u in self.nbr[x] if u in self.sol)
        if w[x] > lost:
            self.force(x)
            return True
        return False

    def descend(self) -> None:
        improved = True
        while improved:
            improved = False
            for x in range(self.g.n):
                if self.try_vertex(x):
                    improved = True

    def snapshot(self) -> tuple[int, frozenset[int]]:
        return self.weight, frozenset(self.sol)

    def reset(self, s: Iterable[int]) -> None:
        for v in list(self.sol):
            self.remove(v)
        for v in s:
            self.insert(v)


def local_search_mwis(inst, start: Solution | Iterable[int] | None = None, spec: MwisSolverSpec | None = None,
                      checkpoint: Callable[[float, int], None] | None = None) -> MwisResult:
    """Iterated local search with (omega,1) and (1,2) swaps.

    The best weight seen never decreases; ``checkpoint(elapsed, best)`` is
    called each time it improves.  The run stops at ``spec.time_limit`` or
    after ``spec.max_iterations`` move evaluations.
    """
    spec = spec or MwisSolverSpec()
    g = _graph(inst)
    t0 = time.perf_counter()
    if start is None:
        start = greedy_mwis(g)
    s0 = set(start.vertices if isinstance(start, Solution) else start)
    if not is_independent(g, s0):
        raise ValueError("start solution is not independent")
    rng = random.Random(spec.seed)
    ls = _LocalSearch(g, s0, rng)
    best_w, best_s = ls.snapshot()
    t_best = 0.0
    if checkpoint:
        checkpoint(0.0, best_w)
    if g.n == 0:
        return MwisResult(Solution.of(best_s, g), False, 0.0)
    ls.descend()
    iters = 0
    stall = 0
    deadline = t0 + spec.time_limit
    while True:
        if ls.weight > best_w:
            best_w, best_s = ls.snapshot()
            t_best = time.perf_counter() - t0
            stall = 0
            if checkpoint:
                checkpoint(t_best, best_w)
        if spec.max_iterations is not None and iters >= spec.max_iterations:
            break
        if iters & 255 == 0 and time.perf_counter() > deadline:
            break
        iters += 1
        if ls.try_vertex(rng.randrange(g.n)):
            stall = 0 if ls.weight > best_w else stall + 1
            continue
        stall += 1
        if stall >= spec.k_stall:
            if ls.weight < best_w:
                ls.reset(best_s)
            ls.force(rng.randrange(g.n))
            ls.descend()
            stall = 0
    return MwisResult(Solution.of(best_s, g), False, t_best)


class _Timeout(Exception):
    pass


class _BranchAndBound:
    def __init__(self, g: WeightedGraph, deadline: float):
        self.n = g.n
        self.w = g.weights
        self.nb = [0] * g.n
        for v, row in enumerate(g.adjacency):
            m = 0
            for u in row:
                m |= 1 << u
            self.nb[v] = m
        self.deadline = deadline
        self.memo: dict[int, tuple[int, int]] = {0: (0, 0)}
        self.calls = 0

    def bits(self, mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def components(self, mask: int) -> list[int]:
        out = []
        nb = self.nb
        while mask:
            comp = mask & -mask
            frontier = comp
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                new = nb[low.bit_length() - 1] & mask & ~comp
                comp |= new
                frontier |= new
            out.append(comp)
            mask &= ~comp
        return out

    def upper_bound(self, mask: int) -> int:
        """Greedy clique cover: each clique contributes its heaviest member."""
        w, nb = self.w, self.nb
        cliques: list[int] = []
        total = 0
        for v in sorted(self.bits(mask), key=lambda x: -w[x]):
            for i, c in enumerate(cliques):
                if c & ~nb[v] == 0:
                    cliques[i] = c | (1 << v)
                    break
            else:
                cliques.append(1 << v)
                total += w[v]
        return total

    def solve(self, mask: int) -> tuple[int, int]:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        self.calls += 1
        if self.calls & 1023 == 0 and time.perf_counter() > self.deadline:
            raise _Timeout
        comps = self.components(mask)
        if len(comps) > 1:
            tw, ts = 0, 0
            for c in comps:
                cw, cs = self.solve(c)
                tw += cw
                ts |= cs
            res = (tw, ts)
        else:
            res = self._branch(mask)
        if len(self.memo) > 2_000_000:
            self.memo = {0: (0, 0)}
        self.memo[mask] = res
        return res

    def _branch(self, mask: int) -> tuple[int, int]:
        w, nb = self.w, self.nb
        pivot, pdeg = -1, -1
        for v in self.bits(mask):
            inner = nb[v] & mask
            d = inner.bit_count() if hasattr(inner, "bit_count") else bin(inner).count("1")
            if d == 0:
                rw, rs = self.solve(mask & ~(1 << v))
                return rw + w[v], rs | (1 << v)
            # simplicial vertex at least as heavy as its neighbors is always safe
            if w[v] >= max(w[u] for u in self.bits(inner)) and all(
                    (inner & ~nb[u] & ~(1 << u)) == 0 for u in self.bits(inner)):
                rw, rs = self.solve(mask & ~inner & ~(1 << v))
                return rw + w[v], rs | (1 << v)
            if d > pdeg or (d == pdeg and w[v] > w[pivot]):
                pivot, pdeg = v, d
        v = pivot
        bit = 1 << v
        iw, isel = self.solve(mask & ~nb[v] & ~bit)
        iw += w[v]
        rest = mask & ~bit
        if self.upper_bound(rest) <= iw:
            return iw, isel | bit
        ew, esel = self.solve(rest)
        if ew > iw:
            return ew, esel
        return iw, isel | bit


def exact_mwis_bb(inst, spec: MwisSolverSpec | None = None) -> MwisResult:
    """Exact MWIS by branch-and-bound with component splitting and memoization.

    Components larger than ``spec.exact_size_cap`` or unfinished at the time
    limit are completed greedily, in which case the result is not proven.
    """
    spec = spec or MwisSolverSpec(kind=SolverKind.EXACT_BB)
    g = _graph(inst)
    t0 = time.perf_counter()
    bb = _BranchAndBound(g, t0 + spec.time_limit)
    need = 4 * spec.exact_size_cap + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)
    chosen: set[int] = set()
    proven = True
    for comp in bb.components((1 << g.n) - 1):
        size = comp.bit_count() if hasattr(comp, "bit_count") else bin(comp).count("1")
        sel = None
        if size <= spec.exact_size_cap:
            try:
                sel = bb.solve(comp)[1]
            except _Timeout:
                pass
        if sel is None:
            proven = False
            verts = list(bb.bits(comp))
            sub, mapping = _induced(g, verts)
            sel_set = greedy_mwis(sub).vertices
            chosen.update(mapping[i] for i in sel_set)
        else:
            chosen.update(bb.bits(sel))
    return MwisResult(Solution.of(chosen, g), proven, time.perf_counter() - t0)


def _induced(g: WeightedGraph, verts: list[int]) -> tuple[WeightedGraph, list[int]]:
    index = {v: i for i, v in enumerate(verts)}
    adj = [sorted(index[u] for u in g.adjacency[v] if u in index) for v in verts]
    return WeightedGraph(adj, [g.weights[v] for v in verts]), verts


def solve_mwis(inst, spec: MwisSolverSpec, checkpoint: Callable[[float, int], None] | None = None) -> MwisResult:
    """Dispatch on ``spec.kind``; every result is checked for independence."""
    g = _graph(inst)
    t0 = time.perf_counter()
    if spec.kind is SolverKind.GREEDY:
        res = MwisResult(greedy_mwis(g, spec.seed), False, time.perf_counter() - t0)
    elif spec.kind is SolverKind.LOCAL_SEARCH:
        res = local_search_mwis(g, None, spec, checkpoint)
    else:
        res = exact_mwis_bb(g, spec)
    if not is_independent(g, res.solution.vertices):
        raise AssertionError("MWIS solver returned a dependent set")
    return res
