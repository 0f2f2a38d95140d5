"""Brute-force reference solvers and feasibility checks.

Everything here is deliberately simple and independent of the reduction and
transformation machinery, so it can serve as a test oracle for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .graph import LinkGraph, WeightedGraph

AnyGraph = Union[WeightedGraph, LinkGraph]


class OracleBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 16

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be positive")


IN_REDUCTION_BUDGET = OracleBudget(12)


def _budget(budget) -> int:
    if budget is None:
        return OracleBudget().max_vertices
    if isinstance(budget, OracleBudget):
        return budget.max_vertices
    return int(budget)


def is_2packing(g: AnyGraph, s: Iterable[int]) -> bool:
    """True iff the vertices of ``s`` are pairwise at distance at least 3.

    For a link-graph, linked pairs count as distance 2 and only live vertices
    may be members.  Uses the fact that a set is a 2-packing set exactly when
    every closed neighborhood contains at most one member.
    """
    members = set(s)
    if isinstance(g, LinkGraph):
        for v in members:
            if not g.is_alive(v):
                return False
            if not g.lnk[v].isdisjoint(members):
                return False
        adj = g.adj
        verts: Iterable[int] = g.vertices()
    else:
        for v in members:
            if not 0 <= v < g.n:
                return False
        adj = g.adjacency
        verts = range(g.n)
    for x in verts:
        count = 1 if x in members else 0
        for u in adj[x]:
            if u in members:
                count += 1
                if count > 1:
                    return False
    return True


def is_independent(g: WeightedGraph, s: Iterable[int]) -> bool:
    members = set(s)
    if any(not 0 <= v < g.n for v in members):
        return False
    return all(members.isdisjoint(g.adjacency[v]) for v in members)


def _pair_conflicts(g: AnyGraph, verts: list[int]) -> list[set[int]]:
    """For each listed vertex, the listed vertices within distance <= 2 in ``g``."""
    if isinstance(g, LinkGraph):
        nb = g.adj
        ln = g.lnk
    else:
        nb = g.adjacency
        ln = None
    out = []
    for a in verts:
        conf = set()
        na = set(nb[a])
        for b in verts:
            if b == a:
                continue
            if b in na or (ln is not None and b in ln[a]) or not na.isdisjoint(nb[b]):
                conf.add(b)
        out.append(conf)
    return out


def _pair_conflicts_induced(lg: LinkGraph, verts: list[int]) -> list[set[int]]:
    vs = set(verts)
    out = []
    for a in verts:
        na = lg.adj[a] & vs
        conf = set()
        for b in verts:
            if b == a:
                continue
            if b in na or b in lg.lnk[a] or not na.isdisjoint(lg.adj[b] & vs):
                conf.add(b)
        out.append(conf)
    return out


def _enumerate(weights: list[int], conflicts: list[set[int]]) -> tuple[int, list[int]]:
    """Exact max-weight set with no conflicting pair, by memoised branching.

    Indices are processed heaviest first; the memo is keyed on the bitmask
    of still-available indices.
    """
    k = len(weights)
    order = sorted(range(k), key=lambda i: (-weights[i], i))
    pos = {v: p for p, v in enumerate(order)}
    w = [weights[i] for i in order]
    cmask = [0] * k
    for p, i in enumerate(order):
        m = 0
        for j in conflicts[i]:
            m |= 1 << pos[j]
        cmask[p] = m
    memo: dict[int, tuple[int, int]] = {0: (0, 0)}

    def best(mask: int) -> tuple[int, int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        p = low.bit_length() - 1
        rest = mask ^ low
        ew, es = best(rest)
        iw, isel = best(rest & ~cmask[p])
        iw += w[p]
        res = (iw, isel | low) if iw >= ew else (ew, es)
        memo[mask] = res
        return res

    weight, sel = best((1 << k) - 1)
    chosen = [order[p] for p in range(k) if sel >> p & 1]
    return weight, chosen


def brute_mw2ps(g: AnyGraph, budget=None, within: Iterable[int] | None = None,
                induced: bool = False) -> tuple[int, frozenset[int]]:
    """Exact maximum weight 2-packing set by enumeration.

    ``g`` may be a plain graph or a link-graph (links and live common
    neighbors both create conflicts).  With ``within`` only those vertices
    may be chosen; distances are still measured in all of ``g`` unless
    ``induced`` is set, in which case the induced link-subgraph is solved.
    """
    cap = _budget(budget)
    if within is not None:
        if not isinstance(g, LinkGraph):
            g = LinkGraph.from_graph(g)
        verts = sorted(set(within))
        if len(verts) > cap:
            raise OracleBudgetExceeded(f"{len(verts)} vertices exceed oracle budget {cap}")
        conflicts = _pair_conflicts_induced(g, verts) if induced else _pair_conflicts(g, verts)
        weights = [g.weight[v] for v in verts]
    else:
        verts = g.vertices() if isinstance(g, LinkGraph) else list(range(g.n))
        if len(verts) > cap:
            raise OracleBudgetExceeded(f"{len(verts)} vertices exceed oracle budget {cap}")
        conflicts = _pair_conflicts(g, verts)
        weights = [g.weight[v] for v in verts] if isinstance(g, LinkGraph) else [g.weights[v] for v in verts]
    index = {v: i for i, v in enumerate(verts)}
    conf_idx = [{index[b] for b in c} for c in conflicts]
    weight, chosen = _enumerate(weights, conf_idx)
    return weight, frozenset(verts[i] for i in chosen)


def brute_mwis(g, budget=None) -> tuple[int, frozenset[int]]:
    """Exact maximum weight independent set by enumeration."""
    g = getattr(g, "graph", g)
    cap = _budget(budget)
    if g.n > cap:
        raise OracleBudgetExceeded(f"{g.n} vertices exceed oracle budget {cap}")
    conflicts = [set(nb) for nb in g.adjacency]
    weight, chosen = _enumerate(list(g.weights), conflicts)
    return weight, frozenset(chosen)
