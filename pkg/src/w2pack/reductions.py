"""Exact data reduction rules for maximum weight 2-packing sets.

Every rule is exposed as a ``try_*`` method on :class:`Reducer`.  A rule
either returns the :class:`ReductionEvent` it pushed onto the reduction stack
or ``None`` when it does not apply; the link-graph is only modified when the
rule applies.  :func:`reduce_exhaustively` runs the rules of a
:class:`ReductionConfig` until none applies and :func:`restore` lifts a
solution of the reduced instance back to the input.

All vertex removals go through one primitive that re-links surviving pairs
whose only length-2 connection ran through a removed vertex, so the conflict
structure among survivors is always preserved.
"""

from __future__ import annotations

import enum
import random
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import LinkGraph, Solution, WeightedGraph
from .oracle import IN_REDUCTION_BUDGET, brute_mw2ps, is_2packing

RULE_NAMES = {
    1: "heavy_vertex",
    2: "neighbor_removal",
    3: "neighborhood_removal",
    4: "split_neighbor_removal",
    5: "intersection_removal",
    6: "split_intersection_removal",
    7: "domination",
    8: "weighted_clique",
    9: "d2_simplicial_weight_transfer",
    10: "neighborhood_folding",
    11: "fast_degree1",
    12: "fast_degree2",
    13: "fast_neighborhood_removal",
}

CONFIG_ORDERS: dict[str, tuple[int, ...]] = {
    "full": (11, 12, 13, 2, 7, 9, 6, 4, 10),
    "fast": (11, 12, 13),
    "strong": (11, 12, 13, 2, 9, 6, 4, 10),
    "core": (2, 7, 9, 6, 4, 10),
}

PAIR_RULES = frozenset({2, 4, 5, 6})


def _is_subsequence(sub: Sequence[int], seq: Sequence[int]) -> bool:
    it = iter(seq)
    return all(x in it for x in sub)


@dataclass(frozen=True)
class ReductionConfig:
    name: str
    order: tuple[int, ...]

    def __post_init__(self):
        if self.name not in CONFIG_ORDERS:
            raise ValueError(f"unknown reduction style {self.name!r}")
        if not _is_subsequence(self.order, CONFIG_ORDERS[self.name]):
            raise ValueError(f"order {self.order} is not a subsequence of the {self.name} row")

    @classmethod
    def named(cls, name: str) -> ReductionConfig:
        if name not in CONFIG_ORDERS:
            raise ValueError(f"unknown reduction style {name!r}")
        return cls(name, CONFIG_ORDERS[name])


class Kind(enum.Enum):
    INCLUDE = "include"
    EXCLUDE = "exclude"
    FOLD = "fold"
    PEEL_INCLUDE = "peel_include"
    PEEL_EXCLUDE = "peel_exclude"


@dataclass
class ReductionEvent:
    """One entry of the reduction stack.

    ``removed`` maps every hidden vertex to its weight at removal time.
    For folds ``fold_data`` holds either ``{"remaining": (...), "delta": d}``
    (weight transfer) or ``{"vprime": id, "members": (...)}`` (neighborhood
    folding).
    """

    rule: int | str
    pivot: int
    kind: Kind
    removed: dict[int, int] = field(default_factory=dict)
    included: tuple[int, ...] = ()
    fold_data: dict | None = None
    added_links: list[tuple[int, int]] = field(default_factory=list)
    offset: int = 0

    def changed(self) -> bool:
        return bool(self.removed or self.fold_data)

    def reconstruct(self, s: set[int]) -> None:
        """Map a solution of the instance after this event to the one before."""
        if self.kind is Kind.FOLD:
            data = self.fold_data
            if "vprime" in data:
                vp = data["vprime"]
                if vp in s:
                    s.discard(vp)
                    s.update(data["members"])
                else:
                    s.add(self.pivot)
            elif s.isdisjoint(data["remaining"]):
                s.add(self.pivot)
        else:
            s.update(self.included)


@dataclass
class ReducedInstance:
    """Reduced link-graph plus everything needed to undo the reductions.

    ``source`` is the link-graph the reductions started from; it is not
    modified and is used for the final greedy maximization in
    :func:`restore`.
    """

    graph: LinkGraph
    stack: list[ReductionEvent]
    offset: int
    source: LinkGraph
    counts: Counter = field(default_factory=Counter)
    config: ReductionConfig | None = None
    seconds: float = 0.0

    @property
    def fully_reduced(self) -> bool:
        return self.graph.is_empty()

    def report(self) -> dict:
        g = self.graph
        return {
            "config": None if self.config is None else self.config.name,
            "n": g.num_vertices,
            "m": g.num_edges,
            "links": g.num_links,
            "offset": self.offset,
            "fully_reduced": self.fully_reduced,
            "applications": {RULE_NAMES.get(r, str(r)): c for r, c in sorted(self.counts.items(), key=lambda t: str(t[0]))},
            "seconds": self.seconds,
        }


def _wmax(weights: list[int], vs: Iterable[int]) -> int:
    return max((weights[x] for x in vs), default=0)


class Reducer:
    """Applies reduction rules to a link-graph in place, recording a stack.

    The fast rules consult the original graph ``lg.base``; the bound table
    for Fast Neighborhood Removal is computed once from it.
    """

    def __init__(self, lg: LinkGraph, seed: int | None = None, shuffle: bool = False,
                 exact_cap: int = IN_REDUCTION_BUDGET.max_vertices):
        self.g = lg
        self.stack: list[ReductionEvent] = []
        self.offset = 0
        self.counts: Counter = Counter()
        self.exact_cap = exact_cap
        self.shuffle = shuffle
        self.rng = random.Random(seed)
        self._dirty: set[int] = set()
        self.touched_log: set[int] = set()
        self._r4_covered = False
        self._ngsets: dict[int, frozenset[int]] = {}
        self._r13: list[int] | None = None

    # -- helpers -------------------------------------------------------

    def _ng(self, u: int) -> frozenset[int]:
        s = self._ngsets.get(u)
        if s is None:
            s = frozenset(self.g.base.adjacency[u]) if u < self.g.base.n else frozenset()
            self._ngsets[u] = s
        return s

    def _links_now(self, v: int) -> set[int]:
        g = self.g
        return g._L[v] if v in g._L else g.compute_link_set(v)

    def closed_two_neighborhood(self, v: int) -> set[int]:
        s = self.g.two_neighborhood(v)
        s.add(v)
        return s

    def is_d2_simplicial(self, v: int) -> bool:
        g = self.g
        n2 = sorted(g.two_neighborhood(v))
        for i, a in enumerate(n2):
            for b in n2[i + 1:]:
                if not g.conflict(a, b):
                    return False
        return True

    def _cut(self, X: set[int]) -> tuple[dict[int, int], list[tuple[int, int]], set[int]]:
        """Hide ``X`` and link survivors that lost their only common neighbor."""
        g = self.g
        removed = {x: g.weight[x] for x in sorted(X)}
        groups = []
        touched: set[int] = set()
        for x in X:
            surv = [a for a in g.adj[x] if a not in X]
            touched.update(surv)
            touched.update(a for a in g.lnk[x] if a not in X)
            if len(surv) > 1:
                groups.append(sorted(surv))
        g.bulk_hide(X)
        adj, lnk = g.adj, g.lnk
        added = []
        for surv in groups:
            for i, a in enumerate(surv):
                aa = adj[a]
                la = lnk[a]
                for b in surv[i + 1:]:
                    if b in aa or b in la or not aa.isdisjoint(adj[b]):
                        continue
                    g.add_link(a, b)
                    added.append((a, b))
        return removed, added, touched

    def _push(self, ev: ReductionEvent, touched: set[int]) -> ReductionEvent:
        self.stack.append(ev)
        self.offset += ev.offset
        self.counts[ev.rule] += 1
        self._dirty |= touched
        self.touched_log |= touched
        return ev

    def _remove(self, X: Iterable[int], rule, pivot: int, kind: Kind,
                included: tuple[int, ...] = ()) -> ReductionEvent:
        X = set(X)
        offset = sum(self.g.weight[v] for v in included)
        removed, added, touched = self._cut(X)
        ev = ReductionEvent(rule, pivot, kind, removed, included, None, added, offset)
        return self._push(ev, touched)

    def _include(self, v: int, rule) -> ReductionEvent:
        kind = Kind.PEEL_INCLUDE if rule == "peel" else Kind.INCLUDE
        return self._remove(self.closed_two_neighborhood(v), rule, v, kind, (v,))

    def _exclude(self, X: Iterable[int], rule, pivot: int) -> ReductionEvent:
        kind = Kind.PEEL_EXCLUDE if rule == "peel" else Kind.EXCLUDE
        return self._remove(X, rule, pivot, kind)

    def _fold_transfer(self, v: int, K: set[int], rule) -> ReductionEvent:
        g = self.g
        wv = g.weight[v]
        remaining = sorted(g.two_neighborhood(v) - K)
        removed, added, touched = self._cut(K | {v})
        for x in remaining:
            g.set_weight(x, g.weight[x] - wv)
        touched.update(remaining)
        ev = ReductionEvent(rule, v, Kind.FOLD, removed, (), {"remaining": tuple(remaining), "delta": wv}, added, wv)
        return self._push(ev, touched)

    def consume_dirty(self) -> set[int]:
        d = self._dirty
        self._dirty = set()
        return d

    # -- reductions ----------------------------------------------------

    def heavy_vertex_applies(self, v: int) -> bool:
        """Exact Heavy Vertex condition (test predicate, oracle backed)."""
        g = self.g
        w, _ = brute_mw2ps(g, budget=max(self.exact_cap, 16), within=g.two_neighborhood(v))
        return w <= g.weight[v]

    def _heavy_outside(self, v: int, u: int, slack: int, links_only: bool, ranked: list[int] | None) -> bool:
        """Is some x in N2(v) (or only L(v)) outside N2[u] heavier than ``slack``?

        ``ranked`` lists N2(v) by decreasing weight, which lets the scan stop
        early; pivots tested against many partners compute it once.
        """
        g = self.g
        w = g.weight
        au, Lu = g.adj[u], g.materialize_links(u)
        av = g.adj[v]
        if ranked is None:
            ranked = sorted(g.two_neighborhood(v), key=lambda x: -w[x])
        for x in ranked:
            if w[x] <= slack:
                return False
            if x == u or x in au or x in Lu or (links_only and x in av):
                continue
            return True
        return False

    def try_neighbor_removal(self, v: int, u: int, ranked: list[int] | None = None) -> ReductionEvent | None:
        """Neighbor Removal: exclude ``u`` if it can always be swapped for ``v``."""
        g = self.g
        w = g.weight
        if w[u] > w[v]:
            return None
        Lv = g.materialize_links(v)
        if u in g.adj[v]:
            pool = Lv
        elif u in Lv:
            pool = g.adj[v] | Lv
            pool.add(v)
        else:
            return None
        slack = w[v] - w[u]
        # a single heavy vertex outside N2[u] already defeats the rule
        if self._heavy_outside(v, u, slack, pool is Lv, ranked):
            return None
        au, Lu = g.adj[u], g.materialize_links(u)
        n2u = au | Lu
        n2u.add(u)
        rest = pool - n2u
        total = sum(w[x] for x in rest)
        # cheap sandwich before the exact subproblem: w_max <= alpha <= w(rest)
        if total <= slack:
            bound = total
        elif len(rest) <= self.exact_cap:
            bound = brute_mw2ps(g, budget=self.exact_cap, within=rest)[0]
        else:
            bound = self._split_bound(v, u, Lv, n2u)
        if bound + w[u] <= w[v]:
            return self._exclude({u}, 2, v)
        return None

    def _split_bound(self, v: int, u: int, Lv: set[int], n2u: set[int]) -> int:
        g = self.g
        w = g.weight
        part = sum(w[x] for x in Lv if x not in n2u)
        if u in g.adj[v]:
            return part
        whole = sum(w[x] for x in g.adj[v] if x not in n2u) + part
        return min(whole, g.max_neighbor_weight(v) + part)

    def try_neighborhood_removal(self, v: int) -> ReductionEvent | None:
        g = self.g
        Lv = g.materialize_links(v)
        if g.weight[v] >= g.link_weight(v) + g.max_neighbor_weight(v):
            return self._include(v, 3)
        return None

    def try_split_neighbor_removal(self, v: int, u: int, ranked: list[int] | None = None) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        if w[u] > w[v]:
            return None
        Lv = g.materialize_links(v)
        if u in g.adj[v]:
            # cheap test before building L(v) \ N2[u]
            if g.neighbor_weight(u) >= g.link_weight(v) + g.neighbor_weight(v):
                return self._exclude({u}, 4, v)
        elif u not in Lv:
            return None
        if self._heavy_outside(v, u, w[v] - w[u], True, ranked):
            return None
        U = self._split_bound(v, u, Lv, self.closed_two_neighborhood(u))
        if U + w[u] <= w[v]:
            return self._exclude({u}, 4, v)
        return None

    def intersection(self, v: int, u: int) -> set[int]:
        return (self.closed_two_neighborhood(u) & self.closed_two_neighborhood(v)) - {u, v}

    def try_intersection_removal(self, v: int, u: int) -> ReductionEvent | None:
        g = self.g
        n2v = g.two_neighborhood(v)
        if u not in n2v:
            return None
        if g.weight[v] >= g.link_weight(v) + g.neighbor_weight(v) - g.weight[u]:
            return self._exclude(self.intersection(v, u), 5, v)
        return None

    def try_split_intersection_removal(self, v: int, u: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        Lv = g.materialize_links(v)
        if u in g.adj[v]:
            ok = w[v] >= g.link_weight(v) + _wmax(w, g.adj[v] - {u})
        elif u in Lv:
            ok = w[v] >= g.link_weight(v) - w[u] + g.max_neighbor_weight(v)
        else:
            return None
        if ok:
            return self._exclude(self.intersection(v, u), 6, v)
        return None

    def try_domination(self, v: int, u: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        if u not in g.adj[v]:
            return None
        au = g.adj[u]
        for x in g.adj[v]:
            if x != u and x not in au:
                return None
        if g.link_degree(v) + g.degree(v) != g.degree(u):
            return None
        if w[v] >= max(w[u], g.max_neighbor_weight(u)):
            # N2[v] = N[u]; the whole distance-2-clique goes
            return self._include(v, 7)
        K = au - {v}
        if K and w[v] >= g.weight_of(K):
            return self._exclude(K, 7, v)
        if w[v] >= w[u]:
            return self._exclude({u}, 7, v)
        return None

    def try_weighted_clique(self, v: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        n2 = g.two_neighborhood(v)
        if _wmax(w, n2) > w[v]:
            return None
        if not self.is_d2_simplicial(v):
            return None
        return self._include(v, 8)

    def try_d2_simplicial_weight_transfer(self, v: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        if not self.is_d2_simplicial(v):
            return None
        n2 = g.two_neighborhood(v)
        wv = w[v]
        for x in sorted(n2):
            if w[x] > wv and self.is_d2_simplicial(x):
                return None
        K = {x for x in n2 if w[x] <= wv}
        return self._fold_transfer(v, K, 9)

    def try_neighborhood_folding(self, v: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        if g.degree(v) > 1:
            return None
        n2 = sorted(g.two_neighborhood(v))
        if not n2:
            return None
        total = sum(w[x] for x in n2)
        if not (total > w[v] >= total - min(w[x] for x in n2)):
            return None
        for i, a in enumerate(n2):
            for b in n2[i + 1:]:
                if g.conflict(a, b):
                    return None
        # everything within distance 2 of a member conflicts with the new vertex
        closed = set(n2)
        closed.add(v)
        conflicts: set[int] = set()
        for x in n2:
            conflicts |= g.two_neighborhood(x)
        conflicts -= closed
        wv = w[v]
        removed, added, touched = self._cut(closed)
        vp = g.add_vertex(total - wv)
        for x in sorted(conflicts):
            if g.add_link(vp, x):
                added.append((vp, x))
        touched.add(vp)
        ev = ReductionEvent(10, v, Kind.FOLD, removed, (), {"vprime": vp, "members": tuple(n2)}, added, wv)
        return self._push(ev, touched)

    def try_fast_degree1(self, u: int) -> ReductionEvent | None:
        g = self.g
        if u >= g.base.n:
            return None
        ngu = self._ng(u)
        best = None
        best_l = None
        for v in g.base.adjacency[u]:
            if not g.alive[v] or len(g.adj[v]) > 1:
                continue
            if any(z != u and z not in ngu for z in g.adj[v]):
                continue
            Lv = self._links_now(v)
            if not Lv <= ngu:
                continue
            if best is None or g.weight[v] > g.weight[best]:
                best, best_l = v, Lv
        if best is None:
            return None
        v = best
        n2 = g.adj[v] | best_l
        K = {x for x in n2 if g.weight[x] <= g.weight[v]}
        return self._fold_transfer(v, K, 11)

    def try_fast_degree2(self, u: int, y: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        base = g.base
        if u >= base.n or y >= base.n or u == y:
            return None
        ngu, ngy = self._ng(u), self._ng(y)
        both = ngu | ngy
        cands = []
        for v in sorted(ngu & ngy):
            if not g.alive[v] or len(base.adjacency[v]) != 2:
                continue
            if self._links_now(v) <= both:
                cands.append(v)
        if not cands:
            return None
        v = max(cands, key=lambda x: (w[x], -x))
        twins = set(cands) - {v}
        live_u = g.alive[u]
        live_y = g.alive[y]
        cu = max((w[x] for x in ngu if g.alive[x] and x not in twins and x != v and x != y), default=0)
        cy = max((w[x] for x in ngy if g.alive[x] and x not in twins and x != v and x != u), default=0)
        wu = w[u] if live_u else 0
        wy = w[y] if live_y else 0
        if u in ngy:
            bound = max(wu, wy, cu + cy)
        else:
            bound = max(wu + cy, wy + cu, cu + cy)
        if w[v] >= bound:
            X = twins | self.closed_two_neighborhood(v)
            return self._remove(X, 12, v, Kind.INCLUDE, (v,))
        if twins:
            return self._exclude(twins, 12, v)
        return None

    def _fast_bound_table(self) -> list[int]:
        if self._r13 is None:
            base = self.g.base
            bw = base.weights
            nsum = [sum(bw[x] for x in nb) for nb in base.adjacency]
            self._r13 = [sum(nsum[u] - bw[v] for u in base.adjacency[v]) for v in range(base.n)]
        return self._r13

    def try_fast_neighborhood_removal(self, v: int) -> ReductionEvent | None:
        g = self.g
        w = g.weight
        n0 = g.base.n
        if v < n0:
            bound = self._fast_bound_table()[v]
            # the table only covers partners at distance 2 in G
            ngv = self._ng(v)
            bound += sum(w[x] for x in g.lnk[v] if x >= n0 or ngv.isdisjoint(self._ng(x)))
        else:
            bound = sum(w[x] for x in g.lnk[v])
        if w[v] >= g.max_neighbor_weight(v) + max(bound, 0):
            return self._include(v, 13)
        return None

    # -- peeling -------------------------------------------------------

    def peel_exclude(self, v: int) -> ReductionEvent:
        return self._exclude({v}, "peel", v)

    def peel_include(self, v: int) -> ReductionEvent:
        return self._include(v, "peel")

    # -- engine --------------------------------------------------------

    def test(self, rule: int, v: int) -> ReductionEvent | None:
        """Try ``rule`` with ``v`` as pivot; the first success is returned."""
        g = self.g
        if not g.alive[v]:
            return None
        w = g.weight
        if rule in PAIR_RULES:
            return self._test_pairs(rule, v)
        if rule == 3:
            return self.try_neighborhood_removal(v)
        if rule == 7:
            for u in sorted(g.adj[v]):
                ev = self.try_domination(v, u)
                if ev is not None:
                    return ev
            return None
        if rule == 8:
            return self.try_weighted_clique(v)
        if rule == 9:
            return self.try_d2_simplicial_weight_transfer(v)
        if rule == 10:
            return self.try_neighborhood_folding(v)
        if rule == 11:
            if v >= g.base.n or len(g.adj[v]) > 1:
                return None
            for u in g.base.adjacency[v]:
                ev = self.try_fast_degree1(u)
                if ev is not None:
                    return ev
            return None
        if rule == 12:
            if v >= g.base.n or len(g.base.adjacency[v]) != 2:
                return None
            u, y = g.base.adjacency[v]
            return self.try_fast_degree2(u, y)
        if rule == 13:
            return self.try_fast_neighborhood_removal(v)
        raise ValueError(f"rule {rule} is not an engine rule")

    def _test_pairs(self, rule: int, v: int) -> ReductionEvent | None:
        """Pair rules with cheap necessary conditions filtered up front."""
        g = self.g
        w = g.weight
        wv = w[v]
        adj_v = g.adj[v]
        Lv = g.materialize_links(v)
        if rule == 4 and self._r4_covered and len(adj_v) + len(Lv) < self.exact_cap:
            return None
        ranked = None
        if rule in (2, 4):
            n2v = adj_v | Lv
            cands = sorted(u for u in n2v if w[u] <= wv)
            if cands:
                ranked = sorted(n2v, key=w.__getitem__, reverse=True)
        else:
            wL = g.link_weight(v)
            if rule == 5:
                need = wL + g.neighbor_weight(v) - wv
                cands = sorted(u for u in adj_v | Lv if w[u] >= need)
            else:
                maxn = g.max_neighbor_weight(v)
                cands = sorted(u for u in Lv if wv >= wL - w[u] + maxn)
                if wv >= wL:
                    cands = sorted(cands + [u for u in adj_v if wv >= wL + _wmax(w, adj_v - {u})])
        for u in cands:
            if not g.alive[v]:
                return None
            if not g.alive[u]:
                continue
            if ranked is not None:
                # inline form of the heavy-vertex precheck in the two rules
                slack = wv - w[u]
                au, Lu = g.adj[u], g.materialize_links(u)
                only_links = rule == 4 or u in adj_v
                blocked = False
                for x in ranked:
                    if w[x] <= slack:
                        break
                    if x == u or x in au or x in Lu or (only_links and x in adj_v):
                        continue
                    blocked = True
                    break
                if blocked:
                    continue
            if rule == 2:
                ev = self.try_neighbor_removal(v, u, ranked)
            elif rule == 4:
                ev = self.try_split_neighbor_removal(v, u, ranked)
            else:
                if not self.intersection(v, u):
                    continue
                if rule == 5:
                    ev = self.try_intersection_removal(v, u)
                else:
                    ev = self.try_split_intersection_removal(v, u)
            if ev is not None:
                return ev
        return None

    def _order(self, vs: Iterable[int]) -> list[int]:
        out = sorted(vs)
        if self.shuffle:
            self.rng.shuffle(out)
        return out

    def region(self, touched: set[int]) -> list[int]:
        g = self.g
        # touched vertices neighbor the change, so one more hop covers
        # every vertex whose 2-neighborhood changed
        region = set()
        for t in touched:
            if not g.alive[t]:
                continue
            region.add(t)
            region.update(g.lnk[t])
            region.update(g.adj[t])
        return self._order(region)

    def run(self, order: Sequence[int], deadline: float | None = None,
            seeds: Iterable[int] | None = None, sweep: bool = True) -> bool:
        """Apply the rules in ``order`` until none of them applies anywhere.

        Rules are tried lowest position first; after a successful application
        every rule re-tests the vertices near the change.  A final sweep over
        all vertices guards against changes that propagate further than the
        re-test region.  ``seeds`` restricts the initial candidates and
        ``sweep=False`` skips the final sweep.  Returns False if the deadline
        cut the run short.
        """
        try:
            return self._run(tuple(order), deadline, seeds, sweep)
        finally:
            self._r4_covered = False

    def _run(self, order, deadline, seeds, sweep) -> bool:
        order = tuple(order)
        # with Neighbor Removal scheduled first, Split Neighbor Removal can
        # only add something where the exact subproblem was too large
        self._r4_covered = 2 in order and 4 in order and order.index(2) < order.index(4)
        for r in order:
            if r not in RULE_NAMES or r == 1:
                raise ValueError(f"rule {r} cannot be scheduled")
        if not order:
            return True
        g = self.g
        nr = len(order)
        queues = [deque() for _ in range(nr)]
        queued = [set() for _ in range(nr)]

        def push(vs: list[int]) -> None:
            for i in range(nr):
                q, s = queues[i], queued[i]
                for v in vs:
                    if v not in s:
                        s.add(v)
                        q.append(v)

        self._dirty.clear()
        push(self._order(g.vertices() if seeds is None else [v for v in seeds if g.alive[v]]))
        while True:
            i = 0
            steps = 0
            while i < nr:
                if not queues[i]:
                    i += 1
                    continue
                v = queues[i].popleft()
                queued[i].discard(v)
                if not g.alive[v]:
                    continue
                ev = self.test(order[i], v)
                if ev is not None and ev.changed():
                    push(self.region(self.consume_dirty()))
                    i = 0
                steps += 1
                if deadline is not None and steps & 63 == 0 and time.monotonic() > deadline:
                    return False
            if not sweep:
                return True
            found = False
            for rule in order:
                for v in self._order(g.vertices()):
                    ev = self.test(rule, v) if g.alive[v] else None
                    if ev is not None and ev.changed():
                        found = True
                        break
                if found:
                    break
            if not found:
                return True
            push(self.region(self.consume_dirty()))

    def result(self, source: LinkGraph, config: ReductionConfig | None = None, seconds: float = 0.0) -> ReducedInstance:
        return ReducedInstance(self.g, self.stack, self.offset, source, self.counts, config, seconds)


def _as_config(config) -> ReductionConfig:
    if isinstance(config, ReductionConfig):
        return config
    return ReductionConfig.named(config)


def reduce_exhaustively(lg: LinkGraph | WeightedGraph, config="strong", seed: int | None = None,
                        shuffle: bool = False) -> ReducedInstance:
    """Exhaustively reduce a copy of ``lg`` with the rules of ``config``."""
    if isinstance(lg, WeightedGraph):
        lg = LinkGraph.from_graph(lg)
    cfg = _as_config(config)
    t0 = time.perf_counter()
    red = Reducer(lg.copy(), seed=seed, shuffle=shuffle)
    red.run(cfg.order)
    return red.result(lg, cfg, time.perf_counter() - t0)


class InfeasibleSolution(ValueError):
    pass


def greedy_maximize(lg: LinkGraph, s: set[int]) -> set[int]:
    """Add free vertices heaviest first (ties by id) until ``s`` is maximal."""
    adj, lnk, w = lg.adj, lg.lnk, lg.weight
    covered: set[int] = set()
    for x in s:
        covered.add(x)
        covered.update(adj[x])
    for x in sorted(lg.vertices(), key=lambda v: (-w[v], v)):
        if x in covered or not adj[x].isdisjoint(covered) or not lnk[x].isdisjoint(s):
            continue
        s.add(x)
        covered.add(x)
        covered.update(adj[x])
    return s


def unwind(stack: Sequence[ReductionEvent], s: Iterable[int]) -> set[int]:
    out = set(s)
    for ev in reversed(stack):
        ev.reconstruct(out)
    return out


def restore(ri: ReducedInstance, s_reduced: Iterable[int] | Solution, maximize: bool = True) -> Solution:
    """Lift a feasible solution of ``ri.graph`` to a maximal one of ``ri.source``."""
    s = set(s_reduced.vertices if isinstance(s_reduced, Solution) else s_reduced)
    if not is_2packing(ri.graph, s):
        raise InfeasibleSolution("solution is not a 2-packing set of the reduced instance")
    out = unwind(ri.stack, s)
    if maximize:
        greedy_maximize(ri.source, out)
    return Solution.of(out, ri.source)
