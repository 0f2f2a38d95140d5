"""Weighted input graphs and the dynamic link-graph used by the reductions.

A link-graph extends a graph with a set of *links*: vertex pairs that are not
adjacent but must keep behaving as if they were at distance exactly two.  The
:class:`LinkGraph` keeps edges and links in separate adjacency structures and
maintains per-vertex aggregates (degree, neighborhood weight sum, maximum
neighbor weight) under deletion.  Link neighborhoods are only computed on
demand and, once computed, are kept up to date incrementally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or illegal link-graph operations."""


class WeightedGraph:
    """Immutable undirected vertex-weighted graph on vertices ``0..n-1``.

    Weights are non-negative integers.  Adjacency lists are stored sorted.
    """

    __slots__ = ("n", "m", "adjacency", "weights")

    def __init__(self, adjacency: Sequence[Iterable[int]], weights: Sequence[int] | None = None):
        n = len(adjacency)
        adj = tuple(tuple(sorted(int(u) for u in nbrs)) for nbrs in adjacency)
        if weights is None:
            weights = [1] * n
        if len(weights) != n:
            raise GraphError(f"expected {n} weights, got {len(weights)}")
        w = tuple(int(x) for x in weights)
        for v, x in enumerate(w):
            if x < 0:
                raise GraphError(f"vertex {v} has negative weight {x}")
        m2 = 0
        for v, nbrs in enumerate(adj):
            for i, u in enumerate(nbrs):
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if not 0 <= u < n:
                    raise GraphError(f"vertex {v} has out-of-range neighbor {u}")
                if i and nbrs[i - 1] == u:
                    raise GraphError(f"duplicate edge {{{v}, {u}}}")
            m2 += len(nbrs)
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if not _sorted_contains(adj[u], v):
                    raise GraphError(f"asymmetric adjacency: {u} in N({v}) but {v} not in N({u})")
        self.n = n
        self.m = m2 // 2
        self.adjacency = adj
        self.weights = w

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], weights: Sequence[int] | None = None) -> WeightedGraph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, weights)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v < u:
                    yield v, u

    def weight_of(self, vertices: Iterable[int]) -> int:
        w = self.weights
        return sum(w[v] for v in vertices)

    def with_weights(self, weights: Sequence[int]) -> WeightedGraph:
        return WeightedGraph(self.adjacency, weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.adjacency == other.adjacency and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.adjacency, self.weights))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


def _sorted_contains(seq: Sequence[int], x: int) -> bool:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(seq) and seq[lo] == x


@dataclass(frozen=True)
class AggregateAudit:
    """A vertex whose stored aggregates disagree with a fresh recomputation.

    Aggregate tuples are ``(deg, deg_L, sum of neighbor weights, max neighbor
    weight, w(L))``; the link entries are None while ``L`` is not cached.
    """

    vertex: int
    stored: tuple
    recomputed: tuple


class LinkGraph:
    """Mutable link-graph ``(G, L)`` over the vertices of a base graph.

    Vertices are only ever removed (hidden) or, for folding reductions,
    appended with fresh ids ``>= base.n``.  Edges between live vertices are
    never removed except by hiding an endpoint, so ``N(v)`` is always the set
    of live original neighbors of ``v``.
    """

    def __init__(self, base: WeightedGraph):
        n = base.n
        self.base = base
        self.alive = [True] * n
        self.adj: list[set[int]] = [set(nb) for nb in base.adjacency]
        self.lnk: list[set[int]] = [set() for _ in range(n)]
        self.weight = list(base.weights)
        self._L: dict[int, set[int]] = {}
        self._wL: dict[int, int] = {}
        w = self.weight
        self._sumw = [sum(w[u] for u in nb) for nb in base.adjacency]
        self._maxw = [max((w[u] for u in nb), default=0) for nb in base.adjacency]
        self._num_alive = n
        self._m = base.m
        self._ml = 0
        self.journal: list[tuple] = []

    @classmethod
    def from_graph(cls, g: WeightedGraph) -> LinkGraph:
        return cls(g)

    def copy(self) -> LinkGraph:
        other = LinkGraph.__new__(LinkGraph)
        other.base = self.base
        other.alive = list(self.alive)
        other.adj = [set(s) for s in self.adj]
        other.lnk = [set(s) for s in self.lnk]
        other.weight = list(self.weight)
        other._L = {v: set(s) for v, s in self._L.items()}
        other._wL = dict(self._wL)
        other._sumw = list(self._sumw)
        other._maxw = list(self._maxw)
        other._num_alive = self._num_alive
        other._m = self._m
        other._ml = self._ml
        other.journal = []
        return other

    # -- queries -------------------------------------------------------

    @property
    def capacity(self) -> int:
        """Number of vertex ids ever allocated (live or dead)."""
        return len(self.alive)

    @property
    def num_vertices(self) -> int:
        return self._num_alive

    @property
    def num_edges(self) -> int:
        return self._m

    @property
    def num_links(self) -> int:
        return self._ml

    def is_empty(self) -> bool:
        return self._num_alive == 0

    def is_alive(self, v: int) -> bool:
        return 0 <= v < len(self.alive) and self.alive[v]

    def vertices(self) -> list[int]:
        return [v for v, a in enumerate(self.alive) if a]

    def is_original(self, v: int) -> bool:
        return v < self.base.n

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def link_partners(self, v: int) -> list[int]:
        return sorted(self.lnk[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbor_weight(self, v: int) -> int:
        """``w(N(v))``, maintained incrementally."""
        return self._sumw[v]

    def max_neighbor_weight(self, v: int) -> int:
        """``w_max(N(v))`` with ``w_max(∅) = 0``, maintained incrementally."""
        return self._maxw[v]

    def link_known(self, v: int) -> bool:
        return v in self._L

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def linked(self, u: int, v: int) -> bool:
        return v in self.lnk[u]

    def conflict(self, u: int, v: int) -> bool:
        """True iff ``u != v`` are within distance 2 (edge, link or common neighbor)."""
        if u == v:
            return False
        au = self.adj[u]
        return v in au or v in self.lnk[u] or not au.isdisjoint(self.adj[v])

    def weight_of(self, vertices: Iterable[int]) -> int:
        w = self.weight
        return sum(w[v] for v in vertices)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, a in enumerate(self.alive):
            if a:
                for u in self.adj[v]:
                    if v < u:
                        yield v, u

    def links(self) -> Iterator[tuple[int, int]]:
        for v, a in enumerate(self.alive):
            if a:
                for u in self.lnk[v]:
                    if v < u:
                        yield v, u

    def compute_link_set(self, v: int) -> set[int]:
        """``L(v)`` computed from scratch, without touching the cache."""
        adj = self.adj
        out = set(self.lnk[v])
        for u in adj[v]:
            out.update(adj[u])
        out.discard(v)
        out.difference_update(adj[v])
        return out

    def materialize_links(self, v: int) -> set[int]:
        """Return ``L(v)``; the result is cached and kept current afterwards.

        The returned set is owned by the graph and must not be modified.
        """
        s = self._L.get(v)
        if s is not None:
            return s
        self._require_alive(v)
        s = self.compute_link_set(v)
        self._L[v] = s
        w = self.weight
        self._wL[v] = sum(w[x] for x in s)
        return s

    def link_weight(self, v: int) -> int:
        """``w(L(v))``, kept current together with the cached ``L(v)``."""
        if v not in self._L:
            self.materialize_links(v)
        return self._wL[v]

    link_neighborhood = materialize_links

    def link_degree(self, v: int) -> int:
        return len(self.materialize_links(v))

    def two_neighborhood(self, v: int) -> set[int]:
        """Open 2-neighborhood ``N_2(v) = N(v) ∪ L(v)`` (a fresh set)."""
        s = self._L.get(v)
        if s is None:
            s = self.materialize_links(v)
        return self.adj[v] | s

    # -- mutation ------------------------------------------------------

    def _require_alive(self, v: int) -> None:
        if not self.is_alive(v):
            raise GraphError(f"vertex {v} is not alive")

    def add_link(self, u: int, v: int) -> bool:
        """Insert link ``{u, v}``.  Returns False if it already existed."""
        if u == v:
            raise GraphError("cannot link a vertex to itself")
        self._require_alive(u)
        self._require_alive(v)
        if v in self.adj[u]:
            raise GraphError(f"{{{u}, {v}}} is an edge; links must be disjoint from edges")
        if v in self.lnk[u]:
            return False
        self.lnk[u].add(v)
        self.lnk[v].add(u)
        self._ml += 1
        L, wL, w = self._L, self._wL, self.weight
        if u in L and v not in L[u]:
            L[u].add(v)
            wL[u] += w[v]
        if v in L and u not in L[v]:
            L[v].add(u)
            wL[v] += w[u]
        self.journal.append(("link", u, v))
        return True

    def add_vertex(self, weight: int) -> int:
        """Append an isolated vertex with a fresh id (used by folding)."""
        if weight < 0:
            raise GraphError("negative weight")
        v = len(self.alive)
        self.alive.append(True)
        self.adj.append(set())
        self.lnk.append(set())
        self.weight.append(int(weight))
        self._sumw.append(0)
        self._maxw.append(0)
        self._num_alive += 1
        self.journal.append(("add", v, weight))
        return v

    def set_weight(self, v: int, weight: int) -> None:
        self._require_alive(v)
        if weight < 0:
            raise GraphError(f"negative weight for vertex {v}")
        old = self.weight[v]
        if old == weight:
            return
        self.weight[v] = weight
        delta = weight - old
        w = self.weight
        if self._L:
            wL = self._wL
            for x in self.compute_link_set(v):
                if x in wL:
                    wL[x] += delta
        for y in self.adj[v]:
            self._sumw[y] += delta
            if weight > self._maxw[y]:
                self._maxw[y] = weight
            elif old == self._maxw[y] and weight < old:
                self._maxw[y] = max(w[z] for z in self.adj[y])
        self.journal.append(("weight", v, old, weight))

    def hide_vertex(self, v: int) -> None:
        self._require_alive(v)
        self._detach({v})

    def bulk_hide(self, vertices: Iterable[int]) -> None:
        """Hide all given vertices, scanning each surviving list once."""
        K = set(vertices)
        for v in K:
            self._require_alive(v)
        if K:
            self._detach(K)

    def _detach(self, X: set[int]) -> None:
        adj, lnk, L = self.adj, self.lnk, self._L
        # Known vertices within distance 2 of X may lose members of X from L(.)
        region: set[int] = set()
        if L:
            for x in X:
                region.update(adj[x])
                region.update(lnk[x])
                for y in adj[x]:
                    region.update(adj[y])
            region -= X
        touched_adj: set[int] = set()
        touched_lnk: set[int] = set()
        removed_edges = 0
        removed_links = 0
        inner_edges = 0
        inner_links = 0
        for x in X:
            for y in adj[x]:
                if y in X:
                    inner_edges += 1
                else:
                    touched_adj.add(y)
                    removed_edges += 1
            for y in lnk[x]:
                if y in X:
                    inner_links += 1
                else:
                    touched_lnk.add(y)
                    removed_links += 1
        self._m -= removed_edges + inner_edges // 2
        self._ml -= removed_links + inner_links // 2
        w = self.weight
        for y in touched_adj:
            ay = adj[y]
            lost = ay & X
            ay -= lost
            self._sumw[y] -= sum(w[x] for x in lost)
            if any(w[x] == self._maxw[y] for x in lost):
                self._maxw[y] = max((w[z] for z in ay), default=0)
        for y in touched_lnk:
            lnk[y] -= X
        # Pairs whose only common neighbor was removed
        recheck: list[tuple[int, int]] = []
        if L:
            for x in X:
                surv = [a for a in adj[x] if a not in X]
                if len(surv) > 1:
                    for a in surv:
                        La = L.get(a)
                        if La is None:
                            continue
                        for b in surv:
                            if b != a and b in La:
                                recheck.append((a, b))
        for x in X:
            adj[x] = set()
            lnk[x] = set()
            L.pop(x, None)
            self._wL.pop(x, None)
            self.alive[x] = False
            self._sumw[x] = 0
            self._maxw[x] = 0
        self._num_alive -= len(X)
        wL = self._wL
        for v in region:
            Lv = L.get(v)
            if Lv is not None:
                lost = Lv & X
                if lost:
                    Lv -= lost
                    wL[v] -= sum(w[x] for x in lost)
        for a, b in recheck:
            La = L.get(a)
            if La is not None and b in La:
                if not (b in lnk[a] or not adj[a].isdisjoint(adj[b])):
                    La.discard(b)
                    wL[a] -= w[b]
        self.journal.append(("hide", tuple(sorted(X))))

    # -- verification --------------------------------------------------

    def aggregates(self, v: int) -> tuple:
        Lv = self._L.get(v)
        if Lv is None:
            return (len(self.adj[v]), None, self._sumw[v], self._maxw[v], None)
        return (len(self.adj[v]), len(Lv), self._sumw[v], self._maxw[v], self._wL[v])

    def audit_aggregates(self) -> list[AggregateAudit]:
        """Compare every stored aggregate with a recomputation from scratch."""
        out = []
        alive = self.alive
        for v, a in enumerate(alive):
            if not a:
                continue
            nbrs = {u for u in self.adj[v] if alive[u] and v in self.adj[u]}
            stored = self.aggregates(v)
            deg_l = w_l = None
            if v in self._L:
                truth = set(u for u in self.lnk[v] if alive[u])
                for u in nbrs:
                    truth.update(x for x in self.adj[u] if alive[x])
                truth.discard(v)
                truth -= nbrs
                deg_l = len(truth)
                w_l = sum(self.weight[u] for u in truth)
                # -1: right size, wrong members
                if truth != self._L[v]:
                    deg_l = -1 if len(truth) == len(self._L[v]) else len(truth)
            recomputed = (
                len(nbrs),
                deg_l,
                sum(self.weight[u] for u in nbrs),
                max((self.weight[u] for u in nbrs), default=0),
                w_l,
            )
            if stored != recomputed:
                out.append(AggregateAudit(v, stored, recomputed))
        return out

    def structure(self) -> tuple:
        """Canonical snapshot of the live structure, for equality tests."""
        alive = tuple(self.vertices())
        return (
            alive,
            tuple(tuple(sorted(self.adj[v])) for v in alive),
            tuple(tuple(sorted(self.lnk[v])) for v in alive),
            tuple(self.weight[v] for v in alive),
            tuple(self.aggregates(v)[0:3:2] for v in alive),
        )

    def __repr__(self) -> str:
        return f"LinkGraph(n={self._num_alive}, m={self._m}, links={self._ml})"


@dataclass(frozen=True)
class Solution:
    """A vertex set together with its weight under some weight function."""

    vertices: frozenset
    weight: int

    @classmethod
    def of(cls, vertices: Iterable[int], g) -> Solution:
        vs = frozenset(vertices)
        w = g.weight if isinstance(g, LinkGraph) else g.weights
        return cls(vs, sum(w[v] for v in vs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(sorted(self.vertices))

    def __contains__(self, v) -> bool:
        return v in self.vertices
