"""Reduce-and-peel heuristic for maximum weight 2-packing sets.

Exact reductions run until they stall; then one vertex is peeled, i.e.
heuristically excluded or included according to a rating, and the exact
reductions get another turn.  Once the graph is empty the reduction stack is
unwound and the solution is greedily maximized.
"""

from __future__ import annotations

import enum
import heapq
import random
import time
from dataclasses import dataclass, field

from .graph import LinkGraph, Solution, WeightedGraph
from .reductions import CONFIG_ORDERS, ReducedInstance, ReductionConfig, Reducer, ReductionEvent, restore


class Rating(enum.Enum):
    WEIGHT_DIFF = "weight_diff"
    WEIGHT = "weight"
    DEGREE = "degree"


class Mode(enum.Enum):
    ADAPTIVE = "adaptive"
    NON_ADAPTIVE = "non_adaptive"


class Action(enum.Enum):
    EXCLUDE = "exclude"
    INCLUDE = "include"


DEFAULT_K = 4


@dataclass(frozen=True)
class PeelConfig:
    rating: Rating = Rating.WEIGHT_DIFF
    mode: Mode = Mode.ADAPTIVE
    action: Action = Action.EXCLUDE
    k: int = DEFAULT_K
    p: float = 1.0
    seed: int = 0
    reduction_order: ReductionConfig = field(default_factory=lambda: ReductionConfig.named("core"))
    shuffle: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not 0.5 <= self.p <= 1.0:
            raise ValueError("p must lie in [0.5, 1]")
        if self.action is Action.INCLUDE and self.rating is Rating.DEGREE:
            raise ValueError("the degree rating only supports exclusion")


def rating(lg: LinkGraph, v: int, which: Rating) -> int:
    if not lg.is_alive(v):
        raise ValueError(f"vertex {v} is not alive")
    if which is Rating.WEIGHT:
        return lg.weight[v]
    if which is Rating.WEIGHT_DIFF:
        return lg.weight[v] - lg.link_weight(v) - lg.neighbor_weight(v)
    return -lg.degree(v) - len(lg.materialize_links(v))


class Peeler:
    """Owns a link-graph and peels it according to a :class:`PeelConfig`.

    Adaptive mode keeps a lazily updated heap of ratings; ratings around a
    change are refreshed after every step.  Non-adaptive mode ranks the
    vertices once and walks that ranking, accepting each live entry with
    probability ``p``.
    """

    def __init__(self, lg: LinkGraph, cfg: PeelConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.red = Reducer(lg, seed=cfg.seed, shuffle=cfg.shuffle)
        self.g = lg
        self._sign = 1 if cfg.action is Action.EXCLUDE else -1
        self._heap: list[tuple[int, int]] = []
        self._key: dict[int, int] = {}
        self._ranking: list[int] | None = None
        self._pos = 0

    def _rate(self, v: int) -> None:
        key = self._sign * rating(self.g, v, self.cfg.rating)
        if self._key.get(v) != key:
            self._key[v] = key
            heapq.heappush(self._heap, (key, v))

    def _refresh(self) -> None:
        touched = self.red.touched_log
        self.red.touched_log = set()
        if self.cfg.mode is Mode.ADAPTIVE:
            for v in self.red.region(touched):
                self._rate(v)

    def _start(self) -> None:
        self.red.touched_log = set()
        verts = self.g.vertices()
        if self.cfg.mode is Mode.ADAPTIVE:
            for v in verts:
                self._rate(v)
        else:
            keys = {v: self._sign * rating(self.g, v, self.cfg.rating) for v in verts}
            self._ranking = sorted(verts, key=lambda v: (keys[v], v))

    def _pick_adaptive(self) -> int:
        heap, alive = self._heap, self.g.alive
        top = []
        while heap and len(top) < self.cfg.k:
            key, v = heapq.heappop(heap)
            if v < len(alive) and alive[v] and self._key.get(v) == key:
                top.append((key, v))
        if not top:
            # fold vertices created after the last refresh
            for v in self.g.vertices():
                self._rate(v)
            return self._pick_adaptive()
        choice = top[self.rng.randrange(len(top))] if len(top) > 1 else top[0]
        for item in top:
            if item is not choice:
                heapq.heappush(heap, item)
        return choice[1]

    def _pick_non_adaptive(self) -> int:
        ranking, alive = self._ranking, self.g.alive
        while self._pos < len(ranking) and not alive[ranking[self._pos]]:
            self._pos += 1
        first = None
        for i in range(self._pos, len(ranking)):
            v = ranking[i]
            if not alive[v]:
                continue
            if first is None:
                first = v
            if self.rng.random() < self.cfg.p:
                return v
        if first is None:
            # only vertices created by folds are left
            extra = sorted(self.g.vertices(), key=lambda v: (self._sign * rating(self.g, v, self.cfg.rating), v))
            self._ranking, self._pos = extra, 0
            return extra[0]
        return first

    def peel_step(self) -> ReductionEvent:
        if self.g.is_empty():
            raise ValueError("cannot peel an empty graph")
        if self._ranking is None and not self._key:
            self._start()
        v = self._pick_adaptive() if self.cfg.mode is Mode.ADAPTIVE else self._pick_non_adaptive()
        if self.cfg.action is Action.INCLUDE:
            return self.red.peel_include(v)
        return self.red.peel_exclude(v)

    def run(self, deadline: float | None = None) -> bool:
        order = self.cfg.reduction_order.order
        if not self.red.run(order, deadline):
            return False
        started = False
        while not self.g.is_empty():
            if deadline is not None and time.monotonic() > deadline:
                return False
            if not started:
                self._start()
                started = True
            self.red.consume_dirty()
            self.peel_step()
            seeds = self.red.region(self.red.consume_dirty())
            self.red.touched_log |= set(seeds)
            if not self.red.run(order, deadline, seeds=seeds, sweep=False):
                return False
            self._refresh()
        return True


def peel_step(lg: LinkGraph, cfg: PeelConfig) -> ReductionEvent:
    """Single peeling step on ``lg`` (mutated in place)."""
    return Peeler(lg, cfg).peel_step()


def redw2pack(g: WeightedGraph | LinkGraph, cfg: PeelConfig | None = None,
              deadline: float | None = None) -> Solution | None:
    """Reduce-and-peel; returns a maximal 2-packing set of ``g``.

    ``deadline`` is a :func:`time.monotonic` timestamp; a run that hits it
    returns ``None``.
    """
    cfg = cfg or PeelConfig()
    lg = LinkGraph.from_graph(g) if isinstance(g, WeightedGraph) else g
    peeler = Peeler(lg.copy(), cfg)
    if not peeler.run(deadline):
        return None
    ri = ReducedInstance(peeler.g, peeler.red.stack, peeler.red.offset, lg)
    return restore(ri, ())


def default_peel_config(seed: int = 0) -> PeelConfig:
    return PeelConfig(seed=seed, reduction_order=ReductionConfig("core", CONFIG_ORDERS["core"]))
