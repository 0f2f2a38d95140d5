"""Square-graph transformation and the reduce&transform pipeline.

A set is a 2-packing set of a link-graph exactly when it is independent in
its square, so after reducing we hand the square of the reduced instance to
an MWIS solver and map its answer back through the reduction stack.
"""

from __future__ import annotations

import resource
import sys
import time
import tracemalloc
from dataclasses import dataclass, field
from typing import Iterable

from .graph import LinkGraph, Solution, WeightedGraph
from .oracle import is_independent
from .reductions import CONFIG_ORDERS, ReducedInstance, ReductionConfig, reduce_exhaustively, restore

TRANSFORM_CONFIGS = ("full", "fast", "strong", "core", "transform")


@dataclass
class MwisInstance:
    """MWIS instance on the square of a reduced link-graph.

    ``vertex_map[i]`` is the link-graph vertex behind MWIS vertex ``i``.
    """

    graph: WeightedGraph
    origin: ReducedInstance | None
    vertex_map: list[int]
    index: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {v: i for i, v in enumerate(self.vertex_map)}

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def to_origin(self, s: Iterable[int]) -> set[int]:
        return {self.vertex_map[i] for i in s}

    def from_origin(self, s: Iterable[int]) -> set[int]:
        return {self.index[v] for v in s}


def square(lg: LinkGraph | WeightedGraph, origin: ReducedInstance | None = None) -> MwisInstance:
    """Join every pair at distance at most two, links included."""
    if isinstance(lg, WeightedGraph):
        lg = LinkGraph.from_graph(lg)
    verts = lg.vertices()
    index = {v: i for i, v in enumerate(verts)}
    adjacency = []
    for v in verts:
        row = set(lg.adj[v])
        for u in lg.adj[v]:
            row.update(lg.adj[u])
        row.update(lg.lnk[v])
        row.discard(v)
        adjacency.append(sorted(index[u] for u in row))
    weights = [lg.weight[v] for v in verts]
    return MwisInstance(WeightedGraph(adjacency, weights), origin, verts, index)


class PeakMemory:
    """Peak-bytes tracker behind a small start/stop interface.

    ``mode="tracemalloc"`` counts Python allocations between start and stop;
    ``mode="rusage"`` reports the process high-water mark instead.
    """

    def __init__(self, mode: str = "tracemalloc"):
        if mode not in ("tracemalloc", "rusage", "off"):
            raise ValueError(f"unknown memory mode {mode!r}")
        self.mode = mode
        self.peak = 0
        self._owned = False

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc):
        self.stop()

    def start(self) -> None:
        if self.mode == "tracemalloc":
            self._owned = not tracemalloc.is_tracing()
            if self._owned:
                tracemalloc.start()
            tracemalloc.reset_peak()

    def stop(self) -> int:
        if self.mode == "tracemalloc":
            self.peak = tracemalloc.get_traced_memory()[1]
            if self._owned:
                tracemalloc.stop()
        elif self.mode == "rusage":
            kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
            # macOS reports bytes, Linux kilobytes
            self.peak = kb if sys.platform == "darwin" else kb * 1024
        return self.peak


@dataclass
class TransformStats:
    config: str
    n_kernel: int
    m_kernel: int
    n_square: int
    m_square: int
    n_full_square: int
    m_full_square: int
    offset: int
    fully_reduced: bool
    seconds: float

    @property
    def n_ratio(self) -> float:
        return self.n_square / self.n_full_square if self.n_full_square else 0.0

    @property
    def m_ratio(self) -> float:
        return self.m_square / self.m_full_square if self.m_full_square else 0.0


def reduce_and_transform(g: WeightedGraph | LinkGraph, config: str = "strong", seed: int | None = None,
                         shuffle: bool = False) -> tuple[MwisInstance, ReducedInstance]:
    """Reduce with a named configuration, then square the reduced instance."""
    if config not in TRANSFORM_CONFIGS:
        raise ValueError(f"unknown configuration {config!r}")
    lg = LinkGraph.from_graph(g) if isinstance(g, WeightedGraph) else g
    t0 = time.perf_counter()
    if config == "transform":
        ri = ReducedInstance(lg.copy(), [], 0, lg)
    else:
        ri = reduce_exhaustively(lg, ReductionConfig(config, CONFIG_ORDERS[config]), seed=seed, shuffle=shuffle)
    inst = square(ri.graph, ri)
    ri.seconds = time.perf_counter() - t0
    return inst, ri


def transform_stats(g: WeightedGraph | LinkGraph, inst: MwisInstance, ri: ReducedInstance, config: str) -> TransformStats:
    full = square(g)
    return TransformStats(config, ri.graph.num_vertices, ri.graph.num_edges, inst.n, inst.m, full.n, full.m,
                          ri.offset, ri.fully_reduced, ri.seconds)


def lift(mwis_solution: Solution | Iterable[int], ri: ReducedInstance, inst: MwisInstance | None = None) -> Solution:
    """Map an independent set of the square back to a 2-packing set of the input."""
    s = set(mwis_solution.vertices if isinstance(mwis_solution, Solution) else mwis_solution)
    if inst is None:
        inst = square(ri.graph, ri)
    if not is_independent(inst.graph, s):
        raise ValueError("solution is not independent in the transformed instance")
    return restore(ri, inst.to_origin(s))
