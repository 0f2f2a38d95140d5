"""Small graph families and the desk-scale benchmark corpus."""

from __future__ import annotations

import random
from typing import Iterator

from .graph import WeightedGraph
from .io import WeightSpec, generate_weights


def path(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> WeightedGraph:
    return WeightedGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid(rows: int, cols: int) -> WeightedGraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return WeightedGraph.from_edges(rows * cols, edges)


def random_sparse(n: int, m: int, seed: int = 0) -> WeightedGraph:
    """Uniform random simple graph with ``m`` edges."""
    rng = random.Random(seed)
    m = min(m, n * (n - 1) // 2)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return WeightedGraph.from_edges(n, sorted(edges))


def gnp(n: int, p: float, seed: int = 0) -> WeightedGraph:
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return WeightedGraph.from_edges(n, edges)


def random_tree(n: int, seed: int = 0) -> WeightedGraph:
    rng = random.Random(seed)
    return WeightedGraph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


def mini_corpus(seed: int = 0) -> Iterator[tuple[str, WeightedGraph]]:
    """Fifty named instances: paths, cycles, stars, grids, trees, random graphs."""
    shapes = []
    for n in (10, 50, 200, 1000):
        shapes.append((f"path{n}", path(n)))
    for n in (9, 50, 200, 1000):
        shapes.append((f"cycle{n}", cycle(n)))
    for n in (4, 20, 100, 500):
        shapes.append((f"star{n}", star(n)))
    for r, c in ((3, 3), (5, 5), (10, 10), (20, 20)):
        shapes.append((f"grid{r}x{c}", grid(r, c)))
    for n in (50, 200, 1000):
        shapes.append((f"tree{n}", random_tree(n, seed + n)))
    for n in (30, 100, 300, 1000, 2000, 5000):
        shapes.append((f"sparse{n}", random_sparse(n, 2 * n, seed + n)))
    for name, g in shapes:
        for kind in ("unit", "uniform"):
            yield f"{name}-{kind}", generate_weights(g, WeightSpec(kind, seed))
