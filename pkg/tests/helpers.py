"""Random instance builders shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from w2pack.graph import LinkGraph, WeightedGraph


def random_graph(rng: random.Random, n_max: int = 14, w_max: int = 20, n_min: int = 0,
                 density: tuple[float, float] = (0.05, 0.5)) -> WeightedGraph:
    n = rng.randint(n_min, n_max)
    p = rng.uniform(*density)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return WeightedGraph.from_edges(n, edges, [rng.randint(1, w_max) for _ in range(n)])


def random_link_graph(rng: random.Random, n_max: int = 14, w_max: int = 20, links: int = 3) -> LinkGraph:
    """Random graph plus a few random links between non-adjacent pairs."""
    lg = LinkGraph.from_graph(random_graph(rng, n_max, w_max))
    n = lg.capacity
    for _ in range(rng.randint(0, links)):
        if n < 2:
            break
        a, b = rng.sample(range(n), 2)
        if not lg.adjacent(a, b):
            lg.add_link(a, b)
    return lg


@st.composite
def graphs(draw, n_max: int = 10, w_max: int = 20) -> WeightedGraph:
    n = draw(st.integers(0, n_max))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    weights = draw(st.lists(st.integers(1, w_max), min_size=n, max_size=n))
    return WeightedGraph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep], weights)


@st.composite
def link_graphs(draw, n_max: int = 10, w_max: int = 20) -> LinkGraph:
    lg = LinkGraph.from_graph(draw(graphs(n_max, w_max)))
    n = lg.capacity
    if n >= 2:
        extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=4))
        for a, b in extra:
            if a != b and not lg.adjacent(a, b):
                lg.add_link(a, b)
    return lg


def figure1() -> tuple[LinkGraph, dict[str, int]]:
    """Encoding of the Heavy Vertex illustration.

    v has neighbors a, b, c (a and b adjacent) and link-neighbors d, e;
    x and y hang off d, and e is linked to x.
    """
    names = ["v", "a", "b", "c", "d", "e", "x", "y"]
    ix = {s: i for i, s in enumerate(names)}
    weights = [10, 4, 2, 2, 3, 2, 1, 1]
    edges = [("v", "a"), ("v", "b"), ("v", "c"), ("a", "b"), ("a", "d"), ("b", "e"), ("d", "x"), ("d", "y")]
    g = WeightedGraph.from_edges(len(names), [(ix[a], ix[b]) for a, b in edges], weights)
    lg = LinkGraph.from_graph(g)
    lg.add_link(ix["e"], ix["x"])
    return lg, ix
