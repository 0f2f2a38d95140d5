"""The Heavy Vertex illustration, encoded as a small link-graph.

The exact subproblem on N2(v) and the cheaper bound both stay below w(v), so
v is included; x and y lose their common neighbor and end up linked.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from helpers import figure1  # noqa: E402
from w2pack import Reducer, brute_mw2ps  # noqa: E402

lg, ix = figure1()
name = {i: s for s, i in ix.items()}
v = ix["v"]
n2 = lg.two_neighborhood(v)
print("N2(v) =", sorted(name[u] for u in n2))
print("exact alpha on N2(v):", brute_mw2ps(lg, within=n2)[0])
print("naive bound w(N2(v)):", lg.weight_of(n2))
print("w_max(N(v)) + w(L(v)):", lg.max_neighbor_weight(v) + lg.weight_of(lg.materialize_links(v)))
print("w(v):", lg.weight[v])

red = Reducer(lg)
ev = red.try_neighborhood_removal(v)
print("included:", [name[u] for u in ev.included], "offset", red.offset)
print("left:", [name[u] for u in lg.vertices()], "links:", [(name[a], name[b]) for a, b in lg.links()])
