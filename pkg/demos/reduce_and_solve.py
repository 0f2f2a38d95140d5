"""Shrink a random sparse graph with the exact reductions, solve the square
of what is left exactly and map the answer back.

    python3 demos/reduce_and_solve.py [n] [seed]
"""

import sys

from w2pack import is_2packing, lift, reduce_and_transform, square
from w2pack.generators import random_sparse
from w2pack.io import WeightSpec, generate_weights
from w2pack.mwis import MwisSolverSpec, SolverKind, exact_mwis_bb


def main(n=400, seed=1):
    g = generate_weights(random_sparse(n, 2 * n, seed), WeightSpec("uniform", seed))
    full = square(g)
    print(f"input: n={g.n} m={g.m}, its square has {full.m} edges")

    for config in ("fast", "core", "strong", "full"):
        inst, ri = reduce_and_transform(g, config, seed=seed)
        rep = ri.report()
        print(f"{config:>6}: kernel n={rep['n']} m={rep['m']} links={rep['links']} "
              f"offset={rep['offset']} square edges={inst.m} ({rep['seconds']:.2f}s)")

    inst, ri = reduce_and_transform(g, "strong", seed=seed)
    res = exact_mwis_bb(inst, MwisSolverSpec(SolverKind.EXACT_BB, time_limit=30))
    sol = lift(res.solution, ri, inst)
    assert is_2packing(g, sol.vertices)
    print(f"2-packing set of weight {sol.weight} with {len(sol)} vertices, proven optimal: {res.proven_optimal}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
