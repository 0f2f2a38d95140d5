"""Compare plain reduce-and-peel with the difference-core search on one graph
and print how the best weight evolves over time.

    python3 demos/drp_anytime.py [n] [seconds]
"""

import sys

from w2pack import DrpParams, drp, redw2pack
from w2pack.generators import random_sparse
from w2pack.io import WeightSpec, generate_weights


def main(n=300, seconds=30.0):
    g = generate_weights(random_sparse(n, 3 * n, seed=7), WeightSpec("uniform", 7))
    single = redw2pack(g)
    print(f"one reduce-and-peel pass: {single.weight}")

    for params in (DrpParams.no_core(time_limit=seconds), DrpParams.bchils(time_limit=seconds, t_H=5),
                   DrpParams.kamis(time_limit=seconds, t_H=5)):
        res = drp(g, params)
        steps = " -> ".join(f"{w}@{t:.1f}s" for t, w in res.trace)
        print(f"{params.name}: {res.solution.weight} after {res.peels} peels and {res.rounds} core solves")
        print(f"  kernel {res.kernel_size} vertices, trace {steps}")


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 300
    t = float(sys.argv[2]) if len(sys.argv) > 2 else 30.0
    main(n, t)
