"""Command-line front end and performance-profile emission.

``w2pack --graph g.metis --solver drp-ls`` solves one instance and prints a
summary; ``--out`` appends JSON-lines run records.  ``w2pack profile`` turns
run records into performance-profile step tables (CSV).

Exit codes: 0 success, 1 input/output or parse error, 2 infeasible result.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .drp import DrpParams, drp
from .graph import LinkGraph, Solution, WeightedGraph
from .io import WEIGHT_KINDS, MetisFormatError, WeightSpec, generate_weights, parse_metis_text, write_solution
from .mwis import MwisSolverSpec, SolverKind, exact_mwis_bb
from .oracle import OracleBudget, OracleBudgetExceeded, brute_mw2ps, is_2packing
from .peel import PeelConfig, redw2pack
from .reductions import reduce_exhaustively, restore
from .transform import PeakMemory, TRANSFORM_CONFIGS, lift, reduce_and_transform

SOLVERS = ("peel", "drp-ls", "drp-exact", "drp-nocore", "exact-pipeline", "oracle")
DRP_PRESETS = {"drp-ls": DrpParams.bchils, "drp-exact": DrpParams.kamis, "drp-nocore": DrpParams.no_core}

EXIT_OK = 0
EXIT_IO = 1
EXIT_INFEASIBLE = 2


@dataclass
class RunRecord:
    instance: str
    config: str
    solver: str
    seed: int
    weight: int
    time_to_best: float
    total_seconds: float
    peak_memory: int
    n_kernel: int
    m_kernel: int
    offset: int
    fully_reduced: bool
    feasible: bool
    proven_optimal: bool = False

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> RunRecord:
        return cls(**json.loads(line))


def solve_instance(g: WeightedGraph, solver: str, config: str = "strong", seed: int = 0,
                   time_limit: float = 10.0, instance: str = "graph",
                   memory: str = "tracemalloc") -> tuple[RunRecord, Solution]:
    """Run one solver on ``g``; the solution is verified before it is returned."""
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}")
    if config not in TRANSFORM_CONFIGS:
        raise ValueError(f"unknown configuration {config!r}")
    t0 = time.perf_counter()
    proven = False
    with PeakMemory(memory) as mem:
        if solver == "oracle":
            w, s = brute_mw2ps(g, budget=OracleBudget(16))
            sol = Solution.of(s, g)
            kern = (g.n, g.m, 0, False)
            t_best = time.perf_counter() - t0
            proven = True
        elif solver == "exact-pipeline":
            inst, ri = reduce_and_transform(g, config, seed=seed)
            res = exact_mwis_bb(inst, MwisSolverSpec(SolverKind.EXACT_BB, time_limit=time_limit, seed=seed))
            sol = lift(res.solution, ri, inst)
            kern = (ri.graph.num_vertices, ri.graph.num_edges, ri.offset, ri.fully_reduced)
            t_best = time.perf_counter() - t0
            proven = res.proven_optimal
        elif solver == "peel":
            lg = LinkGraph.from_graph(g)
            if config == "transform":
                s = redw2pack(lg, PeelConfig(seed=seed))
                sol = Solution.of(s.vertices, g)
                kern = (g.n, g.m, 0, False)
            else:
                ri = reduce_exhaustively(lg, config, seed=seed)
                s = redw2pack(ri.graph, PeelConfig(seed=seed))
                sol = restore(ri, s)
                kern = (ri.graph.num_vertices, ri.graph.num_edges, ri.offset, ri.fully_reduced)
            t_best = time.perf_counter() - t0
            proven = kern[3]
        else:
            params = DRP_PRESETS[solver](time_limit=time_limit, seed=seed)
            res = drp(g, params)
            sol = res.solution
            kk = res.kernel_size
            kern = (kk, res.kernel_edges, res.offset, kk == 0)
            t_best = res.time_to_best
            proven = res.proven_optimal
    total = time.perf_counter() - t0
    feasible = is_2packing(g, sol.vertices)
    rec = RunRecord(instance, config, solver, seed, sol.weight, t_best, total, mem.peak,
                    kern[0], kern[1], kern[2], kern[3], feasible, proven)
    return rec, sol


def geometric_mean(values: Sequence[float]) -> float:
    if not values:
        return 0.0
    if any(v <= 0 for v in values):
        # zero entries make the product vanish
        return 0.0 if any(v == 0 for v in values) else float("nan")
    return math.exp(sum(math.log(v) for v in values) / len(values))


def _run_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="w2pack", description="Maximum weight 2-packing set solver")
    p.add_argument("--graph", required=True, help="METIS graph file")
    p.add_argument("--weights", choices=WEIGHT_KINDS,
                   help="weight model (default: the file's weights, or unit if it has none)")
    p.add_argument("--config", default="strong", choices=TRANSFORM_CONFIGS)
    p.add_argument("--solver", default="drp-ls", choices=SOLVERS)
    p.add_argument("--time-limit", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="append JSON-lines run records here")
    p.add_argument("--solution-out", help="write the solution, one vertex id per line")
    p.add_argument("--repeat", type=int, default=1, help="number of consecutive seeds")
    p.add_argument("--memory", default="tracemalloc", choices=("tracemalloc", "rusage", "off"))
    return p


def _profile_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="w2pack profile", description="Performance profiles from run records")
    p.add_argument("records", nargs="+", help="JSON-lines run record files")
    p.add_argument("--out", help="CSV output path (default stdout)")
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    if argv and argv[0] == "profile":
        return _profile_main(argv[1:], stdout)
    args = _run_parser().parse_args(argv)
    if args.repeat < 1:
        print("error: --repeat must be positive", file=sys.stderr)
        return EXIT_IO
    try:
        with open(args.graph, encoding="utf-8") as fh:
            g, has_weights = parse_metis_text(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.graph}: {exc}", file=sys.stderr)
        return EXIT_IO
    except MetisFormatError as exc:
        print(f"error: {args.graph}: {exc}", file=sys.stderr)
        return EXIT_IO
    kind = args.weights or ("file" if has_weights else "unit")
    if kind == "file" and not has_weights:
        print(f"error: {args.graph} has no vertex weights; choose another --weights kind", file=sys.stderr)
        return EXIT_IO
    name = os.path.basename(args.graph)
    records = []
    best_sol = None
    for r in range(args.repeat):
        seed = args.seed + r
        gw = generate_weights(g, WeightSpec(kind, seed))
        try:
            rec, sol = solve_instance(gw, args.solver, args.config, seed, args.time_limit, name, args.memory)
        except OracleBudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        if not rec.feasible:
            print(f"error: solver {args.solver} returned an infeasible set", file=sys.stderr)
            return EXIT_INFEASIBLE
        records.append(rec)
        if best_sol is None or sol.weight > best_sol.weight:
            best_sol = sol
        print(f"{name} solver={rec.solver} config={rec.config} seed={seed} weight={rec.weight} "
              f"time_to_best={rec.time_to_best:.3f}s total={rec.total_seconds:.3f}s "
              f"kernel_n={rec.n_kernel} offset={rec.offset} fully_reduced={rec.fully_reduced} "
              f"proven={rec.proven_optimal}", file=stdout)
    if args.repeat > 1:
        print(f"{name} geomean weight={geometric_mean([r.weight for r in records]):.3f} "
              f"time_to_best={geometric_mean([r.time_to_best for r in records]):.4f}s "
              f"total={geometric_mean([r.total_seconds for r in records]):.4f}s over {args.repeat} seeds",
              file=stdout)
    try:
        if args.out:
            with open(args.out, "a", encoding="utf-8") as fh:
                for rec in records:
                    fh.write(rec.to_json() + "\n")
        if args.solution_out:
            write_solution(best_sol.vertices, args.solution_out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())


# -- performance profiles ----------------------------------------------

METRICS = ("quality", "time", "memory")


def _aggregate(records: Iterable[RunRecord]) -> dict[str, dict[str, dict[str, float]]]:
    """Per solver and instance, the geometric mean of each metric over seeds."""
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for r in records:
        label = f"{r.solver}:{r.config}" if r.config else r.solver
        groups.setdefault((label, r.instance), []).append(r)
    out: dict[str, dict[str, dict[str, float]]] = {}
    for (label, inst), rs in sorted(groups.items()):
        out.setdefault(label, {})[inst] = {
            "quality": geometric_mean([r.weight for r in rs]),
            "time": geometric_mean([r.time_to_best for r in rs]),
            "memory": geometric_mean([r.peak_memory for r in rs]),
        }
    return out


def _ratio(x: float, ref: float) -> float:
    if ref == 0:
        return 1.0 if x == 0 else math.inf
    return x / ref


def emit_performance_profiles(records: Iterable[RunRecord]) -> dict[str, list[tuple[str, float, float]]]:
    """Step points ``(solver, tau, foi)`` for each metric.

    Quality counts instances with objective at least tau times the best
    (tau <= 1); time and memory count instances within tau times the
    smallest value (tau >= 1).  Steps are listed at every tau where some
    solver's fraction changes.
    """
    agg = _aggregate(records)
    if len(agg) < 2:
        raise ValueError("performance profiles need at least two solvers")
    instances = None
    for label, per in agg.items():
        keys = set(per)
        if instances is None:
            instances = keys
        elif keys != instances:
            raise ValueError(f"solver {label} was run on a different instance set")
    inst_list = sorted(instances)
    n_inst = len(inst_list)
    labels = sorted(agg)
    out = {}
    for metric in METRICS:
        ratios = {lab: [] for lab in labels}
        for inst in inst_list:
            vals = [agg[lab][inst][metric] for lab in labels]
            ref = max(vals) if metric == "quality" else min(vals)
            for lab, x in zip(labels, vals):
                ratios[lab].append(_ratio(x, ref))
        taus = sorted({round(r, 9) for rs in ratios.values() for r in rs if math.isfinite(r)} | {1.0},
                      reverse=(metric == "quality"))
        rows = []
        for lab in labels:
            for tau in taus:
                if metric == "quality":
                    cnt = sum(1 for r in ratios[lab] if r >= tau - 1e-12)
                else:
                    cnt = sum(1 for r in ratios[lab] if r <= tau + 1e-12)
                rows.append((lab, tau, cnt / n_inst))
        out[metric] = rows
    return out


def profiles_csv(profiles: dict[str, list[tuple[str, float, float]]]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", "solver", "tau", "foi"])
    for metric in METRICS:
        for lab, tau, foi in profiles.get(metric, []):
            w.writerow([metric, lab, f"{tau:.6f}", f"{foi:.6f}"])
    return buf.getvalue()


def read_records(paths: Iterable[str]) -> list[RunRecord]:
    out = []
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            for ln in fh:
                if ln.strip():
                    out.append(RunRecord.from_json(ln))
    return out


def _profile_main(argv: Sequence[str], stdout) -> int:
    args = _profile_parser().parse_args(argv)
    try:
        records = read_records(args.records)
        text = profiles_csv(emit_performance_profiles(records))
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except (OSError, ValueError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
