"""METIS graph files, vertex weight generators and solution files."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import GraphError, WeightedGraph

WEIGHT_KINDS = ("unit", "uniform", "geometric", "degree", "hybrid", "file")
MAX_WEIGHT = 200


class MetisFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _parse_fmt(token: str, lineno: int) -> tuple[bool, bool]:
    if not token.isdigit() or len(token) > 3 or set(token) - {"0", "1"}:
        raise MetisFormatError(f"unsupported fmt field {token!r}", lineno)
    token = token.zfill(3)
    if token[0] == "1":
        raise MetisFormatError("vertex sizes are not supported", lineno)
    return token[1] == "1", token[2] == "1"


def parse_metis_text(text: str) -> tuple[WeightedGraph, bool]:
    """Parse METIS text; returns the graph and whether weights were present."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if not ln.lstrip().startswith("%")]
    if not rows:
        raise MetisFormatError("missing header", 1)
    hline, header = rows[0]
    parts = header.split()
    if len(parts) < 2 or len(parts) > 4:
        raise MetisFormatError("header must be 'n m [fmt [ncon]]'", hline)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise MetisFormatError("header fields n and m must be integers", hline) from None
    if n < 0 or m < 0:
        raise MetisFormatError("negative vertex or edge count", hline)
    vweights, eweights = _parse_fmt(parts[2], hline) if len(parts) >= 3 else (False, False)
    if len(parts) == 4 and parts[3] != "1":
        raise MetisFormatError("only one vertex weight per vertex is supported", hline)
    body = rows[1:]
    while len(body) > n and not body[-1][1].strip():
        body.pop()
    if len(body) != n:
        raise MetisFormatError(f"expected {n} vertex lines, found {len(body)}", body[-1][0] if len(body) > n else hline)
    adjacency: list[list[int]] = []
    weights: list[int] = []
    line_of: list[int] = []
    for v, (lineno, ln) in enumerate(body):
        try:
            nums = [int(t) for t in ln.split()]
        except ValueError:
            raise MetisFormatError("non-integer token", lineno) from None
        if vweights:
            if not nums:
                raise MetisFormatError("missing vertex weight", lineno)
            w = nums.pop(0)
            if w < 0:
                raise MetisFormatError("negative vertex weight", lineno)
            weights.append(w)
        else:
            weights.append(1)
        if eweights:
            if len(nums) % 2:
                raise MetisFormatError("edge weight without neighbor", lineno)
            nums = nums[0::2]
        row = []
        seen = set()
        for u in nums:
            if not 1 <= u <= n:
                raise MetisFormatError(f"neighbor id {u} out of range 1..{n}", lineno)
            if u - 1 == v:
                raise MetisFormatError("self-loop", lineno)
            if u - 1 in seen:
                raise MetisFormatError(f"duplicate neighbor {u}", lineno)
            seen.add(u - 1)
            row.append(u - 1)
        adjacency.append(row)
        line_of.append(lineno)
    sets = [set(r) for r in adjacency]
    for v, row in enumerate(adjacency):
        for u in row:
            if v not in sets[u]:
                raise MetisFormatError(f"asymmetric edge {v + 1}-{u + 1}: vertex {u + 1} does not list {v + 1}",
                                       line_of[v])
    total = sum(len(r) for r in adjacency) // 2
    if total != m:
        raise MetisFormatError(f"header claims {m} edges, adjacency has {total}", hline)
    return WeightedGraph(adjacency, weights), vweights


def parse_metis(path: str | os.PathLike) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MetisFormatError(f"cannot read {path}: {exc}") from exc
    return parse_metis_text(text)[0]


def metis_text(g: WeightedGraph, weighted: bool | None = None) -> str:
    if weighted is None:
        weighted = any(w != 1 for w in g.weights)
    out = [f"{g.n} {g.m} 10" if weighted else f"{g.n} {g.m}"]
    for v in range(g.n):
        nb = " ".join(str(u + 1) for u in g.adjacency[v])
        if weighted:
            out.append(f"{g.weights[v]} {nb}".rstrip())
        else:
            out.append(nb)
    return "\n".join(out) + "\n"


def write_metis(g: WeightedGraph, path: str | os.PathLike, weighted: bool | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(metis_text(g, weighted))


@dataclass(frozen=True)
class WeightSpec:
    kind: str = "unit"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")


def generate_weights(g: WeightedGraph, spec: WeightSpec | str) -> WeightedGraph:
    """Return ``g`` with weights drawn per ``spec``; ``file`` keeps them."""
    if isinstance(spec, str):
        spec = WeightSpec(spec)
    n = g.n
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "file":
        return g
    if spec.kind == "unit":
        w = [1] * n
    elif spec.kind == "uniform":
        w = rng.integers(1, MAX_WEIGHT + 1, size=n).tolist()
    elif spec.kind == "geometric":
        w = np.clip(rng.geometric(0.5, size=n), 1, MAX_WEIGHT).tolist()
    elif spec.kind == "degree":
        w = [g.degree(v) + 1 for v in range(n)]
    else:
        w = [v % MAX_WEIGHT + 1 for v in range(n)]
    return g.with_weights([int(x) for x in w])


def write_solution(vertices: Iterable[int], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in sorted(vertices):
            fh.write(f"{v}\n")


def read_solution(path: str | os.PathLike) -> list[int]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, ln in enumerate(fh, 1):
            ln = ln.strip()
            if not ln:
                continue
            try:
                out.append(int(ln))
            except ValueError:
                raise MetisFormatError(f"bad vertex id {ln!r}", lineno) from None
    return out
