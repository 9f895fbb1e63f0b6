"""Benchmark harness: complexity-law experiments over tree/guard variants.

Experiment 1 measures the average number of leaves visited per query on
a batch-built tree as the database grows, for the Euclidean and
Reeds-Shepp metrics.  The Euclidean curve settles to a constant while
the Reeds-Shepp curve grows like N**(1/6); the emitted CSV carries the
normalized column so the flattening is directly visible.

Experiment 2 compares build/guard/splitting combinations on identical
data and query sequences: distance evaluations per query and wall
times for incremental-classic (Euclidean, RS+EB, RS+BB), batch (RS+BB)
and incremental-Lie (RS+BB).

All sampling is seeded; counters are deterministic for a fixed config
and seed.  Wall-time columns are reported for context but are the only
nondeterministic part of the output.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .kdtree import KdTree
from .metrics import make_metric
from .se2 import SE2Point

METRICS = ("euclidean", "reeds-shepp")
INTERSECTIONS = ("eb", "bb")
BUILDS = ("batch", "incremental")
SPLITTINGS = ("classic", "lie")

# The normalization exponent for the leaves_norm column: the predicted
# query-complexity exponent of the Reeds-Shepp weights (1, 2, 1).
RS_EXPONENT = 1.0 / 6.0


def complexity_exponent(weights: Sequence[int]) -> Fraction:
    """Predicted exponent p with E[vertices visited] ~ N**p * log N.

    p = sum over weights w_i <= W/k of (1/k - w_i/W), where W is the
    total weight and k the dimension.  Exact rational arithmetic.
    """
    ws = list(weights)
    if not ws:
        raise ValueError("weights must be nonempty")
    if any(w <= 0 or w != int(w) for w in ws):
        raise ValueError(f"weights must be positive integers, got {weights!r}")
    k = len(ws)
    total = sum(ws)
    threshold = Fraction(total, k)
    p = Fraction(0)
    for w in ws:
        if w <= threshold:
            p += Fraction(1, k) - Fraction(w, total)
    return p


@dataclass(frozen=True)
class Region:
    """Planar sampling box; headings always cover the full circle."""

    x1_min: float = -10.0
    x1_max: float = 10.0
    x2_min: float = -10.0
    x2_max: float = 10.0

    def __post_init__(self):
        if not (self.x1_min < self.x1_max and self.x2_min < self.x2_max):
            raise ValueError(f"degenerate region {self}")


@dataclass
class BenchConfig:
    metric: str = "reeds-shepp"
    intersection: str = "bb"
    build: str = "batch"
    splitting: str = "classic"
    sizes: tuple[int, ...] = ()
    queries: int = 1000
    m: int = 1
    seed: int = 0
    region: Region = field(default_factory=Region)
    out: str | None = None
    parallel: bool = False

    def validate(self) -> "BenchConfig":
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.intersection not in INTERSECTIONS:
            raise ValueError(
                f"intersection must be one of {INTERSECTIONS}, got {self.intersection!r}"
            )
        if self.build not in BUILDS:
            raise ValueError(f"build must be one of {BUILDS}, got {self.build!r}")
        if self.splitting not in SPLITTINGS:
            raise ValueError(
                f"splitting must be one of {SPLITTINGS}, got {self.splitting!r}"
            )
        if self.splitting == "lie" and self.build != "incremental":
            raise ValueError("lie splitting is defined only for incremental builds")
        if any(n < 1 for n in self.sizes):
            raise ValueError(f"sizes must be positive, got {self.sizes!r}")
        if self.queries < 1:
            raise ValueError(f"queries must be >= 1, got {self.queries}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        return self


@dataclass
class BenchRecord:
    metric: str
    intersection: str
    build: str
    splitting: str
    n: int
    leaves_mean: float
    vertices_mean: float
    dist_evals_mean: float
    build_dist_evals: int
    build_time_us: float
    query_time_us_mean: float
    leaves_norm: float


CSV_COLUMNS = (
    "metric",
    "intersection",
    "build",
    "splitting",
    "n",
    "leaves_mean",
    "vertices_mean",
    "dist_evals_mean",
    "build_dist_evals",
    "build_time_us",
    "query_time_us_mean",
    "leaves_norm",
)

# Wall-clock columns are exempt from the determinism contract.
TIME_COLUMNS = ("build_time_us", "query_time_us_mean")


def sample_points(rng: np.random.Generator, n: int, region: Region) -> list[SE2Point]:
    x1 = rng.uniform(region.x1_min, region.x1_max, n)
    x2 = rng.uniform(region.x2_min, region.x2_max, n)
    x3 = rng.uniform(-math.pi, math.pi, n)
    return [SE2Point(float(a), float(b), float(c)) for a, b, c in zip(x1, x2, x3)]


def dataset_for(cfg: BenchConfig, n: int) -> tuple[list[SE2Point], list[SE2Point]]:
    """Data and query points for one tree size; per-size seeded stream."""
    rng = np.random.default_rng([cfg.seed, n])
    data = sample_points(rng, n, cfg.region)
    queries = sample_points(rng, cfg.queries, cfg.region)
    return data, queries


def build_tree(build: str, splitting: str, points: Sequence[SE2Point]) -> tuple[KdTree, float]:
    """Construct a tree, returning it with the build wall time in us."""
    t0 = time.perf_counter_ns()
    if build == "batch":
        tree = KdTree.batch_build(points)
    else:
        tree = KdTree(splitting).extend(points)
    return tree, (time.perf_counter_ns() - t0) / 1e3


def run_queries(
    tree: KdTree,
    queries: Sequence[SE2Point],
    metric_name: str,
    intersection: str,
    m: int,
    build: str,
    splitting: str,
    build_time_us: float,
) -> BenchRecord:
    metric = make_metric(metric_name, intersection)
    # Warm-up round: JIT'ed kernels and caches, excluded from timing.
    tree.query(queries[0], m, metric)
    leaves = vertices = dist_evals = 0
    t_total_ns = 0
    for q in queries:
        t0 = time.perf_counter_ns()
        _, stats = tree.query(q, m, metric)
        t_total_ns += time.perf_counter_ns() - t0
        leaves += stats.leaves_visited
        vertices += stats.vertices_visited
        dist_evals += stats.distance_evaluations
    nq = len(queries)
    n = tree.size
    return BenchRecord(
        metric=metric_name,
        intersection=intersection,
        build=build,
        splitting=splitting,
        n=n,
        leaves_mean=leaves / nq,
        vertices_mean=vertices / nq,
        dist_evals_mean=dist_evals / nq,
        build_dist_evals=0,  # k-d tree construction never evaluates the metric
        build_time_us=build_time_us,
        query_time_us_mean=t_total_ns / nq / 1e3,
        leaves_norm=(leaves / nq) / n**RS_EXPONENT,
    )


# Experiment row sets: (metric, intersection, build, splitting).
EXPERIMENT1_ROWS = (
    ("euclidean", "eb", "batch", "classic"),
    ("reeds-shepp", "bb", "batch", "classic"),
    ("euclidean", "eb", "incremental", "classic"),
)

EXPERIMENT2_ROWS = (
    ("euclidean", "eb", "incremental", "classic"),
    ("reeds-shepp", "eb", "incremental", "classic"),
    ("reeds-shepp", "bb", "incremental", "classic"),
    ("reeds-shepp", "bb", "batch", "classic"),
    ("reeds-shepp", "bb", "incremental", "lie"),
)


def _run_size_cell(args) -> list[BenchRecord]:
    cfg, n, rows = args
    data, queries = dataset_for(cfg, n)
    trees: dict[tuple[str, str], tuple[KdTree, float]] = {}
    records = []
    for metric_name, intersection, build, splitting in rows:
        key = (build, splitting)
        if key not in trees:
            trees[key] = build_tree(build, splitting, data)
        tree, build_us = trees[key]
        records.append(
            run_queries(
                tree, queries, metric_name, intersection, cfg.m, build, splitting, build_us
            )
        )
    return records


def _run_rows(cfg: BenchConfig, rows) -> list[BenchRecord]:
    cells = [(cfg, n, rows) for n in cfg.sizes]
    if cfg.parallel and len(cells) > 1:
        with ProcessPoolExecutor() as pool:
            per_size = list(pool.map(_run_size_cell, cells))
    else:
        per_size = [_run_size_cell(c) for c in cells]
    return [rec for group in per_size for rec in group]


def run_experiment1(cfg: BenchConfig) -> list[BenchRecord]:
    """Leaves-visited scaling on a batch tree (plus the incremental
    Euclidean comparison curve)."""
    cfg.validate()
    if cfg.build != "batch":
        raise ValueError("experiment 1 measures batch-built trees")
    return _run_rows(cfg, EXPERIMENT1_ROWS)


def run_experiment2(cfg: BenchConfig) -> list[BenchRecord]:
    """Distance evaluations and wall times for the five standard
    build/metric/guard combinations."""
    cfg.validate()
    return _run_rows(cfg, EXPERIMENT2_ROWS)


def emit_csv(records: Iterable[BenchRecord], path: str | None = None) -> str:
    """Records as an RFC-4180 CSV with a fixed column order.

    Floats are written with repr so a round-trip read reproduces the
    records exactly.  Returns the text; also writes ``path`` if given.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([getattr(rec, col) for col in CSV_COLUMNS])
    text = buf.getvalue()
    if path is not None:
        try:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return text


def read_csv(source: str) -> list[BenchRecord]:
    """Parse a CSV produced by :func:`emit_csv` (text or file path)."""
    if "\n" not in source:
        with open(source, newline="") as fh:
            text = fh.read()
    else:
        text = source
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError("CSV header does not match the benchmark schema")
    records = []
    for row in rows[1:]:
        vals = dict(zip(CSV_COLUMNS, row))
        records.append(
            BenchRecord(
                metric=vals["metric"],
                intersection=vals["intersection"],
                build=vals["build"],
                splitting=vals["splitting"],
                n=int(vals["n"]),
                leaves_mean=float(vals["leaves_mean"]),
                vertices_mean=float(vals["vertices_mean"]),
                dist_evals_mean=float(vals["dist_evals_mean"]),
                build_dist_evals=int(vals["build_dist_evals"]),
                build_time_us=float(vals["build_time_us"]),
                query_time_us_mean=float(vals["query_time_us_mean"]),
                leaves_norm=float(vals["leaves_norm"]),
            )
        )
    return records
