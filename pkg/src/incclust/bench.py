"""Benchmark harness for batch-vs-incremental clustering cost.

Times batch fits across growing dataset sizes and incremental inserts across
growing increments, merges the two into growth-percentage comparison tables,
locates the crossover threshold, and races the two algorithms side by side.

Measurement protocol: per workload, `warmup` untimed runs followed by `trials`
timed runs on a monotonic nanosecond clock, summarised by the lower-middle
median. Timed regions never include dataset generation, model cloning, or
I/O. Alongside wall-clock, every timed run records the number of pairwise
distance evaluations it performed, which gives a machine-independent cost
measure. Execution is strictly sequential while timing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from incclust import dbscan, kmeans
from incclust.dataset import Dataset, Metric, distance_calls, generate_synthetic, load_csv
from incclust.dbscan import DbscanParams
from incclust.delta import (
    ComparisonRow,
    CrossoverResult,
    NoCrossover,
    build_comparison,
    crossover_threshold,
    write_comparison_csv,
    write_crossover_json,
)

ALGORITHMS = ("kmeans", "dbscan")

TIMING_CSV_HEADER = "algorithm,mode,workload_size,trials,distance_calls,median_ms,trial_ns"

SIDE_BY_SIDE_HEADER = (
    "delta_percent,kmeans_incremental_ms,dbscan_incremental_ms,"
    "faster_incremental,kmeans_incremental_calls,dbscan_incremental_calls"
)


def lower_median(values):
    """Exact median, taking the lower-middle element for even counts."""
    if not values:
        raise ValueError("median of an empty list")
    return sorted(values)[(len(values) - 1) // 2]


@dataclass
class TimingRecord:
    """One benchmark measurement: workload descriptor plus per-trial timings."""

    algorithm: str
    mode: str  # "batch" or "incremental"
    workload_size: int  # total points for batch, inserted points for incremental
    elapsed_ns: list[int]
    distance_calls: int

    @property
    def trials(self) -> int:
        return len(self.elapsed_ns)

    @property
    def summary_ns(self) -> int:
        return lower_median(self.elapsed_ns)

    @property
    def median_ms(self) -> int:
        return round(self.summary_ns / 1_000_000)


@dataclass
class BenchConfig:
    base_size: int = 500
    batch_sizes: list[int] = field(default_factory=lambda: list(range(500, 1101, 100)))
    increment_sizes: list[int] = field(default_factory=lambda: list(range(100, 501, 100)))
    trials: int = 5
    warmup: int = 2
    seed: int = 42
    # synthetic workload
    dim: int = 4
    n_blobs: int = 3
    blob_spread: float = 1.0
    outlier_fraction: float = 0.05
    data_csv: str | None = None  # load this CSV instead of generating
    # algorithm parameters (metric is shared)
    metric: Metric = Metric.MANHATTAN
    k: int = 3
    init_seed: int = 0
    max_iter: int = 100
    tol: float = 1e-6
    outlier_radius: float | None = None
    eps: float = 6.0
    min_pts: int = 5
    output_dir: str = "bench_out"

    def dbscan_params(self) -> DbscanParams:
        return DbscanParams(self.eps, self.min_pts, self.metric)

    def max_points_needed(self) -> int:
        sizes = [self.base_size]
        sizes += list(self.batch_sizes)
        sizes += [self.base_size + d for d in self.increment_sizes]
        return max(sizes)

    def validate(self) -> None:
        if self.base_size < 1:
            raise ValueError(f"base_size must be positive, got {self.base_size}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.warmup < 0:
            raise ValueError(f"warmup must be non-negative, got {self.warmup}")
        if not self.batch_sizes:
            raise ValueError("batch_sizes must not be empty")
        if any(s < 1 for s in self.batch_sizes):
            raise ValueError(f"batch sizes must be positive, got {self.batch_sizes}")
        if len(set(self.batch_sizes)) != len(self.batch_sizes):
            raise ValueError(f"batch sizes must be distinct, got {self.batch_sizes}")
        if any(d < 0 for d in self.increment_sizes):
            raise ValueError(f"increment sizes must be non-negative, got {self.increment_sizes}")
        if len(set(self.increment_sizes)) != len(self.increment_sizes):
            raise ValueError(f"increment sizes must be distinct, got {self.increment_sizes}")
        missing = [d for d in self.increment_sizes if self.base_size + d not in self.batch_sizes]
        if missing:
            raise ValueError(
                f"every increment needs a matching batch size: increments {missing} "
                f"have no batch size {[self.base_size + d for d in missing]}"
            )


def load_workload(config: BenchConfig) -> Dataset:
    """The benchmark dataset: the configured CSV, or seeded synthetic blobs."""
    need = config.max_points_needed()
    if config.data_csv is not None:
        data = load_csv(config.data_csv, config.dim)
    else:
        data = generate_synthetic(
            need, config.dim, config.n_blobs, config.blob_spread, config.outlier_fraction, config.seed
        )
    if len(data) < need:
        raise ValueError(f"dataset has {len(data)} points but the configured workloads need {need}")
    return data


def _fit_once(config: BenchConfig, algorithm: str, data: Dataset):
    if algorithm == "kmeans":
        return kmeans.fit(
            data,
            config.k,
            config.metric,
            init_seed=config.init_seed,
            max_iter=config.max_iter,
            tol=config.tol,
            outlier_radius=config.outlier_radius,
        )
    if algorithm == "dbscan":
        return dbscan.fit(data, config.dbscan_params())
    raise ValueError(f"unknown algorithm {algorithm!r} (expected one of: {', '.join(ALGORITHMS)})")


def run_batch_suite(config: BenchConfig, algorithm: str, data: Dataset | None = None) -> list[TimingRecord]:
    """Time full batch fits at each configured dataset size."""
    config.validate()
    if data is None:
        data = load_workload(config)
    need = max(config.batch_sizes)
    if len(data) < need:
        raise ValueError(f"dataset has {len(data)} points but batch sizes need {need}")

    records = []
    for size in config.batch_sizes:
        subset = data.head(size)
        for _ in range(config.warmup):
            _fit_once(config, algorithm, subset)
        elapsed = []
        calls = 0
        for _ in range(config.trials):
            c0 = distance_calls()
            t0 = time.perf_counter_ns()
            _fit_once(config, algorithm, subset)
            t1 = time.perf_counter_ns()
            calls = distance_calls() - c0
            elapsed.append(t1 - t0)
        records.append(TimingRecord(algorithm, "batch", size, elapsed, calls))
    return records


def run_incremental_suite(config: BenchConfig, algorithm: str, data: Dataset | None = None) -> list[TimingRecord]:
    """Fit a base model once (untimed), then time inserting each increment into a clone."""
    config.validate()
    if data is None:
        data = load_workload(config)
    need = config.base_size + max(config.increment_sizes, default=0)
    if len(data) < need:
        raise ValueError(f"dataset has {len(data)} points but increments need {need}")

    base_model = _fit_once(config, algorithm, data.head(config.base_size))
    records = []
    for d in config.increment_sizes:
        arriving = data.points[config.base_size : config.base_size + d]
        for _ in range(config.warmup):
            base_model.copy().insert(arriving)
        elapsed = []
        calls = 0
        for _ in range(config.trials):
            model = base_model.copy()  # cloning stays outside the timed region
            c0 = distance_calls()
            t0 = time.perf_counter_ns()
            model.insert(arriving)
            t1 = time.perf_counter_ns()
            calls = distance_calls() - c0
            elapsed.append(t1 - t0)
        records.append(TimingRecord(algorithm, "incremental", d, elapsed, calls))
    return records


@dataclass
class ComparisonReport:
    """Everything run_comparison measured, per algorithm plus side-by-side rows."""

    config: BenchConfig
    batch: dict[str, list[TimingRecord]]
    incremental: dict[str, list[TimingRecord]]
    tables: dict[str, list[ComparisonRow]]
    crossovers: dict[str, CrossoverResult | NoCrossover]

    def side_by_side(self) -> list[dict]:
        """One row per growth percentage: both incremental times, which
        algorithm's incremental mode was faster, and the distance-call counts."""
        inc_by_d = {
            algo: {r.workload_size: r for r in self.incremental[algo]} for algo in ALGORITHMS
        }
        rows = []
        for km_row, db_row in zip(self.tables["kmeans"], self.tables["dbscan"]):
            d = round(self.config.base_size * km_row.delta_percent / 100)
            km_ms, db_ms = km_row.incremental_ms, db_row.incremental_ms
            faster = "tie" if km_ms == db_ms else ("kmeans" if km_ms < db_ms else "dbscan")
            rows.append(
                {
                    "delta_percent": km_row.delta_percent,
                    "kmeans_incremental_ms": km_ms,
                    "dbscan_incremental_ms": db_ms,
                    "faster_incremental": faster,
                    "kmeans_incremental_calls": inc_by_d["kmeans"][d].distance_calls,
                    "dbscan_incremental_calls": inc_by_d["dbscan"][d].distance_calls,
                }
            )
        return rows


def run_comparison(config: BenchConfig, data: Dataset | None = None) -> ComparisonReport:
    """Run batch and incremental suites for both algorithms on one shared
    dataset and combine them into comparison tables and crossover results."""
    config.validate()
    if data is None:
        data = load_workload(config)
    batch: dict[str, list[TimingRecord]] = {}
    incremental: dict[str, list[TimingRecord]] = {}
    tables: dict[str, list[ComparisonRow]] = {}
    crossovers: dict[str, CrossoverResult | NoCrossover] = {}
    for algo in ALGORITHMS:
        batch[algo] = run_batch_suite(config, algo, data)
        incremental[algo] = run_incremental_suite(config, algo, data)
        actual = [(r.workload_size, r.median_ms) for r in batch[algo]]
        arriving = [(r.workload_size, r.median_ms) for r in incremental[algo]]
        tables[algo] = build_comparison(actual, arriving, config.base_size)
        if len(tables[algo]) >= 2:
            crossovers[algo] = crossover_threshold(tables[algo])
        else:
            crossovers[algo] = NoCrossover("fewer than two comparison rows measured")
    return ComparisonReport(config, batch, incremental, tables, crossovers)


def emit_timing_csv(records: list[TimingRecord], path) -> None:
    """Timing records as CSV; trial_ns keeps the raw per-trial measurements."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(TIMING_CSV_HEADER + "\n")
        for r in records:
            trial_ns = ";".join(str(ns) for ns in r.elapsed_ns)
            f.write(
                f"{r.algorithm},{r.mode},{r.workload_size},{r.trials},"
                f"{r.distance_calls},{r.median_ms},{trial_ns}\n"
            )


def emit_csv(items, path) -> None:
    """Write timing records or comparison rows as CSV (empty list -> header-only timing CSV)."""
    if items and isinstance(items[0], ComparisonRow):
        write_comparison_csv(items, path)
    else:
        emit_timing_csv(items, path)


def emit_plot_data(items, path) -> None:
    """Whitespace-separated series for plotting: two columns for timing
    records (size, median ms), three for comparison rows (delta, actual,
    incremental)."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        if items and isinstance(items[0], ComparisonRow):
            f.write("# delta_percent actual_ms incremental_ms\n")
            for r in items:
                f.write(f"{r.delta_percent!r} {r.actual_ms} {r.incremental_ms}\n")
        else:
            f.write("# workload_size median_ms\n")
            for r in items:
                f.write(f"{r.workload_size} {r.median_ms}\n")


_PLOT_STUB = '''#!/usr/bin/env python3
"""Render the .dat series in this directory (generated stub, edit freely)."""
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

here = Path(__file__).parent
for algo in ("kmeans", "dbscan"):
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    batch = np.loadtxt(here / f"{algo}_batch.dat", ndmin=2)
    inc = np.loadtxt(here / f"{algo}_incremental.dat", ndmin=2)
    ax1.plot(batch[:, 0], batch[:, 1], "o-", label="batch fit")
    ax1.plot(inc[:, 0], inc[:, 1], "s-", label="incremental insert")
    ax1.set_xlabel("workload size (points)")
    ax1.set_ylabel("median time (ms)")
    ax1.legend()
    overlay = np.loadtxt(here / f"{algo}_overlay.dat", ndmin=2)
    ax2.plot(overlay[:, 0], overlay[:, 1], "o-", label="batch re-fit")
    ax2.plot(overlay[:, 0], overlay[:, 2], "s-", label="incremental")
    ax2.set_xlabel("database growth (%)")
    ax2.set_ylabel("median time (ms)")
    ax2.legend()
    fig.suptitle(algo)
    fig.tight_layout()
    fig.savefig(here / f"{algo}.png", dpi=120)
    print(f"wrote {here / (algo + '.png')}")
'''


def write_report(report: ComparisonReport, out_dir) -> list[Path]:
    """Write every table, crossover result, and plot series to out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def _track(path):
        written.append(path)
        return path

    for algo in ALGORITHMS:
        emit_timing_csv(report.batch[algo], _track(out / f"{algo}_batch_timings.csv"))
        emit_timing_csv(report.incremental[algo], _track(out / f"{algo}_incremental_timings.csv"))
        write_comparison_csv(report.tables[algo], _track(out / f"{algo}_comparison.csv"))
        write_crossover_json(report.crossovers[algo], _track(out / f"{algo}_crossover.json"))
        emit_plot_data(report.batch[algo], _track(out / f"{algo}_batch.dat"))
        emit_plot_data(report.incremental[algo], _track(out / f"{algo}_incremental.dat"))
        emit_plot_data(report.tables[algo], _track(out / f"{algo}_overlay.dat"))

    with open(_track(out / "comparison_report.csv"), "w", encoding="utf-8", newline="") as f:
        f.write(SIDE_BY_SIDE_HEADER + "\n")
        for row in report.side_by_side():
            f.write(
                f"{row['delta_percent']!r},{row['kmeans_incremental_ms']},{row['dbscan_incremental_ms']},"
                f"{row['faster_incremental']},{row['kmeans_incremental_calls']},{row['dbscan_incremental_calls']}\n"
            )

    with open(_track(out / "plot_results.py"), "w", encoding="utf-8", newline="") as f:
        f.write(_PLOT_STUB)
    return written
