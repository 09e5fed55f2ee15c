"""Relative database growth, batch-vs-incremental comparison rows, and the
crossover threshold where incremental insertion stops being cheaper than a
full batch re-fit."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

INTERPOLATION_METHOD = "piecewise-linear interpolation"


def delta_percent(old_size: int, new_size: int) -> float:
    """Percentage growth from old_size to new_size: (new - old) / old * 100.

    Computed in exact rational arithmetic, so e.g. (500, 600) -> 20.0 exactly.
    Insert-only: new_size must not be below old_size.
    """
    if old_size == 0:
        raise ValueError("undefined baseline: old size is zero")
    if old_size < 0 or new_size < 0:
        raise ValueError(f"sizes must be non-negative, got {old_size} and {new_size}")
    if new_size < old_size:
        raise ValueError(f"insert-only workload: new size {new_size} is below old size {old_size}")
    return float(Fraction((new_size - old_size) * 100, old_size))


@dataclass(frozen=True)
class ComparisonRow:
    """One growth step: batch re-fit time of old+new data vs incremental
    insert time of the new data only, both in integer milliseconds."""

    delta_percent: float
    actual_ms: int
    incremental_ms: int

    def __post_init__(self):
        if self.delta_percent < 0:
            raise ValueError(f"delta_percent must be non-negative, got {self.delta_percent}")
        if self.actual_ms < 0 or self.incremental_ms < 0:
            raise ValueError("durations must be non-negative")


@dataclass(frozen=True)
class CrossoverResult:
    """The interpolated growth percentage where incremental time overtakes
    batch time, with the measured rows that bracket it."""

    threshold_percent: float
    bracket: tuple[ComparisonRow, ComparisonRow]
    method: str = INTERPOLATION_METHOD


@dataclass(frozen=True)
class NoCrossover:
    reason: str


def build_comparison(actual, incremental, base_size: int) -> list[ComparisonRow]:
    """Match batch timings (total_size, ms) with incremental timings
    (inserted_count, ms) over a shared base size, sorted by growth percentage.

    Every increment d must have a batch entry at base_size + d; unmatched
    increments raise with the orphaned entries listed.
    """
    if base_size <= 0:
        raise ValueError(f"base_size must be positive, got {base_size}")
    actual_by_size: dict[int, int] = {}
    for total_size, ms in actual:
        if total_size in actual_by_size and actual_by_size[total_size] != ms:
            raise ValueError(f"conflicting batch timings for size {total_size}")
        actual_by_size[total_size] = ms

    orphans = [(d, ms) for d, ms in incremental if base_size + d not in actual_by_size]
    if orphans:
        missing = ", ".join(f"increment {d} (needs batch size {base_size + d})" for d, _ in orphans)
        raise ValueError(f"unmatched incremental entries: {missing}")

    rows = [
        ComparisonRow(delta_percent(base_size, base_size + d), actual_by_size[base_size + d], ms)
        for d, ms in incremental
    ]
    rows.sort(key=lambda r: r.delta_percent)
    return rows


def crossover_threshold(rows: list[ComparisonRow]) -> CrossoverResult | NoCrossover:
    """Find where g = incremental - actual first crosses from <= 0 to > 0.

    The threshold is the zero of the piecewise-linear interpolation of g
    between the first adjacent pair straddling the sign change. Rows must be
    sorted by strictly increasing delta_percent. When g never crosses upward,
    the result says which side always wins.
    """
    if len(rows) < 2:
        raise ValueError(f"need at least 2 rows, got {len(rows)}")
    deltas = [r.delta_percent for r in rows]
    if any(b <= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("rows must be sorted by strictly increasing delta_percent")

    g = [r.incremental_ms - r.actual_ms for r in rows]
    for i in range(len(rows) - 1):
        if g[i] <= 0 < g[i + 1]:
            lo, hi = rows[i], rows[i + 1]
            span = hi.delta_percent - lo.delta_percent
            threshold = lo.delta_percent + span * (-g[i]) / (g[i + 1] - g[i])
            return CrossoverResult(threshold, (lo, hi))
    if all(v > 0 for v in g):
        return NoCrossover("incremental never wins")
    if all(v <= 0 for v in g):
        return NoCrossover("incremental always wins")
    return NoCrossover("no upward sign change: incremental only loses before it wins")


CSV_HEADER = "delta_percent,actual_ms,incremental_ms"


def write_comparison_csv(rows: list[ComparisonRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(CSV_HEADER + "\n")
        for r in rows:
            f.write(f"{r.delta_percent!r},{r.actual_ms},{r.incremental_ms}\n")


def read_comparison_csv(path) -> list[ComparisonRow]:
    with open(path, encoding="utf-8") as f:
        lines = [line for line in f.read().split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: expected header {CSV_HEADER!r}")
    rows = []
    for line in lines[1:]:
        d, a, i = line.split(",")
        rows.append(ComparisonRow(float(d), int(a), int(i)))
    return rows


def crossover_to_dict(result: CrossoverResult | NoCrossover) -> dict:
    if isinstance(result, NoCrossover):
        return {"threshold_percent": None, "reason": result.reason}
    lo, hi = result.bracket
    return {
        "threshold_percent": result.threshold_percent,
        "method": result.method,
        "bracket": {
            "low": {"delta_percent": lo.delta_percent, "actual_ms": lo.actual_ms, "incremental_ms": lo.incremental_ms},
            "high": {"delta_percent": hi.delta_percent, "actual_ms": hi.actual_ms, "incremental_ms": hi.incremental_ms},
        },
    }


def write_crossover_json(result: CrossoverResult | NoCrossover, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        json.dump(crossover_to_dict(result), f, indent=2, sort_keys=True)
        f.write("\n")
