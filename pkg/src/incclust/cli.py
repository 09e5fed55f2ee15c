"""Command line front end for the benchmark harness.

Subcommands: `bench batch`, `bench incremental`, `bench compare`. Settings
come from a flat TOML config file (--config) with command line flags taking
precedence. Exit code 0 on success, nonzero with a diagnostic on any error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from incclust.bench import (
    BenchConfig,
    emit_timing_csv,
    run_batch_suite,
    run_comparison,
    run_incremental_suite,
    write_report,
)
from incclust.dataset import Metric
from incclust.delta import crossover_to_dict

# TOML keys and flag destinations that map straight onto BenchConfig fields.
_CONFIG_FIELDS = {f.name for f in fields(BenchConfig)}
_KEY_ALIASES = {"sizes": "batch_sizes", "increments": "increment_sizes", "out": "output_dir"}


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def load_config_file(path) -> dict:
    """Read a flat TOML key/value file into BenchConfig field values."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such config file: {p}")
    with open(p, "rb") as f:
        raw = tomllib.load(f)
    values = {}
    for key, value in raw.items():
        name = _KEY_ALIASES.get(key, key)
        if name not in _CONFIG_FIELDS:
            raise ValueError(f"{p}: unknown config key {key!r}")
        if name == "metric":
            value = Metric.parse(value)
        if name in ("batch_sizes", "increment_sizes"):
            value = [int(v) for v in value]
        values[name] = value
    return values


def build_config(args: argparse.Namespace) -> BenchConfig:
    """Merge config-file values with command line overrides (flags win)."""
    values = load_config_file(args.config) if args.config else {}
    overrides = {
        "base_size": args.base_size,
        "batch_sizes": args.sizes,
        "increment_sizes": args.increments,
        "trials": args.trials,
        "warmup": args.warmup,
        "seed": args.seed,
        "eps": args.eps,
        "min_pts": args.min_pts,
        "k": args.k,
        "metric": Metric.parse(args.metric) if args.metric else None,
        "output_dir": args.out,
    }
    for name, value in overrides.items():
        if value is not None:
            values[name] = value
    config = BenchConfig(**values)
    config.validate()
    return config


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="flat TOML config file")
    sub.add_argument("--algorithm", choices=["kmeans", "dbscan"], help="algorithm to benchmark")
    sub.add_argument("--base-size", type=int, dest="base_size", metavar="N")
    sub.add_argument("--sizes", type=_parse_int_list, metavar="A,B,C", help="batch dataset sizes")
    sub.add_argument("--increments", type=_parse_int_list, metavar="A,B,C", help="incremental insert sizes")
    sub.add_argument("--trials", type=int, metavar="N")
    sub.add_argument("--warmup", type=int, metavar="N")
    sub.add_argument("--seed", type=int, metavar="N")
    sub.add_argument("--eps", type=float, metavar="X")
    sub.add_argument("--min-pts", type=int, dest="min_pts", metavar="N")
    sub.add_argument("--k", type=int, metavar="N")
    sub.add_argument("--metric", choices=[m.value for m in Metric])
    sub.add_argument("--out", metavar="DIR", help="output directory")
    sub.add_argument("--csv", metavar="PATH", help="also write the primary CSV table here")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("batch", "time batch fits across growing dataset sizes"),
        ("incremental", "time incremental inserts across growing increments"),
        ("compare", "full batch + incremental comparison for both algorithms"),
    ):
        sub = subs.add_parser(name, help=help_text)
        _add_common_flags(sub)
    return parser


def _print_records(records) -> None:
    print(f"{'algorithm':<10} {'mode':<12} {'size':>6} {'median_ms':>10} {'distance_calls':>15}")
    for r in records:
        print(f"{r.algorithm:<10} {r.mode:<12} {r.workload_size:>6} {r.median_ms:>10} {r.distance_calls:>15}")


def _run_suite(args: argparse.Namespace, runner, mode: str) -> int:
    config = build_config(args)
    algorithm = args.algorithm or "dbscan"
    records = runner(config, algorithm)
    _print_records(records)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = Path(args.csv) if args.csv else out / f"{algorithm}_{mode}_timings.csv"
    emit_timing_csv(records, csv_path)
    print(f"wrote {csv_path}")
    return 0


def _run_compare(args: argparse.Namespace) -> int:
    config = build_config(args)
    report = run_comparison(config)
    for algo in ("kmeans", "dbscan"):
        print(f"\n== {algo} ==")
        print(f"{'delta_%':>8} {'actual_ms':>10} {'incremental_ms':>15}")
        for row in report.tables[algo]:
            print(f"{row.delta_percent:>8.1f} {row.actual_ms:>10} {row.incremental_ms:>15}")
        info = crossover_to_dict(report.crossovers[algo])
        if info["threshold_percent"] is None:
            print(f"crossover: none ({info['reason']})")
        else:
            print(f"crossover: {info['threshold_percent']:.2f}% ({info['method']})")
    written = write_report(report, config.output_dir)
    if args.csv:
        side_csv = Path(config.output_dir) / "comparison_report.csv"
        Path(args.csv).write_bytes(side_csv.read_bytes())
        written.append(Path(args.csv))
    print(f"\nwrote {len(written)} files to {config.output_dir}")
    return 0


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "batch":
            return _run_suite(args, run_batch_suite, "batch")
        if args.command == "incremental":
            return _run_suite(args, run_incremental_suite, "incremental")
        return _run_compare(args)
    except (ValueError, OSError) as exc:
        print(f"bench {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
