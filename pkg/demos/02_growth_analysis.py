"""Growth-vs-time analysis on a recorded timing table: build comparison rows
from batch and incremental measurements, then interpolate the crossover point
where re-fitting becomes cheaper than inserting.

Run with: python demos/02_growth_analysis.py
"""

import tempfile
from pathlib import Path

from incclust import CrossoverResult, build_comparison, crossover_threshold, delta_percent
from incclust.delta import write_comparison_csv, write_crossover_json

# Example measurements over a 500-point base: total size vs batch fit time,
# and inserted count vs incremental insert time, in milliseconds.
BATCH = [(500, 40250), (600, 41500), (700, 43300), (800, 48230), (900, 50720)]
INCREMENTAL = [(100, 12480), (200, 24643), (300, 38943), (400, 52530)]

print("=== Database growth in percent ===")
for new in (600, 700, 800, 900):
    print(f"500 -> {new} points: {delta_percent(500, new):.0f}% growth")

print("\n=== Comparison table ===")
rows = build_comparison(BATCH, INCREMENTAL, base_size=500)
print(f"{'growth_%':>9} {'batch_ms':>9} {'incremental_ms':>15} {'winner':>12}")
for r in rows:
    winner = "incremental" if r.incremental_ms <= r.actual_ms else "batch"
    print(f"{r.delta_percent:>9.0f} {r.actual_ms:>9} {r.incremental_ms:>15} {winner:>12}")

print("\n=== Crossover ===")
result = crossover_threshold(rows)
assert isinstance(result, CrossoverResult)
lo, hi = result.bracket
print(f"incremental stops winning between {lo.delta_percent:.0f}% and {hi.delta_percent:.0f}%")
print(f"{result.method} puts the cut-off at {result.threshold_percent:.2f}% growth")

with tempfile.TemporaryDirectory() as tmp:
    table = Path(tmp) / "comparison.csv"
    cross = Path(tmp) / "crossover.json"
    write_comparison_csv(rows, table)
    write_crossover_json(result, cross)
    print(f"\nserialized report files:\n--- {table.name} ---")
    print(table.read_text(), end="")
    print(f"--- {cross.name} ---")
    print(cross.read_text(), end="")
