#!/usr/bin/env python3
"""Reproduce the reference-value sensitivity ranges from the bundled table.

Loads data/published_refvalues.csv (per-cell reference values for two
domains, three publication years, three window lengths), computes all
pairwise absolute relative differences in the three dimensions, and prints
the observed range per (dimension, metric). Reports land in out/accuracy/.
"""

from __future__ import annotations

import sys
from pathlib import Path

from citecells import (
    ReportSpec,
    adjacent_triple,
    cell_dimension_pairs,
    emit_difference_records,
    emit_difference_summary,
    load_reference_table,
    summarize_dimension,
    window_dimension_pairs,
    write_report,
    year_dimension_pairs,
)

ROOT = Path(__file__).resolve().parents[1]
YEAR_PAIRS = [(2005, 2006), (2006, 2007)]
WINDOW_PAIRS = [(3, 4), (4, 5)]
TRIPLES = [adjacent_triple("M", "MA"), adjacent_triple("AA", "PPF")]


def main() -> int:
    table = load_reference_table(ROOT / "data" / "published_refvalues.csv")
    records = []
    summaries = []
    for metric in ("e", "t"):
        for group in (
            year_dimension_pairs(table, YEAR_PAIRS, metric=metric),
            window_dimension_pairs(table, WINDOW_PAIRS, metric=metric),
            cell_dimension_pairs(table, TRIPLES, metric=metric),
        ):
            records.extend(group)
            summaries.append(summarize_dimension(group))

    print(f"{'dimension':<18} {'metric':<6} {'n':>4} {'min r':>8} {'max r':>8}")
    for s in sorted(summaries, key=lambda s: (s.dimension, s.metric)):
        print(
            f"{s.dimension:<18} {s.metric:<6} {s.count:>4} "
            f"{s.min_r * 100:>7.1f}% {s.max_r * 100:>7.1f}%"
        )

    out_dir = ROOT / "out" / "accuracy"
    spec = ReportSpec(kind="difference_summary", format="csv")
    write_report(emit_difference_records(records, spec), out_dir / "differences.csv")
    write_report(emit_difference_summary(records, summaries, spec), out_dir / "difference_summary.csv")
    print(f"\nreports written to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
