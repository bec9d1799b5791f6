#!/usr/bin/env python3
"""Threshold-selection report and generator comparison on the public datasets.

Expects the converted CSVs documented in the README under --data-dir
(default: ./data or $CROWDER_DATASETS): restaurant.csv, restaurant_truth.csv,
product.csv, product_truth.csv. Missing datasets are reported and skipped.
"""

import argparse
import os
import time
from pathlib import Path

from crowder.generators import run_generator
from crowder.records import load_ground_truth, load_records
from crowder.similarity import PruneConfig, generate_candidates, prune_report

THRESHOLDS = [0.5, 0.4, 0.3, 0.2, 0.1, 0.0]


def report(name: str, data_dir: Path, mode: str, k: int) -> None:
    records_path = data_dir / f"{name}.csv"
    truth_path = data_dir / f"{name}_truth.csv"
    if not records_path.exists() or not truth_path.exists():
        print(f"[{name}] skipped: put {records_path.name} and {truth_path.name} "
              f"under {data_dir} (see README)")
        return
    started = time.time()
    records = load_records(records_path, mode)
    truth = load_ground_truth(truth_path, records)
    pairs = generate_candidates(records, PruneConfig(0.0, mode))
    rows = prune_report(pairs, truth, THRESHOLDS)
    print(f"\n[{name}] {len(records)} records, {len(pairs)} pairs, "
          f"{len(truth.matches)} matches ({time.time() - started:.1f}s)")
    print("  threshold    pairs  matches   recall")
    for row in rows:
        print(f"  {row.threshold:9.1f} {row.pair_count:8d} {row.match_count:8d} "
              f"{row.recall:8.1%}")

    surviving = [p for p in pairs if p.likelihood >= 0.1]
    print(f"  task counts at threshold 0.1, k={k}:")
    for gen in ("two-tiered", "bfs", "dfs", "random", "approx"):
        started = time.time()
        count = len(run_generator(gen, surviving, k, seed=0))
        print(f"    {gen:>10}: {count:6d} tasks ({time.time() - started:.1f}s)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    default_dir = Path(os.environ.get("CROWDER_DATASETS", "data"))
    parser.add_argument("--data-dir", type=Path, default=default_dir)
    parser.add_argument("--cluster-size", type=int, default=10)
    args = parser.parse_args()

    report("restaurant", args.data_dir, "self", args.cluster_size)
    report("product", args.data_dir, "cross", args.cluster_size)


if __name__ == "__main__":
    main()
