#!/usr/bin/env python3
"""Run the whole pipeline on the bundled nine-product demo catalog.

Writes the demo CSVs plus every pipeline artifact into --out-dir and prints
the resulting verdicts.
"""

import argparse
from pathlib import Path

from crowder import storage
from crowder.config import PipelineConfig
from crowder.fixtures import write_demo_csv, write_demo_truth_csv
from crowder.pipeline import run_pipeline


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("out/demo"))
    parser.add_argument("--threshold", type=float, default=0.3)
    parser.add_argument("--cluster-size", type=int, default=4)
    parser.add_argument("--generator", default="two-tiered")
    parser.add_argument("--worker-pool", default="perfect:3")
    parser.add_argument("--aggregation", default="majority")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    dataset = write_demo_csv(args.out_dir / "demo.csv")
    truth = write_demo_truth_csv(args.out_dir / "demo_truth.csv")
    cfg = PipelineConfig(
        dataset=dataset,
        truth=truth,
        threshold=args.threshold,
        cluster_size=args.cluster_size,
        generator=args.generator,
        replicas=3,
        seed=args.seed,
        worker_pool=args.worker_pool,
        aggregation=args.aggregation,
        out_dir=args.out_dir,
    )
    artifacts = run_pipeline(cfg)
    for stage, path in artifacts.items():
        print(f"{stage:>12}: {path if path else '(skipped)'}")

    hits = storage.read_hits(artifacts["hits"])
    print(f"\n{len(hits)} tasks:")
    for hit in hits:
        label = getattr(hit, "records", None) or hit.pairs
        print(f"  {hit.id}: {label}")

    verdicts = storage.read_verdicts(artifacts["verdicts"])
    matches = [v for v in verdicts if v.decision]
    print(f"\n{len(matches)} matching pairs found:")
    for v in matches:
        print(f"  {v.pair[0]} = {v.pair[1]}  (posterior {v.posterior:.2f})")


if __name__ == "__main__":
    main()
