"""Command line interface: full pipeline runs and per-stage subcommands."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields
from pathlib import Path

from crowder import storage
from crowder.config import PipelineConfig, load_config
from crowder.evaluate import bench_generators
from crowder.generators import GENERATORS
from crowder.pipeline import (
    StageError,
    run_aggregate,
    run_evaluate,
    run_generate,
    run_pipeline,
    run_prune,
    run_simulate,
)
from crowder.records import load_ground_truth, load_records
from crowder.similarity import PruneConfig, generate_candidates


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="flat key = value config file")
    parser.add_argument("--threshold", type=float, help="likelihood threshold in [0,1]")
    parser.add_argument("--cluster-size", type=int, help="max records (or pairs) per task")
    parser.add_argument("--generator", choices=GENERATORS, help="task generator")
    parser.add_argument("--replicas", type=int, help="assignments per task")
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument("--mode", choices=["self", "cross"], help="pairing mode")
    parser.add_argument("--out-dir", type=Path, help="artifact directory")
    parser.add_argument("--dataset", type=Path, help="records CSV")
    parser.add_argument("--truth", type=Path, help="ground-truth CSV (id_a,id_b)")
    parser.add_argument("--worker-pool", help="pool spec, e.g. diligent:3:0.9:0.95,spammer:1")
    parser.add_argument("--aggregation", choices=["em", "majority"], help="verdict method")
    parser.add_argument("--qualification", action="store_true", default=None,
                        help="gate simulated workers behind the screening test")


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = load_config(args.config) if args.config else PipelineConfig()
    for name in (f.name for f in fields(PipelineConfig)):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="crowder",
        description="Hybrid human-machine entity resolution pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in [
        ("run", "run every stage: prune, generate, simulate, aggregate, evaluate"),
        ("prune", "compute candidate pairs above the likelihood threshold"),
        ("generate", "batch candidate pairs into verification tasks"),
        ("simulate", "answer the tasks with a simulated worker pool"),
        ("aggregate", "turn assignments into per-pair verdicts"),
        ("evaluate", "score the verdicts against the ground truth"),
        ("bench", "compare task counts across generators"),
        ("serve", "serve tasks over HTTP for human workers"),
    ]:
        p = sub.add_parser(name, help=text)
        _add_common(p)
        if name == "prune":
            p.add_argument(
                "--report-thresholds",
                help="comma-separated thresholds for prune_report.csv (needs --truth)",
            )
        if name == "bench":
            p.add_argument("--generators", default="all", help="comma list or 'all'")
            p.add_argument("--thresholds", default=None, help="comma-separated thresholds")
            p.add_argument("--cluster-sizes", default=None, help="comma-separated sizes")
            p.add_argument("--seeds", default="0", help="comma-separated seeds")
        if name == "serve":
            p.add_argument("--port", type=int, default=8000)
            p.add_argument("--host", default="127.0.0.1")
            p.add_argument(
                "--data-dir",
                type=Path,
                default=None,
                help="campaign directory (default: $CROWDER_DATA_DIR)",
            )
            p.add_argument("--ui-dir", type=Path, default=None, help="static UI bundle")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except StageError as exc:
        print(f"error {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"error [{args.command}] {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace) -> int:
    command = args.command
    if command == "serve":
        return _serve(args)
    cfg = _build_config(args)

    if command == "run":
        artifacts = run_pipeline(cfg)
        for stage, path in artifacts.items():
            print(f"{stage}: {path if path else '(skipped)'}")
        return 0
    if command == "prune":
        thresholds = None
        if getattr(args, "report_thresholds", None):
            thresholds = [float(t) for t in args.report_thresholds.split(",")]
        path = run_prune(cfg, thresholds)
        print(f"pairs: {path}")
        return 0
    if command == "generate":
        print(f"hits: {run_generate(cfg)}")
        return 0
    if command == "simulate":
        print(f"assignments: {run_simulate(cfg)}")
        return 0
    if command == "aggregate":
        print(f"verdicts: {run_aggregate(cfg)}")
        return 0
    if command == "evaluate":
        path = run_evaluate(cfg)
        if path is None:
            raise StageError("evaluate", "no ground truth configured, nothing to score")
        print(f"pr_curve: {path}")
        return 0
    if command == "bench":
        return _bench(args, cfg)
    raise ValueError(f"unknown command {command!r}")


def _bench(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    if cfg.dataset is None:
        raise StageError("bench", "no dataset configured")
    records = load_records(cfg.dataset, cfg.mode)
    truth = None
    if cfg.truth is not None:
        truth = load_ground_truth(cfg.truth, records)
    names = (
        list(GENERATORS)
        if args.generators == "all"
        else [g.strip() for g in args.generators.split(",")]
    )
    thresholds = (
        [float(t) for t in args.thresholds.split(",")]
        if args.thresholds
        else [cfg.threshold]
    )
    sizes = (
        [int(s) for s in args.cluster_sizes.split(",")]
        if args.cluster_sizes
        else [cfg.cluster_size]
    )
    seeds = [int(s) for s in args.seeds.split(",")]
    floor = min(thresholds)
    pairs = generate_candidates(records, PruneConfig(floor, cfg.mode))
    rows = bench_generators(pairs, names, thresholds, sizes, seeds, truth)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "bench.csv"
    storage.write_bench(rows, path)
    print(f"bench: {path}")
    return 0


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    from crowder.service import create_app

    data_dir = args.data_dir or os.environ.get("CROWDER_DATA_DIR")
    if not data_dir:
        raise StageError("serve", "set --data-dir or CROWDER_DATA_DIR")
    replicas = args.replicas if args.replicas is not None else 3
    app = create_app(data_dir, replicas=replicas, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
