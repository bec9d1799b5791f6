"""Stage orchestration: prune -> generate -> simulate -> aggregate -> evaluate.

Every stage writes its artifact before the next stage starts, so a failure
leaves the completed prefix on disk. All randomness is derived from the
master seed per stage; rerunning any stage with the same inputs reproduces
byte-identical artifacts.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from crowder import storage
from crowder.aggregate import PairJudgment, aggregate, extract_judgments
from crowder.config import PipelineConfig, stage_seed
from crowder.crowd import (
    WorkerModel,
    parse_pool,
    qualification_filter,
    replicate,
    simulate_assignment,
)
from crowder.evaluate import precision_recall, rank_verdicts
from crowder.generators import Hit, run_generator
from crowder.records import GroundTruth, Record, load_ground_truth, load_records
from crowder.similarity import PruneConfig, generate_candidates, prune_report


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: str):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


def _require(path: Path, stage: str, hint: str) -> Path:
    if not path.exists():
        raise StageError(stage, f"missing input {path} ({hint})")
    return path


def run_prune(cfg: PipelineConfig, report_thresholds: Sequence[float] | None = None) -> Path:
    if cfg.dataset is None:
        raise StageError("prune", "no dataset configured")
    dataset = _require(Path(cfg.dataset), "prune", "records CSV")
    records = load_records(dataset, cfg.mode)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if report_thresholds:
        truth = _load_truth(cfg, records, stage="prune")
        if truth is None or not truth.matches:
            raise StageError("prune", "threshold report requires a ground-truth file")
        floor = min(list(report_thresholds) + [cfg.threshold])
        all_pairs = generate_candidates(records, PruneConfig(floor, cfg.mode))
        rows = prune_report(all_pairs, truth, report_thresholds)
        storage.write_prune_report(rows, out_dir / "prune_report.csv")
        pairs = [p for p in all_pairs if p.likelihood >= cfg.threshold]
    else:
        pairs = generate_candidates(records, PruneConfig(cfg.threshold, cfg.mode))
    path = out_dir / "pairs.jsonl"
    storage.write_pairs(pairs, path)
    return path


def run_generate(cfg: PipelineConfig) -> Path:
    out_dir = Path(cfg.out_dir)
    pairs_path = _require(out_dir / "pairs.jsonl", "generate", "run the prune stage first")
    pairs = storage.read_pairs(pairs_path)
    seed = stage_seed(cfg.seed, "generate")
    try:
        hits = run_generator(cfg.generator, pairs, cfg.cluster_size, seed)
    except ValueError as exc:
        raise StageError("generate", str(exc)) from exc
    path = out_dir / "hits.jsonl"
    storage.write_hits(hits, path)
    return path


def _load_truth(
    cfg: PipelineConfig, records: Sequence[Record] | None, stage: str
) -> GroundTruth | None:
    if cfg.truth is None:
        return None
    path = Path(cfg.truth)
    if not path.exists():
        raise StageError(stage, f"ground-truth file {path} not found")
    return load_ground_truth(path, records)


def _qualification_test(truth: GroundTruth) -> list[tuple[tuple[str, str], bool]]:
    matches = sorted(truth.matches)
    if not matches or truth.universe is None:
        raise StageError("simulate", "qualification needs ground truth with matches")
    test: list[tuple[tuple[str, str], bool]] = [(matches[0], True)]
    ids = sorted(truth.universe)
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            if len(test) == 3:
                return test
            if not truth.is_match(ids[i], ids[j]):
                test.append(((ids[i], ids[j]), False))
    raise StageError("simulate", "not enough pairs to build a qualification test")


def run_simulate(cfg: PipelineConfig) -> Path:
    out_dir = Path(cfg.out_dir)
    hits_path = _require(out_dir / "hits.jsonl", "simulate", "run the generate stage first")
    hits = storage.read_hits(hits_path)
    records = None
    if cfg.dataset is not None and Path(cfg.dataset).exists():
        records = load_records(Path(cfg.dataset), cfg.mode)
    truth = _load_truth(cfg, records, stage="simulate")
    if truth is None:
        universe = frozenset(r.id for r in records) if records else None
        truth = GroundTruth(matches=frozenset(), universe=universe)
    pool = parse_pool(cfg.worker_pool)
    seed = stage_seed(cfg.seed, "simulate")
    if cfg.qualification:
        test = _qualification_test(truth)
        pool = qualification_filter(pool, test, stage_seed(cfg.seed, "qualification"))
        if len(pool) < cfg.replicas:
            raise StageError(
                "simulate",
                f"only {len(pool)} workers passed qualification, need {cfg.replicas}",
            )
    workers: dict[str, WorkerModel] = {w.worker_id: w for w in pool}
    try:
        plan = replicate(hits, cfg.replicas, pool)
    except ValueError as exc:
        raise StageError("simulate", str(exc)) from exc
    by_id: dict[str, Hit] = {h.id: h for h in hits}
    assignments = [
        simulate_assignment(by_id[hit_id], truth, workers[worker_id], seed)
        for hit_id, worker_id in plan
    ]
    path = out_dir / "assignments.jsonl"
    storage.write_assignments(assignments, path)
    return path


def run_aggregate(cfg: PipelineConfig) -> Path:
    out_dir = Path(cfg.out_dir)
    hits_path = _require(out_dir / "hits.jsonl", "aggregate", "run the generate stage first")
    assignments_path = _require(
        out_dir / "assignments.jsonl", "aggregate", "run the simulate stage first"
    )
    hits = {h.id: h for h in storage.read_hits(hits_path)}
    judgments: list[PairJudgment] = []
    for assignment in storage.read_assignments(assignments_path):
        hit = hits.get(assignment.hit_id)
        if hit is None:
            raise StageError("aggregate", f"assignment references unknown hit {assignment.hit_id!r}")
        judgments.extend(extract_judgments(assignment, hit))
    verdicts = aggregate(judgments, cfg.aggregation) if judgments else []
    path = out_dir / "verdicts.csv"
    storage.write_verdicts(verdicts, path)
    return path


def run_evaluate(cfg: PipelineConfig) -> Path | None:
    out_dir = Path(cfg.out_dir)
    verdicts_path = _require(
        out_dir / "verdicts.csv", "evaluate", "run the aggregate stage first"
    )
    verdicts = storage.read_verdicts(verdicts_path)
    records = None
    if cfg.dataset is not None and Path(cfg.dataset).exists():
        records = load_records(Path(cfg.dataset), cfg.mode)
    truth = _load_truth(cfg, records, stage="evaluate")
    if truth is None or not truth.matches:
        return None  # nothing to score against
    ranked = rank_verdicts(verdicts)
    stride = max(1, len(ranked) // 1000)
    cutoffs = list(range(1, len(ranked) + 1, stride))
    if ranked and cutoffs and cutoffs[-1] != len(ranked):
        cutoffs.append(len(ranked))
    points = precision_recall(ranked, truth, cutoffs) if ranked else []
    path = out_dir / "pr_curve.csv"
    storage.write_pr_curve(points, path)
    return path


def run_pipeline(cfg: PipelineConfig) -> dict[str, Path | None]:
    cfg.validate()
    artifacts: dict[str, Path | None] = {}
    artifacts["pairs"] = run_prune(cfg)
    artifacts["hits"] = run_generate(cfg)
    artifacts["assignments"] = run_simulate(cfg)
    artifacts["verdicts"] = run_aggregate(cfg)
    artifacts["pr_curve"] = run_evaluate(cfg)
    return artifacts
