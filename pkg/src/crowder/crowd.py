"""Simulated crowd workers: parametric accuracy, replication, qualification."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from crowder.generators import Hit, PairHit
from crowder.records import GroundTruth
from crowder.similarity import Pair

KIND_DILIGENT = "diligent"
KIND_SPAMMER = "spammer"
KIND_ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class WorkerModel:
    """A worker who answers 'match' with probability `sensitivity` on true
    matches and 'non-match' with probability `specificity` on true
    non-matches."""

    worker_id: str
    sensitivity: float
    specificity: float
    kind: str = KIND_DILIGENT

    def __post_init__(self) -> None:
        for p in (self.sensitivity, self.specificity):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability out of [0,1]: {p}")


def diligent(worker_id: str, sensitivity: float = 0.9, specificity: float = 0.95) -> WorkerModel:
    return WorkerModel(worker_id, sensitivity, specificity, KIND_DILIGENT)


def perfect(worker_id: str) -> WorkerModel:
    return WorkerModel(worker_id, 1.0, 1.0, KIND_DILIGENT)


def spammer(worker_id: str) -> WorkerModel:
    return WorkerModel(worker_id, 0.5, 0.5, KIND_SPAMMER)


def adversarial(worker_id: str) -> WorkerModel:
    return WorkerModel(worker_id, 0.0, 0.0, KIND_ADVERSARIAL)


_POOL_KINDS = {
    "perfect": (1.0, 1.0, KIND_DILIGENT),
    "diligent": (0.9, 0.95, KIND_DILIGENT),
    "spammer": (0.5, 0.5, KIND_SPAMMER),
    "adversarial": (0.0, 0.0, KIND_ADVERSARIAL),
}


def parse_pool(spec: str) -> list[WorkerModel]:
    """Parse a pool spec like 'diligent:3:0.9:0.95,spammer:1'.

    Each comma-separated group is kind[:count[:sensitivity:specificity]];
    sensitivity/specificity default per kind.
    """
    pool: list[WorkerModel] = []
    for group in spec.split(","):
        group = group.strip()
        if not group:
            continue
        parts = group.split(":")
        kind = parts[0]
        if kind not in _POOL_KINDS:
            raise ValueError(
                f"unknown worker kind {kind!r} (choose from {sorted(_POOL_KINDS)})"
            )
        count = int(parts[1]) if len(parts) > 1 else 1
        sens, spec_, tag = _POOL_KINDS[kind]
        if len(parts) == 4:
            sens, spec_ = float(parts[2]), float(parts[3])
        elif len(parts) == 3:
            raise ValueError(f"pool group {group!r}: give both sensitivity and specificity")
        for _ in range(count):
            pool.append(WorkerModel(f"{kind}-{len(pool) + 1:02d}", sens, spec_, tag))
    if not pool:
        raise ValueError(f"empty worker pool spec: {spec!r}")
    return pool


@dataclass(frozen=True)
class Assignment:
    """One worker's completed task.

    For a pair task, `pair_answers` holds a match/non-match boolean per pair;
    for a cluster task, `labels` assigns every record a positive integer and
    equal labels mean same entity.
    """

    hit_id: str
    worker_id: str
    pair_answers: Mapping[Pair, bool] | None = None
    labels: Mapping[str, int] | None = None
    reason: str | None = None
    timestamp: float = 0.0


def _judge(rng: random.Random, is_match: bool, worker: WorkerModel) -> bool:
    if is_match:
        return rng.random() < worker.sensitivity
    return not (rng.random() < worker.specificity)


def _hit_rng(seed: int, hit_id: str, worker_id: str) -> random.Random:
    # Seeded per (task, worker) so parallel simulation order cannot matter.
    return random.Random(f"{seed}|{hit_id}|{worker_id}")


def simulate_assignment(
    hit: Hit, truth: GroundTruth, worker: WorkerModel, seed: int
) -> Assignment:
    """Answer one task with pair-level noise; cluster labels are made
    transitively consistent by connecting judged-match pairs."""
    for record_id in _hit_records(hit):
        if not truth.covers(record_id):
            raise ValueError(f"record {record_id!r} missing from ground truth")
    rng = _hit_rng(seed, hit.id, worker.worker_id)
    if isinstance(hit, PairHit):
        answers = {
            pair: _judge(rng, truth.is_match(*pair), worker) for pair in hit.pairs
        }
        return Assignment(hit.id, worker.worker_id, pair_answers=answers)

    judged_match = [
        pair
        for pair in hit.covered_pairs
        if _judge(rng, truth.is_match(*pair), worker)
    ]
    labels = _labels_from_matches(hit.records, judged_match)
    return Assignment(hit.id, worker.worker_id, labels=labels)


def _hit_records(hit: Hit) -> tuple[str, ...]:
    if isinstance(hit, PairHit):
        return tuple(sorted({r for pair in hit.pairs for r in pair}))
    return hit.records


def _labels_from_matches(records: Sequence[str], matches: Sequence[Pair]) -> dict[str, int]:
    adj: dict[str, set[str]] = {r: set() for r in records}
    for a, b in matches:
        adj[a].add(b)
        adj[b].add(a)
    labels: dict[str, int] = {}
    next_label = 1
    for start in sorted(records):
        if start in labels:
            continue
        stack = [start]
        labels[start] = next_label
        while stack:
            v = stack.pop()
            for nb in sorted(adj[v]):
                if nb not in labels:
                    labels[nb] = next_label
                    stack.append(nb)
        next_label += 1
    return labels


def replicate(
    hits: Sequence[Hit], r: int, pool: Sequence[WorkerModel]
) -> list[tuple[str, str]]:
    """Assignment plan: r distinct workers per task, spread round robin."""
    if r < 1:
        raise ValueError(f"replication factor must be >= 1, got {r}")
    if len(pool) < r:
        raise ValueError(
            f"worker pool of {len(pool)} cannot provide {r} distinct workers"
        )
    workers = sorted(w.worker_id for w in pool)
    plan: list[tuple[str, str]] = []
    for i, hit in enumerate(hits):
        for j in range(r):
            plan.append((hit.id, workers[(i * r + j) % len(workers)]))
    return plan


def qualification_filter(
    pool: Sequence[WorkerModel],
    test: Sequence[tuple[Pair, bool]],
    seed: int,
) -> list[WorkerModel]:
    """Simulate the screening test; a worker passes only with all answers
    correct."""
    if len(test) != 3:
        raise ValueError(f"qualification test must have exactly 3 pairs, got {len(test)}")
    passing: list[WorkerModel] = []
    for worker in pool:
        rng = random.Random(f"{seed}|qualification|{worker.worker_id}")
        if all(_judge(rng, is_match, worker) == is_match for _, is_match in test):
            passing.append(worker)
    return passing
