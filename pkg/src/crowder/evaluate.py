"""Precision/recall evaluation and cross-generator task-count benchmarks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from crowder.aggregate import AggregatedVerdict
from crowder.comparisons import EntityPartition, comparisons_seq
from crowder.generators import approx_cover, run_generator
from crowder.records import GroundTruth
from crowder.similarity import CandidatePair, Pair
from crowder.two_tiered import ClusterHit


@dataclass(frozen=True)
class PRPoint:
    n: int
    precision: float
    recall: float


def rank_verdicts(verdicts: Iterable[AggregatedVerdict]) -> list[Pair]:
    """Ranked pair list, posterior descending with id pairs breaking ties."""
    return [v.pair for v in sorted(verdicts, key=lambda v: (-v.posterior, v.pair))]


def precision_recall(
    ranked: Sequence[Pair],
    truth: GroundTruth,
    cutoffs: Iterable[int] | None = None,
) -> list[PRPoint]:
    """Precision and recall of the top-n prefix at each cutoff.

    Cutoffs default to every rank; n = 0 is skipped since precision is
    undefined there.
    """
    if not truth.matches:
        raise ValueError("precision_recall requires a nonempty ground truth")
    if cutoffs is None:
        cutoffs = range(1, len(ranked) + 1)
    hits_at = []
    running = 0
    for pair in ranked:
        running += 1 if truth.is_match(*pair) else 0
        hits_at.append(running)
    total = len(truth.matches)
    points = []
    for n in sorted(set(cutoffs)):
        if n <= 0 or n > len(ranked):
            continue
        points.append(
            PRPoint(n=n, precision=hits_at[n - 1] / n, recall=hits_at[n - 1] / total)
        )
    return points


def entity_partition_of(
    records: Sequence[str], truth: GroundTruth, order: str = "desc"
) -> EntityPartition:
    """Entity sizes inside one task under the ground truth, size-ordered.

    Descending order is the cheapest identification order for the effort
    model, so the benchmark reports an able worker's cost.
    """
    adj: dict[str, set[str]] = {r: set() for r in records}
    record_set = set(records)
    for a, b in truth.matches:
        if a in record_set and b in record_set:
            adj[a].add(b)
            adj[b].add(a)
    sizes: list[int] = []
    seen: set[str] = set()
    for start in sorted(records):
        if start in seen:
            continue
        stack, size = [start], 0
        seen.add(start)
        while stack:
            v = stack.pop()
            size += 1
            for nb in adj[v]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        sizes.append(size)
    sizes.sort(reverse=(order == "desc"))
    return EntityPartition(tuple(sizes))


@dataclass
class BenchRow:
    generator: str
    threshold: float
    k: int
    seed: int | None
    hit_count: int
    covered_pairs: int
    comparisons: int | None
    error: str | None = None


def bench_generators(
    pairs: Sequence[CandidatePair],
    generators: Sequence[str],
    thresholds: Sequence[float],
    cluster_sizes: Sequence[int],
    seeds: Sequence[int] = (0,),
    truth: GroundTruth | None = None,
) -> list[BenchRow]:
    """Task counts (and effort estimates when truth is known) per generator
    and configuration. A generator failure is recorded in its row instead of
    aborting the sweep.

    The sequence-cover approximation bills a task for every block of its
    vertex-edge sequence even when the block holds no edge, so its row
    reports that nominal count rather than the emitted task list length.
    """
    rows: list[BenchRow] = []
    for threshold in thresholds:
        surviving = [p for p in pairs if p.likelihood >= threshold]
        for k in cluster_sizes:
            for name in generators:
                for seed in seeds:
                    try:
                        nominal = None
                        if name == "approx":
                            hits, nominal = approx_cover(surviving, k, seed)
                        else:
                            hits = run_generator(name, surviving, k, seed)
                        covered = sum(
                            len(h.covered_pairs) if isinstance(h, ClusterHit) else len(h.pairs)
                            for h in hits
                        )
                        comparisons = None
                        if truth is not None:
                            comparisons = 0
                            for h in hits:
                                if isinstance(h, ClusterHit):
                                    part = entity_partition_of(h.records, truth)
                                    comparisons += comparisons_seq(part)
                                else:
                                    comparisons += len(h.pairs)
                        rows.append(
                            BenchRow(
                                generator=name,
                                threshold=threshold,
                                k=k,
                                seed=seed,
                                hit_count=nominal if nominal is not None else len(hits),
                                covered_pairs=covered,
                                comparisons=comparisons,
                            )
                        )
                    except Exception as exc:  # noqa: BLE001 - isolate per row
                        rows.append(
                            BenchRow(
                                generator=name,
                                threshold=threshold,
                                k=k,
                                seed=seed,
                                hit_count=0,
                                covered_pairs=0,
                                comparisons=None,
                                error=str(exc),
                            )
                        )
    return rows
