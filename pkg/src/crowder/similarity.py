"""Jaccard likelihoods and threshold pruning of the all-pairs candidate set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from crowder.records import GroundTruth, Record, SOURCE_A

Pair = tuple[str, str]


@dataclass(frozen=True, slots=True)
class CandidatePair:
    """An unordered record pair (a < b) with its machine match likelihood."""

    a: str
    b: str
    likelihood: float

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"self-pair not allowed: {self.a!r}")
        if not 0.0 <= self.likelihood <= 1.0:
            raise ValueError(f"likelihood out of [0,1]: {self.likelihood}")

    @property
    def key(self) -> Pair:
        return (self.a, self.b)


def make_pair(x: str, y: str, likelihood: float) -> CandidatePair:
    a, b = (x, y) if x < y else (y, x)
    return CandidatePair(a=a, b=b, likelihood=likelihood)


@dataclass(frozen=True)
class PruneConfig:
    threshold: float
    mode: str = "self"

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold out of [0,1]: {self.threshold}")
        if self.mode not in ("self", "cross"):
            raise ValueError(f"unknown mode {self.mode!r}")


def jaccard(a: frozenset[str] | set[str], b: frozenset[str] | set[str]) -> float:
    """Intersection size over union size; 0.0 when both sets are empty."""
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def generate_candidates(
    records: Sequence[Record], cfg: PruneConfig
) -> list[CandidatePair]:
    """All pairs (per mode) whose Jaccard likelihood is >= the threshold.

    Output is sorted by likelihood descending, then id pair ascending. The
    size filter below is a pure optimization: jaccard(a, b) is at most
    min(|a|,|b|) / max(|a|,|b|), so shorter/longer mismatches cannot pass.
    """
    out: list[CandidatePair] = []
    theta = cfg.threshold
    if cfg.mode == "cross":
        left = [r for r in records if r.source == SOURCE_A]
        right = [r for r in records if r.source != SOURCE_A]
        pairs_iter = ((a, b) for a in left for b in right)
    else:
        pairs_iter = (
            (records[i], records[j])
            for i in range(len(records))
            for j in range(i + 1, len(records))
        )
    for ra, rb in pairs_iter:
        ta, tb = ra.tokens, rb.tokens
        if theta > 0.0:
            la, lb = len(ta), len(tb)
            if la == 0 or lb == 0 or min(la, lb) < theta * max(la, lb):
                continue
        sim = jaccard(ta, tb)
        if sim >= theta:
            out.append(make_pair(ra.id, rb.id, sim))
    out.sort(key=lambda p: (-p.likelihood, p.a, p.b))
    return out


@dataclass(frozen=True)
class PruneRow:
    threshold: float
    pair_count: int
    match_count: int
    recall: float


def prune_report(
    pairs: Iterable[CandidatePair],
    truth: GroundTruth,
    thresholds: Sequence[float],
) -> list[PruneRow]:
    """Surviving pair/match counts and recall at each requested threshold.

    `pairs` must have been computed at (or below) the minimum requested
    threshold, otherwise counts at that minimum would be truncated.
    """
    if not truth.matches:
        raise ValueError("prune_report requires a nonempty ground truth")
    levels = sorted(set(thresholds))
    pair_counts = [0] * len(levels)
    match_counts = [0] * len(levels)
    for pair in pairs:
        is_match = truth.is_match(pair.a, pair.b)
        for i, theta in enumerate(levels):
            if pair.likelihood >= theta:
                pair_counts[i] += 1
                if is_match:
                    match_counts[i] += 1
            else:
                break
    total = len(truth.matches)
    return [
        PruneRow(
            threshold=theta,
            pair_count=pair_counts[i],
            match_count=match_counts[i],
            recall=match_counts[i] / total,
        )
        for i, theta in sorted(enumerate(levels), key=lambda t: -t[1])
    ]
