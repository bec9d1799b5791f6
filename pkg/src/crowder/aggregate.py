"""Turning replicated task answers into per-pair match verdicts.

Judgment extraction flattens both task kinds to (pair, worker, match)
triples. Aggregation is either majority vote or two-class EM over latent
pair truth and per-worker confusion matrices: starting from majority-vote
posteriors, the M-step re-estimates each worker's sensitivity/specificity
and the match prior from the posteriors (with add-one smoothing on the
confusion counts), the E-step recomputes pair posteriors from those
parameters, and iteration stops when parameters move less than the
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from crowder.crowd import Assignment
from crowder.generators import Hit, PairHit
from crowder.similarity import Pair


@dataclass(frozen=True)
class PairJudgment:
    pair: Pair
    worker_id: str
    is_match: bool


@dataclass(frozen=True)
class AggregatedVerdict:
    pair: Pair
    posterior: float
    decision: bool


def extract_judgments(assignment: Assignment, hit: Hit) -> list[PairJudgment]:
    """Per-pair judgments implied by one assignment.

    Pair tasks answer each pair directly. Cluster tasks label records, and a
    covered pair counts as a match judgment exactly when both records carry
    the same label.
    """
    if isinstance(hit, PairHit):
        answers = assignment.pair_answers or {}
        missing = [p for p in hit.pairs if p not in answers]
        if missing:
            raise ValueError(f"assignment for {hit.id} left pairs unanswered: {missing}")
        return [
            PairJudgment(pair, assignment.worker_id, bool(answers[pair]))
            for pair in hit.pairs
        ]
    labels = assignment.labels or {}
    unlabeled = [r for r in hit.records if r not in labels]
    if unlabeled:
        raise ValueError(
            f"assignment for {hit.id} left records unlabeled: {unlabeled}"
        )
    return [
        PairJudgment(pair, assignment.worker_id, labels[pair[0]] == labels[pair[1]])
        for pair in hit.covered_pairs
    ]


def _group_by_pair(judgments: Iterable[PairJudgment]) -> dict[Pair, list[PairJudgment]]:
    grouped: dict[Pair, list[PairJudgment]] = {}
    for j in judgments:
        grouped.setdefault(j.pair, []).append(j)
    return grouped


def majority_vote(judgments: Iterable[PairJudgment]) -> list[AggregatedVerdict]:
    """Fraction of match votes per pair; ties resolve to non-match."""
    grouped = _group_by_pair(judgments)
    verdicts = [
        AggregatedVerdict(
            pair=pair,
            posterior=sum(1 for j in votes if j.is_match) / len(votes),
            decision=sum(1 for j in votes if j.is_match) / len(votes) > 0.5,
        )
        for pair, votes in grouped.items()
    ]
    verdicts.sort(key=lambda v: (-v.posterior, v.pair))
    return verdicts


@dataclass
class DawidSkeneResult:
    verdicts: list[AggregatedVerdict]
    confusion: dict[str, tuple[float, float]]  # worker -> (sensitivity, specificity)
    prior: float
    log_likelihoods: list[float] = field(default_factory=list)
    iterations: int = 0


def dawid_skene(
    judgments: Sequence[PairJudgment],
    max_iters: int = 100,
    tolerance: float = 1e-6,
) -> DawidSkeneResult:
    if not judgments:
        raise ValueError("dawid_skene requires at least one judgment")

    pairs = sorted({j.pair for j in judgments})
    workers = sorted({j.worker_id for j in judgments})
    pair_idx = {p: i for i, p in enumerate(pairs)}
    worker_idx = {w: i for i, w in enumerate(workers)}

    p_ids = np.array([pair_idx[j.pair] for j in judgments])
    w_ids = np.array([worker_idx[j.worker_id] for j in judgments])
    votes = np.array([1.0 if j.is_match else 0.0 for j in judgments])

    n_pairs, n_workers = len(pairs), len(workers)

    # Majority-vote initialization of the match posteriors.
    vote_sum = np.zeros(n_pairs)
    vote_cnt = np.zeros(n_pairs)
    np.add.at(vote_sum, p_ids, votes)
    np.add.at(vote_cnt, p_ids, 1.0)
    posterior = vote_sum / vote_cnt

    sens = np.full(n_workers, 0.8)
    spec = np.full(n_workers, 0.8)
    prior = 0.5
    log_likelihoods: list[float] = []
    iterations = 0

    tiny = 1e-300
    for iterations in range(1, max_iters + 1):
        # M-step: smoothed confusion counts from the soft posteriors.
        t = posterior[p_ids]
        match_said_match = np.zeros(n_workers)
        match_total = np.zeros(n_workers)
        non_said_non = np.zeros(n_workers)
        non_total = np.zeros(n_workers)
        np.add.at(match_said_match, w_ids, t * votes)
        np.add.at(match_total, w_ids, t)
        np.add.at(non_said_non, w_ids, (1.0 - t) * (1.0 - votes))
        np.add.at(non_total, w_ids, 1.0 - t)
        new_sens = (match_said_match + 1.0) / (match_total + 2.0)
        new_spec = (non_said_non + 1.0) / (non_total + 2.0)
        new_prior = float(posterior.mean())

        delta = max(
            float(np.max(np.abs(new_sens - sens))),
            float(np.max(np.abs(new_spec - spec))),
            abs(new_prior - prior),
        )
        sens, spec, prior = new_sens, new_spec, new_prior

        # E-step in log space; also yields the observed-data log-likelihood.
        log_match = np.log(np.where(votes > 0.5, sens[w_ids], 1.0 - sens[w_ids]) + tiny)
        log_non = np.log(np.where(votes > 0.5, 1.0 - spec[w_ids], spec[w_ids]) + tiny)
        log_a = np.full(n_pairs, np.log(prior + tiny))
        log_b = np.full(n_pairs, np.log(1.0 - prior + tiny))
        np.add.at(log_a, p_ids, log_match)
        np.add.at(log_b, p_ids, log_non)
        log_norm = np.logaddexp(log_a, log_b)
        posterior = np.exp(log_a - log_norm)
        log_likelihoods.append(float(log_norm.sum()))

        if delta < tolerance and iterations > 1:
            break

    verdicts = [
        AggregatedVerdict(pair=p, posterior=float(posterior[i]), decision=bool(posterior[i] > 0.5))
        for p, i in pair_idx.items()
    ]
    verdicts.sort(key=lambda v: (-v.posterior, v.pair))
    confusion = {
        w: (float(sens[i]), float(spec[i])) for w, i in worker_idx.items()
    }
    return DawidSkeneResult(
        verdicts=verdicts,
        confusion=confusion,
        prior=prior,
        log_likelihoods=log_likelihoods,
        iterations=iterations,
    )


def aggregate(
    judgments: Sequence[PairJudgment], method: str = "em"
) -> list[AggregatedVerdict]:
    if method == "em":
        return dawid_skene(judgments).verdicts
    if method == "majority":
        return majority_vote(judgments)
    raise ValueError(f"unknown aggregation method {method!r} (em or majority)")
