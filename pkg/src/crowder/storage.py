"""File formats for pipeline artifacts.

Pairs, tasks, and assignments travel as JSON Lines; verdicts and reports as
CSV. All writers emit sorted, canonical JSON so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from crowder.aggregate import AggregatedVerdict
from crowder.crowd import Assignment
from crowder.evaluate import BenchRow, PRPoint
from crowder.generators import Hit, PairHit
from crowder.similarity import CandidatePair, PruneRow
from crowder.two_tiered import ClusterHit


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_pairs(pairs: Iterable[CandidatePair], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for p in pairs:
            fh.write(_dump({"a": p.a, "b": p.b, "likelihood": p.likelihood}) + "\n")


def read_pairs(path: str | Path) -> list[CandidatePair]:
    out: list[CandidatePair] = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                out.append(CandidatePair(row["a"], row["b"], row["likelihood"]))
    return out


def write_hits(hits: Iterable[Hit], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for hit in hits:
            if isinstance(hit, ClusterHit):
                payload = {
                    "id": hit.id,
                    "kind": "cluster",
                    "records": list(hit.records),
                    "covered_pairs": [list(p) for p in hit.covered_pairs],
                }
            else:
                payload = {
                    "id": hit.id,
                    "kind": "pair",
                    "pairs": [list(p) for p in hit.pairs],
                }
            fh.write(_dump(payload) + "\n")


def read_hits(path: str | Path) -> list[Hit]:
    out: list[Hit] = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            if row["kind"] == "cluster":
                out.append(
                    ClusterHit(
                        id=row["id"],
                        records=tuple(row["records"]),
                        covered_pairs=tuple(tuple(p) for p in row["covered_pairs"]),
                    )
                )
            elif row["kind"] == "pair":
                out.append(
                    PairHit(id=row["id"], pairs=tuple(tuple(p) for p in row["pairs"]))
                )
            else:
                raise ValueError(f"{path}: unknown hit kind {row['kind']!r}")
    return out


def assignment_to_json(assignment: Assignment) -> dict:
    payload: dict = {
        "hit_id": assignment.hit_id,
        "worker_id": assignment.worker_id,
        "timestamp": assignment.timestamp,
    }
    if assignment.pair_answers is not None:
        payload["answers"] = {
            "pairs": [[a, b, bool(v)] for (a, b), v in sorted(assignment.pair_answers.items())]
        }
    else:
        payload["answers"] = {"labels": dict(sorted((assignment.labels or {}).items()))}
    if assignment.reason:
        payload["reason"] = assignment.reason
    return payload


def assignment_from_json(row: dict) -> Assignment:
    answers = row["answers"]
    if "pairs" in answers:
        return Assignment(
            hit_id=row["hit_id"],
            worker_id=row["worker_id"],
            pair_answers={(a, b): bool(v) for a, b, v in answers["pairs"]},
            reason=row.get("reason"),
            timestamp=row.get("timestamp", 0.0),
        )
    return Assignment(
        hit_id=row["hit_id"],
        worker_id=row["worker_id"],
        labels={k: int(v) for k, v in answers["labels"].items()},
        reason=row.get("reason"),
        timestamp=row.get("timestamp", 0.0),
    )


def write_assignments(assignments: Iterable[Assignment], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for assignment in assignments:
            fh.write(_dump(assignment_to_json(assignment)) + "\n")


def read_assignments(path: str | Path) -> list[Assignment]:
    out: list[Assignment] = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(assignment_from_json(json.loads(line)))
    return out


def write_verdicts(verdicts: Sequence[AggregatedVerdict], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "b", "posterior", "decision"])
        for v in verdicts:
            writer.writerow([v.pair[0], v.pair[1], f"{v.posterior:.10g}", int(v.decision)])


def read_verdicts(path: str | Path) -> list[AggregatedVerdict]:
    out: list[AggregatedVerdict] = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out.append(
                AggregatedVerdict(
                    pair=(row["a"], row["b"]),
                    posterior=float(row["posterior"]),
                    decision=row["decision"] == "1",
                )
            )
    return out


def write_pr_curve(points: Sequence[PRPoint], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "precision", "recall"])
        for p in points:
            writer.writerow([p.n, f"{p.precision:.10g}", f"{p.recall:.10g}"])


def write_bench(rows: Sequence[BenchRow], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["generator", "threshold", "k", "seed", "hits", "covered_pairs", "comparisons", "error"]
        )
        for r in rows:
            writer.writerow(
                [
                    r.generator,
                    f"{r.threshold:.10g}",
                    r.k,
                    r.seed if r.seed is not None else "",
                    r.hit_count,
                    r.covered_pairs,
                    r.comparisons if r.comparisons is not None else "",
                    r.error or "",
                ]
            )


def write_prune_report(rows: Sequence[PruneRow], path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "pairs", "matches", "recall"])
        for r in rows:
            writer.writerow(
                [f"{r.threshold:.10g}", r.pair_count, r.match_count, f"{r.recall:.10g}"]
            )
