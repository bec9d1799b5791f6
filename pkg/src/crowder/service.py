"""Task-serving HTTP service.

State is a pure fold over an append-only JSON Lines event log, so a restart
replays the log and lands in exactly the pre-crash state. The single writer
lock makes the uniqueness check and the append atomic under concurrent
submissions.

Campaign data directory (CROWDER_DATA_DIR or --data-dir):
    hits.jsonl          tasks to serve (required)
    records.csv         record attributes for display (optional)
    qualification.json  three screening pairs with expected answers (optional)
    events.log          created and appended by the service
"""

from __future__ import annotations

import json
import os
import threading
import time
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from crowder import storage
from crowder.generators import Hit, PairHit
from crowder.records import Record, load_records
from crowder.two_tiered import ClusterHit

EVENTS_FILE = "events.log"


class CampaignStore:
    def __init__(self, data_dir: str | Path, replicas: int = 3):
        self.data_dir = Path(data_dir)
        self.replicas = replicas
        hits_path = self.data_dir / "hits.jsonl"
        if not hits_path.exists():
            raise FileNotFoundError(f"campaign has no {hits_path}")
        self.hits: dict[str, Hit] = {h.id: h for h in storage.read_hits(hits_path)}
        self.records: dict[str, Record] = {}
        records_path = self.data_dir / "records.csv"
        if records_path.exists():
            self.records = {r.id: r for r in load_records(records_path, "self")}
        self.qualification: list[dict[str, Any]] | None = None
        qual_path = self.data_dir / "qualification.json"
        if qual_path.exists():
            payload = json.loads(qual_path.read_text(encoding="utf-8"))
            pairs = payload.get("pairs", [])
            if len(pairs) != 3:
                raise ValueError(f"{qual_path}: expected exactly 3 pairs")
            self.qualification = pairs

        # hit_id -> {worker_id -> canonical answers json}
        self.submissions: dict[str, dict[str, str]] = {h: {} for h in self.hits}
        self.qualified: set[str] = set()
        self.failed: set[str] = set()
        self._lock = threading.Lock()
        self._log_path = self.data_dir / EVENTS_FILE
        self._replay()
        self._log = self._log_path.open("a", encoding="utf-8")

    # -- log fold ---------------------------------------------------------

    def _replay(self) -> None:
        if not self._log_path.exists():
            return
        with self._log_path.open(encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    self._apply(json.loads(line), replay=True)

    def _apply(self, event: dict[str, Any], replay: bool = False) -> None:
        if event["type"] == "assignment":
            key = json.dumps(event["answers"], sort_keys=True, separators=(",", ":"))
            self.submissions.setdefault(event["hit_id"], {})[event["worker_id"]] = key
        elif event["type"] == "qualification":
            if event["passed"]:
                self.qualified.add(event["worker_id"])
                self.failed.discard(event["worker_id"])
            else:
                self.failed.add(event["worker_id"])
        else:
            raise ValueError(f"unknown event type {event['type']!r}")

    def _append(self, event: dict[str, Any]) -> None:
        self._log.write(json.dumps(event, sort_keys=True, separators=(",", ":")) + "\n")
        self._log.flush()
        os.fsync(self._log.fileno())

    # -- queries ----------------------------------------------------------

    def qualification_enabled(self) -> bool:
        return self.qualification is not None

    def is_qualified(self, worker_id: str) -> bool:
        return not self.qualification_enabled() or worker_id in self.qualified

    def completed(self, hit_id: str) -> int:
        return len(self.submissions.get(hit_id, {}))

    def next_hit(self, worker_id: str) -> Hit | None:
        candidates = [
            (self.completed(h), h)
            for h in self.hits
            if self.completed(h) < self.replicas
            and worker_id not in self.submissions.get(h, {})
        ]
        if not candidates:
            return None
        _, hit_id = min(candidates)
        return self.hits[hit_id]

    def progress(self) -> dict[str, Any]:
        with self._lock:
            closed = sum(1 for h in self.hits if self.completed(h) >= self.replicas)
            return {
                "total_hits": len(self.hits),
                "open_hits": len(self.hits) - closed,
                "closed_hits": closed,
                "total_assignments": sum(len(v) for v in self.submissions.values()),
                "replicas": self.replicas,
                "qualification_enabled": self.qualification_enabled(),
            }

    # -- mutations --------------------------------------------------------

    def submit(
        self, hit_id: str, worker_id: str, answers: dict[str, Any], reason: str | None
    ) -> str:
        hit = self.hits.get(hit_id)
        if hit is None:
            raise HTTPException(404, detail={"error": f"unknown hit {hit_id!r}"})
        if not self.is_qualified(worker_id):
            raise HTTPException(403, detail={"error": "worker has not passed qualification"})
        self._validate_answers(hit, answers)
        key = json.dumps(answers, sort_keys=True, separators=(",", ":"))
        with self._lock:
            existing = self.submissions.get(hit_id, {}).get(worker_id)
            if existing is not None:
                if existing == key:
                    return "duplicate"  # idempotent retry, log unchanged
                raise HTTPException(
                    409,
                    detail={"error": f"worker {worker_id!r} already answered {hit_id!r} differently"},
                )
            if self.completed(hit_id) >= self.replicas:
                raise HTTPException(409, detail={"error": f"hit {hit_id!r} is closed"})
            event = {
                "type": "assignment",
                "hit_id": hit_id,
                "worker_id": worker_id,
                "answers": answers,
                "reason": reason,
                "timestamp": time.time(),
            }
            self._apply(event)
            self._append(event)
        return "accepted"

    def submit_qualification(self, worker_id: str, answers: list[bool]) -> bool:
        if self.qualification is None:
            raise HTTPException(404, detail={"error": "qualification is not enabled"})
        if len(answers) != len(self.qualification):
            raise HTTPException(
                400,
                detail={"error": f"expected {len(self.qualification)} answers, got {len(answers)}"},
            )
        with self._lock:
            if worker_id in self.qualified:
                return True  # already passed, no-op
            passed = all(
                bool(a) == bool(item["match"])
                for a, item in zip(answers, self.qualification)
            )
            event = {
                "type": "qualification",
                "worker_id": worker_id,
                "passed": passed,
                "timestamp": time.time(),
            }
            self._apply(event)
            self._append(event)
        return passed

    def _validate_answers(self, hit: Hit, answers: dict[str, Any]) -> None:
        if isinstance(hit, PairHit):
            given = answers.get("pairs")
            if not isinstance(given, list):
                raise HTTPException(400, detail={"error": "pair task answers need a 'pairs' list"})
            seen = {(str(a), str(b)): bool(v) for a, b, v in given}
            missing = [list(p) for p in hit.pairs if p not in seen]
            extra = [list(p) for p in seen if p not in set(hit.pairs)]
            if missing or extra:
                raise HTTPException(
                    400,
                    detail={
                        "error": "answers must cover exactly the task's pairs",
                        "missing": missing,
                        "unexpected": extra,
                    },
                )
        else:
            labels = answers.get("labels")
            if not isinstance(labels, dict):
                raise HTTPException(400, detail={"error": "cluster task answers need a 'labels' map"})
            missing = [r for r in hit.records if r not in labels]
            if missing:
                raise HTTPException(
                    400,
                    detail={"error": "every record must be labeled", "missing": missing},
                )
            bad = {r: v for r, v in labels.items() if not isinstance(v, int) or v < 1}
            if bad:
                raise HTTPException(
                    400, detail={"error": f"labels must be positive integers, got {bad}"}
                )

    # -- payloads ---------------------------------------------------------

    def record_payload(self, record_id: str) -> dict[str, Any]:
        record = self.records.get(record_id)
        if record is None:
            return {"id": record_id, "attributes": []}
        return {"id": record.id, "attributes": [list(kv) for kv in record.attributes]}

    def hit_payload(self, hit: Hit) -> dict[str, Any]:
        if isinstance(hit, PairHit):
            return {
                "id": hit.id,
                "kind": "pair",
                "pairs": [
                    {"a": self.record_payload(a), "b": self.record_payload(b)}
                    for a, b in hit.pairs
                ],
            }
        assert isinstance(hit, ClusterHit)
        return {
            "id": hit.id,
            "kind": "cluster",
            "records": [self.record_payload(r) for r in hit.records],
            "max_label": len(hit.records),
        }


class SubmissionBody(BaseModel):
    worker_id: str
    answers: dict
    reason: str | None = None


class QualificationBody(BaseModel):
    worker_id: str
    answers: list[bool]


def create_app(
    data_dir: str | Path,
    replicas: int = 3,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    store = CampaignStore(data_dir, replicas)
    app = FastAPI(title="crowder")
    app.state.store = store

    @app.get("/api/hits/next")
    def next_hit(worker_id: str):
        if not worker_id:
            raise HTTPException(400, detail={"error": "worker_id is required"})
        if not store.is_qualified(worker_id):
            raise HTTPException(403, detail={"error": "worker has not passed qualification"})
        hit = store.next_hit(worker_id)
        return {"hit": store.hit_payload(hit) if hit else None}

    @app.get("/api/hits/{hit_id}")
    def get_hit(hit_id: str):
        hit = store.hits.get(hit_id)
        if hit is None:
            raise HTTPException(404, detail={"error": f"unknown hit {hit_id!r}"})
        return store.hit_payload(hit)

    @app.post("/api/hits/{hit_id}/assignments")
    def submit(hit_id: str, body: SubmissionBody):
        status = store.submit(hit_id, body.worker_id, body.answers, body.reason)
        return {"status": status}

    @app.get("/api/qualification")
    def qualification():
        if store.qualification is None:
            return {"enabled": False, "pairs": []}
        return {
            "enabled": True,
            "pairs": [
                {"a": item["a"], "b": item["b"]} for item in store.qualification
            ],
        }

    @app.post("/api/qualification")
    def submit_qualification(body: QualificationBody):
        passed = store.submit_qualification(body.worker_id, body.answers)
        return {"passed": passed}

    @app.get("/api/progress")
    def progress():
        return store.progress()

    if ui_dir is None:
        ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    ui_path = Path(ui_dir)
    if ui_path.is_dir():
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")

    return app
