"""Pipeline configuration: a flat key = value file plus flag overrides."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields
from pathlib import Path

from crowder.generators import GENERATORS


@dataclass
class PipelineConfig:
    dataset: Path | None = None
    truth: Path | None = None
    mode: str = "self"
    threshold: float = 0.5
    cluster_size: int = 10
    generator: str = "two-tiered"
    replicas: int = 3
    seed: int = 0
    worker_pool: str = "perfect:3"
    aggregation: str = "em"
    qualification: bool = False
    out_dir: Path = Path("out")

    def validate(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold out of [0,1]: {self.threshold}")
        if self.generator not in GENERATORS:
            raise ValueError(
                f"unknown generator {self.generator!r} (choose from {GENERATORS})"
            )
        min_k = 1 if self.generator == "pair" else 2
        if self.cluster_size < min_k:
            raise ValueError(
                f"cluster size {self.cluster_size} below minimum {min_k} "
                f"for generator {self.generator!r}"
            )
        if self.replicas < 1:
            raise ValueError(f"replicas must be >= 1, got {self.replicas}")
        if self.mode not in ("self", "cross"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.aggregation not in ("em", "majority"):
            raise ValueError(f"unknown aggregation {self.aggregation!r}")


_PATH_KEYS = {"dataset", "truth", "out_dir"}
_INT_KEYS = {"cluster_size", "replicas", "seed"}
_FLOAT_KEYS = {"threshold"}
_BOOL_KEYS = {"qualification"}


def load_config(path: str | Path) -> PipelineConfig:
    """Parse `key = value` lines; '#' starts a comment, dashes equal
    underscores in key names."""
    cfg = PipelineConfig()
    known = {f.name for f in fields(PipelineConfig)}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        setattr(cfg, key, _coerce(key, value))
    return cfg


def _coerce(key: str, value: str):
    if key in _PATH_KEYS:
        return Path(value)
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _BOOL_KEYS:
        return value.lower() in ("1", "true", "yes", "on")
    return value


def stage_seed(master: int, stage: str) -> int:
    """Derive a per-stage seed so a change in one stage's seed stream cannot
    perturb another stage."""
    digest = hashlib.sha256(f"{master}:{stage}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
