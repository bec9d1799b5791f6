"""Record datasets: loading, normalization, and duplicate-injected synthesis."""

from __future__ import annotations

import csv
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

_NON_ALNUM = re.compile(r"[^0-9a-z]+")

SOURCE_A = "A"
SOURCE_B = "B"
SOURCE_SINGLE = "single"


class SchemaError(ValueError):
    """Raised when an input file does not match the documented CSV schema."""


def normalize_value(value: str) -> str:
    """Lowercase and replace every non-alphanumeric character with a space."""
    return _NON_ALNUM.sub(" ", value.lower()).strip()


def tokenize(text: str) -> frozenset[str]:
    """Token set of a string under the normalization rule (deduplicated)."""
    return frozenset(normalize_value(text).split())


@dataclass(frozen=True)
class Record:
    """A normalized record: unique id, source tag, attributes, derived tokens."""

    id: str
    source: str
    attributes: tuple[tuple[str, str], ...]
    tokens: frozenset[str]

    def attribute(self, name: str) -> str | None:
        for key, value in self.attributes:
            if key == name:
                return value
        return None


@dataclass(frozen=True)
class GroundTruth:
    """Canonical (a < b) matching id pairs, optionally with the id universe."""

    matches: frozenset[tuple[str, str]]
    universe: frozenset[str] | None = None

    def is_match(self, a: str, b: str) -> bool:
        return (a, b) in self.matches if a < b else (b, a) in self.matches

    def covers(self, record_id: str) -> bool:
        return self.universe is None or record_id in self.universe


@dataclass(frozen=True)
class DatasetStats:
    record_count: int
    total_pairs: int
    match_count: int


def normalize_record(
    raw: Sequence[str] | Sequence[tuple[str, str]],
    record_id: str = "",
    source: str = SOURCE_SINGLE,
) -> Record:
    """Build a Record from raw attribute values.

    `raw` is either a list of values (attributes named attr0, attr1, ...) or a
    list of (name, value) pairs. Values are normalized in place; the token set
    is the whitespace split of the concatenated normalized values.
    """
    pairs: list[tuple[str, str]] = []
    for i, item in enumerate(raw):
        if isinstance(item, str):
            pairs.append((f"attr{i}", normalize_value(item)))
        else:
            name, value = item
            pairs.append((name, normalize_value(value)))
    tokens = frozenset(tok for _, value in pairs for tok in value.split())
    return Record(id=record_id, source=source, attributes=tuple(pairs), tokens=tokens)


def load_records(path: str | Path, mode: str = "self") -> list[Record]:
    """Load a CSV dataset (header row, required `id` column) as Records.

    In cross mode a `source` column with exactly two distinct values is
    required; the lexicographically smaller value maps to source A. Remaining
    columns become attributes in header order.
    """
    if mode not in ("self", "cross"):
        raise ValueError(f"unknown mode {mode!r} (expected 'self' or 'cross')")
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, header row required") from None
        rows = list(reader)

    if "id" not in header:
        raise SchemaError(f"{path}: missing required column 'id'")
    id_col = header.index("id")
    source_col = header.index("source") if "source" in header else None
    if mode == "cross" and source_col is None:
        raise SchemaError(f"{path}: cross mode requires a 'source' column")

    attr_cols = [
        (i, name) for i, name in enumerate(header) if i not in (id_col, source_col)
    ]

    source_map: dict[str, str] = {}
    if mode == "cross":
        values = sorted({row[source_col] for row in rows if len(row) > source_col})
        if len(values) != 2:
            raise SchemaError(
                f"{path}: cross mode requires exactly two source values, got {values}"
            )
        source_map = {values[0]: SOURCE_A, values[1]: SOURCE_B}

    records: list[Record] = []
    seen: set[str] = set()
    for row in rows:
        if not row:
            continue
        record_id = row[id_col]
        if record_id in seen:
            raise SchemaError(f"{path}: duplicate id {record_id!r}")
        seen.add(record_id)
        source = source_map[row[source_col]] if mode == "cross" else SOURCE_SINGLE
        raw = [(name, row[i] if i < len(row) else "") for i, name in attr_cols]
        records.append(normalize_record(raw, record_id=record_id, source=source))
    return records


def load_ground_truth(path: str | Path, records: Iterable[Record] | None = None) -> GroundTruth:
    """Load a ground-truth CSV with columns `id_a,id_b` into canonical pairs."""
    path = Path(path)
    matches: set[tuple[str, str]] = set()
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[:2] != ["id_a", "id_b"]:
            raise SchemaError(f"{path}: expected header 'id_a,id_b'")
        for row in reader:
            if not row:
                continue
            a, b = row[0], row[1]
            if a == b:
                raise SchemaError(f"{path}: self-pair ({a!r}, {b!r}) not allowed")
            matches.add((a, b) if a < b else (b, a))
    universe = frozenset(r.id for r in records) if records is not None else None
    if universe is not None:
        for a, b in matches:
            if a not in universe or b not in universe:
                raise SchemaError(f"{path}: pair ({a!r}, {b!r}) references unknown id")
    return GroundTruth(matches=frozenset(matches), universe=universe)


def save_ground_truth(truth: GroundTruth, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id_a", "id_b"])
        for a, b in sorted(truth.matches):
            writer.writerow([a, b])


def dataset_stats(
    records: Sequence[Record], truth: GroundTruth | None = None, mode: str = "self"
) -> DatasetStats:
    n = len(records)
    if mode == "cross":
        n_a = sum(1 for r in records if r.source == SOURCE_A)
        n_b = n - n_a
        total = n_a * n_b
    else:
        total = n * (n - 1) // 2
    return DatasetStats(
        record_count=n,
        total_pairs=total,
        match_count=len(truth.matches) if truth else 0,
    )


@dataclass
class DupSynthesis:
    """Result of duplicate injection: records, ground truth, warning count."""

    records: list[Record]
    truth: GroundTruth
    unswappable: int = 0
    groups: list[list[str]] = field(default_factory=list)


def _swap_two_tokens(value: str, rng: random.Random) -> str | None:
    words = value.split()
    if len(words) < 2:
        return None
    i, j = rng.sample(range(len(words)), 2)
    words[i], words[j] = words[j], words[i]
    return " ".join(words)


def synthesize_dup_dataset(
    base: Sequence[Record], max_dups: int, seed: int
) -> DupSynthesis:
    """Inject duplicates: each base record gains x ~ U[0, max_dups] copies.

    Each copy swaps two randomly chosen (distinct) word positions of the name
    attribute; other attributes are copied unchanged. Ground truth contains
    all pairs within each duplicate group. A base record whose name has fewer
    than two words yields unmodified copies, counted in `unswappable`.
    """
    if max_dups < 0:
        raise ValueError("max_dups must be >= 0")
    rng = random.Random(seed)
    out: list[Record] = []
    matches: set[tuple[str, str]] = set()
    unswappable = 0
    groups: list[list[str]] = []
    for record in base:
        group = [record.id]
        out.append(record)
        if record.attribute("name") is not None:
            name_key = "name"
        elif record.attributes:
            name_key = record.attributes[0][0]
        else:
            name_key = None
        name_value = record.attribute(name_key) if name_key else ""
        x = rng.randint(0, max_dups)
        for d in range(x):
            dup_id = f"{record.id}-dup{d + 1}"
            swapped = _swap_two_tokens(name_value or "", rng)
            if swapped is None:
                unswappable += 1
                swapped = name_value or ""
            attrs = [(k, swapped if k == name_key else v) for k, v in record.attributes]
            out.append(normalize_record(attrs, record_id=dup_id, source=record.source))
            group.append(dup_id)
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                a, b = group[i], group[j]
                matches.add((a, b) if a < b else (b, a))
        groups.append(group)
    truth = GroundTruth(
        matches=frozenset(matches), universe=frozenset(r.id for r in out)
    )
    return DupSynthesis(records=out, truth=truth, unswappable=unswappable, groups=groups)
