"""A nine-product demo catalog with known duplicates, used in tests and demos."""

from __future__ import annotations

import csv
from pathlib import Path

from crowder.records import GroundTruth, Record, normalize_record

DEMO_PRODUCTS: tuple[tuple[str, str, str], ...] = (
    ("r1", "iPad Two 16GB WiFi White", "490"),
    ("r2", "iPad 2nd generation 16GB WiFi White", "469"),
    ("r3", "iPhone 4th generation White 16GB", "545"),
    ("r4", "Apple iPhone 4 16GB White", "520"),
    ("r5", "Apple iPhone 3rd generation Black 16GB", "375"),
    ("r6", "iPhone 4 32GB White", "599"),
    ("r7", "Apple iPad2 16GB WiFi White", "499"),
    ("r8", "Apple iPod shuffle 2GB Blue", "49"),
    ("r9", "Apple iPod shuffle USB Cable", "19"),
)

# r1/r2/r7 are the same tablet, r3/r4 the same phone.
DEMO_MATCHES: frozenset[tuple[str, str]] = frozenset(
    {("r1", "r2"), ("r1", "r7"), ("r2", "r7"), ("r3", "r4")}
)


def demo_records(with_price: bool = False) -> list[Record]:
    """The demo catalog as Records.

    Token sets come from the name only by default, which is what the demo's
    likelihoods are defined over; pass with_price=True for display contexts
    that want the price column too.
    """
    out = []
    for record_id, name, price in DEMO_PRODUCTS:
        attrs: list[tuple[str, str]] = [("name", name)]
        if with_price:
            attrs.append(("price", price))
        out.append(normalize_record(attrs, record_id=record_id, source="single"))
    return out


def demo_truth() -> GroundTruth:
    return GroundTruth(
        matches=DEMO_MATCHES,
        universe=frozenset(r for pair in DEMO_MATCHES for r in pair)
        | frozenset(rid for rid, _, _ in DEMO_PRODUCTS),
    )


def write_demo_csv(path: str | Path, with_price: bool = False) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "name", "price"] if with_price else ["id", "name"])
        for record_id, name, price in DEMO_PRODUCTS:
            row = [record_id, name, price] if with_price else [record_id, name]
            writer.writerow(row)
    return path


def write_demo_truth_csv(path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id_a", "id_b"])
        for a, b in sorted(DEMO_MATCHES):
            writer.writerow([a, b])
    return path
