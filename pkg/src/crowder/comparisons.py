"""Worker-effort model for cluster tasks.

A worker resolving a cluster of n records identifies one entity at a time:
pick an unidentified record and compare it against every record not yet
assigned to an earlier entity. Identifying entities of sizes s_1..s_m in
that order therefore costs

    sum_i (n - 1 - (s_1 + ... + s_{i-1}))          (sequential form)
    (n - 1) * m - sum_{i<m} (m - i) * s_i          (closed form)

and the two are equal for every ordering. The cost depends on the order, so
extreme_orderings reports the exact best and worst over all orderings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class EntityPartition:
    """Entity sizes of one cluster task, in identification order."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s < 1 for s in self.sizes):
            raise ValueError(f"entity sizes must be >= 1, got {self.sizes}")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return len(self.sizes)


def comparisons_seq(partition: EntityPartition) -> int:
    """Sequential count: each entity is checked against the records left."""
    n = partition.n
    total = 0
    identified = 0
    for size in partition.sizes:
        total += n - 1 - identified
        identified += size
    return total


def comparisons_closed(partition: EntityPartition) -> int:
    """Closed form; equals comparisons_seq for every ordering."""
    n, m = partition.n, partition.m
    weighted = sum((m - i) * s for i, s in enumerate(partition.sizes[:-1], start=1))
    return (n - 1) * m - weighted


@dataclass(frozen=True)
class OrderingExtremes:
    minimum: int
    maximum: int
    min_order: tuple[int, ...]
    max_order: tuple[int, ...]
    ascending_value: int
    descending_value: int


def extreme_orderings(sizes: Sequence[int], max_entities: int = 10) -> OrderingExtremes:
    """Exact min and max comparisons over every identification order.

    Brute force over all distinct orderings; refuses more than `max_entities`
    entities (factorial blowup) and points at the size-sorted formulas
    instead.
    """
    if len(sizes) > max_entities:
        raise ValueError(
            f"{len(sizes)} entities exceed the brute-force limit of "
            f"{max_entities}; evaluate the ascending/descending size orders "
            "with comparisons_seq instead"
        )
    if not sizes:
        raise ValueError("at least one entity required")

    best: tuple[int, tuple[int, ...]] | None = None
    worst: tuple[int, tuple[int, ...]] | None = None
    remaining = sorted(sizes)

    def visit(prefix: list[int], pool: list[int]) -> None:
        nonlocal best, worst
        if not pool:
            order = tuple(prefix)
            value = comparisons_seq(EntityPartition(order))
            if best is None or value < best[0]:
                best = (value, order)
            if worst is None or value > worst[0]:
                worst = (value, order)
            return
        last = None
        for i, size in enumerate(pool):
            if size == last:
                continue  # identical sizes yield identical costs
            last = size
            visit(prefix + [size], pool[:i] + pool[i + 1 :])

    visit([], remaining)
    assert best is not None and worst is not None
    asc = tuple(sorted(sizes))
    desc = tuple(sorted(sizes, reverse=True))
    return OrderingExtremes(
        minimum=best[0],
        maximum=worst[0],
        min_order=best[1],
        max_order=worst[1],
        ascending_value=comparisons_seq(EntityPartition(asc)),
        descending_value=comparisons_seq(EntityPartition(desc)),
    )
