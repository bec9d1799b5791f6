"""Candidate-pair graph: construction, components, and size classification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from crowder.similarity import CandidatePair, Pair

KIND_SMALL = "small"
KIND_LARGE = "large"


@dataclass(frozen=True)
class PairGraph:
    vertices: frozenset[str]
    edges: frozenset[Pair]
    adjacency: dict[str, frozenset[str]]


@dataclass(frozen=True)
class Component:
    """A connected vertex set with its induced edges.

    `kind` is assigned by classify_components; partition pieces reuse this
    type with kind small.
    """

    vertices: tuple[str, ...]
    edges: tuple[Pair, ...]
    kind: str = KIND_SMALL

    def __len__(self) -> int:
        return len(self.vertices)


def build_graph(pairs: Iterable[CandidatePair]) -> PairGraph:
    edges: set[Pair] = set()
    adj: dict[str, set[str]] = {}
    for pair in pairs:
        edges.add(pair.key)
        adj.setdefault(pair.a, set()).add(pair.b)
        adj.setdefault(pair.b, set()).add(pair.a)
    return PairGraph(
        vertices=frozenset(adj),
        edges=frozenset(edges),
        adjacency={v: frozenset(ns) for v, ns in adj.items()},
    )


def connected_components(graph: PairGraph) -> list[Component]:
    """Maximal connected vertex sets, ordered by their smallest vertex id."""
    seen: set[str] = set()
    groups: list[list[str]] = []
    comp_of: dict[str, int] = {}
    for start in sorted(graph.vertices):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        members: list[str] = []
        while queue:
            v = queue.popleft()
            members.append(v)
            comp_of[v] = len(groups)
            for nb in sorted(graph.adjacency[v]):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        members.sort()
        groups.append(members)
    edge_buckets: list[list[Pair]] = [[] for _ in groups]
    for edge in graph.edges:
        edge_buckets[comp_of[edge[0]]].append(edge)
    return [
        Component(vertices=tuple(members), edges=tuple(sorted(bucket)))
        for members, bucket in zip(groups, edge_buckets)
    ]


def classify_components(
    components: Sequence[Component], k: int
) -> tuple[list[Component], list[Component]]:
    """Split components into (small, large): small iff at most k vertices."""
    if k < 2:
        raise ValueError(f"cluster size threshold must be >= 2, got {k}")
    small: list[Component] = []
    large: list[Component] = []
    for comp in components:
        if len(comp) <= k:
            small.append(Component(comp.vertices, comp.edges, KIND_SMALL))
        else:
            large.append(Component(comp.vertices, comp.edges, KIND_LARGE))
    return small, large
