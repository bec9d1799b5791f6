"""Task generators: pair batching, the clique-cover approximation, baselines.

Every generator consumes a candidate pair set and a cluster size bound k and
emits tasks that cover all pairs. They exist to be compared against the
two-tiered generator on task counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from crowder.similarity import CandidatePair, Pair
from crowder.two_tiered import ClusterHit, two_tiered


@dataclass(frozen=True)
class PairHit:
    """A pair task: up to k record pairs verified independently."""

    id: str
    pairs: tuple[Pair, ...]

    kind = "pair"

    def __len__(self) -> int:
        return len(self.pairs)


Hit = ClusterHit | PairHit


def _pair_index(pairs: Sequence[CandidatePair]) -> dict[str, set[Pair]]:
    index: dict[str, set[Pair]] = {}
    for p in pairs:
        index.setdefault(p.a, set()).add(p.key)
        index.setdefault(p.b, set()).add(p.key)
    return index


def _cluster_hit(
    hit_id: str, records: set[str], index: dict[str, set[Pair]]
) -> ClusterHit:
    covered = sorted(
        {
            key
            for r in records
            for key in index.get(r, ())
            if key[0] in records and key[1] in records
        }
    )
    return ClusterHit(
        id=hit_id, records=tuple(sorted(records)), covered_pairs=tuple(covered)
    )


def pair_based(pairs: Sequence[CandidatePair], k: int) -> list[PairHit]:
    """Chunk the pairs, in canonical order, into ceil(|pairs|/k) tasks."""
    if k < 1:
        raise ValueError(f"pair task size must be >= 1, got {k}")
    ordered = sorted(p.key for p in pairs)
    return [
        PairHit(id=f"hit-{i // k + 1:04d}", pairs=tuple(ordered[i : i + k]))
        for i in range(0, len(ordered), k)
    ]


def approx_cover(
    pairs: Sequence[CandidatePair], k: int, seed: int | None = None
) -> tuple[list[ClusterHit], int]:
    """Clique-cover approximation.

    Phase 1 builds a sequence of all vertices and edges: repeatedly pick a
    vertex, append it and its surviving incident edges, and delete them from
    the graph. Phase 2 cuts the sequence into consecutive blocks of k-1
    elements; the edges inside one block touch at most k distinct vertices,
    so each block with at least one edge becomes a task. Blocks without
    edges emit nothing, but the nominal count ceil(|seq|/(k-1)) still counts
    them. Vertex picking is random under `seed`, or by ascending id when
    `seed` is None.
    """
    if k < 2:
        raise ValueError(f"cluster size threshold must be >= 2, got {k}")
    adj: dict[str, set[str]] = {}
    for p in pairs:
        adj.setdefault(p.a, set()).add(p.b)
        adj.setdefault(p.b, set()).add(p.a)

    rng = random.Random(seed) if seed is not None else None
    vertices_left = sorted(adj)
    seq: list[tuple[str, Pair | None]] = []  # (vertex, None) or (vertex, edge)
    while vertices_left:
        idx = rng.randrange(len(vertices_left)) if rng else 0
        v = vertices_left.pop(idx)
        seq.append((v, None))
        for nb in sorted(adj[v]):
            a, b = (v, nb) if v < nb else (nb, v)
            seq.append((v, (a, b)))
            adj[nb].discard(v)
        adj[v].clear()

    nominal = -(-len(seq) // (k - 1)) if seq else 0
    index = _pair_index(pairs)
    hits: list[ClusterHit] = []
    for start in range(0, len(seq), k - 1):
        block = seq[start : start + k - 1]
        endpoints: set[str] = set()
        for _, edge in block:
            if edge is not None:
                endpoints.update(edge)
        if not endpoints:
            continue
        if len(endpoints) > k:
            raise AssertionError(
                f"sequence block touches {len(endpoints)} vertices, bound is {k}"
            )
        hits.append(_cluster_hit(f"hit-{len(hits) + 1:04d}", endpoints, index))
    return hits, nominal


def random_gen(
    pairs: Sequence[CandidatePair], k: int, seed: int | None = 0
) -> list[ClusterHit]:
    """Random baseline: merge randomly drawn uncovered pairs into a task.

    When merging a pair would push the task past k records the task is
    emitted (removing every pair it covers) and the drawn pair starts the
    next one.
    """
    if k < 2:
        raise ValueError(f"cluster size threshold must be >= 2, got {k}")
    rng = random.Random(seed)
    index = _pair_index(pairs)
    alive = sorted({p.key for p in pairs})
    covered: set[Pair] = set()
    hits: list[ClusterHit] = []
    current: set[str] = set()

    def emit() -> None:
        hit = _cluster_hit(f"hit-{len(hits) + 1:04d}", current, index)
        covered.update(hit.covered_pairs)
        hits.append(hit)

    while alive:
        i = rng.randrange(len(alive))
        pair = alive[i]
        if pair in covered or (pair[0] in current and pair[1] in current):
            alive[i] = alive[-1]
            alive.pop()
            continue
        added = {pair[0], pair[1]} - current
        if len(current) + len(added) > k:
            emit()
            current = {pair[0], pair[1]}
        else:
            current.update(added)
    if current:
        emit()
    return hits


def _traversal_gen(
    pairs: Sequence[CandidatePair], k: int, breadth_first: bool
) -> list[ClusterHit]:
    if k < 2:
        raise ValueError(f"cluster size threshold must be >= 2, got {k}")
    adj: dict[str, set[str]] = {}
    for p in pairs:
        adj.setdefault(p.a, set()).add(p.b)
        adj.setdefault(p.b, set()).add(p.a)
    index = _pair_index(pairs)
    hits: list[ClusterHit] = []
    active = sorted(v for v in adj if adj[v])
    while active:
        start = active[0]
        members: set[str] = set()
        seen = {start}
        frontier = [start]
        while frontier and len(members) < k:
            v = frontier.pop(0 if breadth_first else -1)
            members.add(v)
            if len(members) == k:
                break
            neighbors = sorted(adj[v] - seen)
            if not breadth_first:
                neighbors.reverse()  # stack order: smallest id popped first
            frontier.extend(neighbors)
            seen.update(neighbors)
        hit = _cluster_hit(f"hit-{len(hits) + 1:04d}", members, index)
        hits.append(hit)
        for a, b in hit.covered_pairs:
            adj[a].discard(b)
            adj[b].discard(a)
        active = sorted(v for v in adj if adj[v])
    return hits


def bfs_gen(pairs: Sequence[CandidatePair], k: int) -> list[ClusterHit]:
    """Traverse the uncovered graph breadth first from the smallest open id,
    emitting a task every k visited records."""
    return _traversal_gen(pairs, k, breadth_first=True)


def dfs_gen(pairs: Sequence[CandidatePair], k: int) -> list[ClusterHit]:
    """Depth-first variant of bfs_gen."""
    return _traversal_gen(pairs, k, breadth_first=False)


GeneratorFn = Callable[[Sequence[CandidatePair], int, int | None], list[Hit]]


def run_generator(
    name: str, pairs: Sequence[CandidatePair], k: int, seed: int | None = 0
) -> list[Hit]:
    """Dispatch a generator by its registry name."""
    if name == "two-tiered":
        return list(two_tiered(pairs, k))
    if name == "approx":
        hits, _ = approx_cover(pairs, k, seed)
        return list(hits)
    if name == "random":
        return list(random_gen(pairs, k, seed))
    if name == "bfs":
        return list(bfs_gen(pairs, k))
    if name == "dfs":
        return list(dfs_gen(pairs, k))
    if name == "pair":
        return list(pair_based(pairs, k))
    raise ValueError(f"unknown generator {name!r} (choose from {sorted(GENERATORS)})")


GENERATORS = ("two-tiered", "approx", "random", "bfs", "dfs", "pair")
