"""Two-tiered cluster-task generation.

Top tier: greedily partition each large component into highly connected
pieces of at most k vertices until all edges are covered. Bottom tier: pack
all small pieces into the minimum number of cluster tasks by solving the
pattern covering program

    min sum x_i   s.t.  sum a_ij x_i >= c_j  for every size j,  x_i >= 0

exactly, where a pattern a_1..a_k says how many size-j pieces share one task
and is feasible when sum j*a_j <= k. The solver is a branch and bound over
enumerated patterns with a first-fit-decreasing incumbent and the rounded-up
volume bound, so no LP machinery is needed at desk scale.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Sequence

from crowder.pairgraph import (
    Component,
    KIND_LARGE,
    KIND_SMALL,
    build_graph,
    classify_components,
    connected_components,
)
from crowder.similarity import CandidatePair, Pair

Pattern = tuple[int, ...]


@dataclass(frozen=True)
class ClusterHit:
    """A cluster task: at most k records plus the candidate pairs it checks."""

    id: str
    records: tuple[str, ...]
    covered_pairs: tuple[Pair, ...]

    kind = "cluster"

    def __len__(self) -> int:
        return len(self.records)


def partition_lcc(lcc: Component, k: int) -> list[Component]:
    """Split a large component into connected pieces covering all its edges.

    Each piece is grown greedily: seed with the max-degree vertex of the
    remaining graph, then repeatedly pull in the frontier vertex with the
    most edges into the piece (max indegree), breaking ties by fewest edges
    leaving it (min outdegree), then by smallest id. Degrees count only the
    edges not covered by earlier pieces. A piece stops at k vertices or when
    the frontier empties; its covered edges are then removed and the loop
    repeats while edges remain.
    """
    if k < 2:
        raise ValueError(f"cluster size threshold must be >= 2, got {k}")
    if len(lcc) <= k:
        raise ValueError(f"component of size {len(lcc)} is not large for k={k}")

    adj: dict[str, set[str]] = {v: set() for v in lcc.vertices}
    for a, b in lcc.edges:
        adj[a].add(b)
        adj[b].add(a)

    pieces: list[Component] = []
    edges_left = len(lcc.edges)
    while edges_left:
        seed = min((v for v in adj if adj[v]), key=lambda v: (-len(adj[v]), v))
        scc = {seed}
        # conn maps each frontier vertex to its indegree; outdegree is
        # degree - indegree since both count the same remaining edges.
        conn: dict[str, int] = {nb: 1 for nb in adj[seed]}
        while len(scc) < k and conn:
            r_new = min(
                conn, key=lambda v: (-conn[v], len(adj[v]) - conn[v], v)
            )
            del conn[r_new]
            scc.add(r_new)
            for nb in adj[r_new]:
                if nb in scc:
                    continue
                conn[nb] = conn.get(nb, 0) + 1
        covered = sorted(
            (min(a, b), max(a, b)) for a in scc for b in adj[a] if b in scc and a < b
        )
        pieces.append(Component(tuple(sorted(scc)), tuple(covered), KIND_SMALL))
        for a, b in covered:
            adj[a].discard(b)
            adj[b].discard(a)
        edges_left -= len(covered)
    return pieces


@dataclass(frozen=True)
class PackingInstance:
    """Demand counts: counts[j-1] small pieces of exactly j vertices, j<=k."""

    counts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def total_items(self) -> int:
        return sum(self.counts)

    @property
    def total_vertices(self) -> int:
        return sum((j + 1) * c for j, c in enumerate(self.counts))

    @classmethod
    def from_sizes(cls, sizes: Iterable[int], k: int) -> "PackingInstance":
        counts = [0] * k
        for s in sizes:
            if not 1 <= s <= k:
                raise ValueError(f"piece size {s} outside [1, {k}]")
            counts[s - 1] += 1
        return cls(counts=tuple(counts))


def enumerate_patterns(instance: PackingInstance) -> list[Pattern]:
    """All feasible task compositions for the instance's demand counts.

    A pattern a_1..a_k is kept when sum j*a_j <= k, a_j <= c_j, and a_j = 0
    wherever c_j = 0 (compositions that could never be used are omitted).
    Ordered with larger piece sizes first.
    """
    k = instance.k
    patterns: list[Pattern] = []

    def extend(j: int, prefix: list[int], capacity: int) -> None:
        if j > k:
            if any(prefix):
                patterns.append(tuple(prefix))
            return
        limit = min(instance.counts[j - 1], capacity // j)
        for a in range(limit + 1):
            prefix.append(a)
            extend(j + 1, prefix, capacity - j * a)
            prefix.pop()

    extend(1, [], k)
    patterns.sort(key=lambda p: tuple(reversed(p)), reverse=True)
    return patterns


@dataclass
class PackingSolution:
    patterns: list[Pattern]
    multiplicities: list[int]
    objective: int
    bins: list[tuple[int, ...]]  # per task, the piece sizes actually placed


def _ffd_bins(instance: PackingInstance) -> list[list[int]]:
    k = instance.k
    bins: list[tuple[int, list[int]]] = []  # (free capacity, sizes)
    for size in range(k, 0, -1):
        for _ in range(instance.counts[size - 1]):
            for i, (free, sizes) in enumerate(bins):
                if free >= size:
                    sizes.append(size)
                    bins[i] = (free - size, sizes)
                    break
            else:
                bins.append((k - size, [size]))
    return [sizes for _, sizes in bins]


def _lower_bound(demand: tuple[int, ...], k: int) -> int:
    volume = sum((j + 1) * c for j, c in enumerate(demand))
    if volume == 0:
        return 0
    lb = -(-volume // k)
    # Pieces larger than half a task can never share one.
    big = sum(c for j, c in enumerate(demand) if 2 * (j + 1) > k)
    big_free = sum(
        (k - (j + 1)) * c for j, c in enumerate(demand) if 2 * (j + 1) > k
    )
    small_volume = volume - sum(
        (j + 1) * c for j, c in enumerate(demand) if 2 * (j + 1) > k
    )
    overflow = max(0, small_volume - big_free)
    lb2 = big + -(-overflow // k) if overflow else big
    return max(lb, lb2, 1)


def solve_packing(instance: PackingInstance) -> PackingSolution:
    """Exact minimum number of tasks covering the demand counts.

    Branch and bound over maximal feasible patterns: every task must place at
    least one piece of the largest still-demanded size, states are memoized
    on the remaining demand vector, and a branch is cut as soon as it meets
    the volume lower bound. First-fit-decreasing supplies the incumbent and
    usually already matches the bound.
    """
    k = instance.k
    patterns = enumerate_patterns(instance)
    if not patterns:
        return PackingSolution(patterns=[], multiplicities=[], objective=0, bins=[])

    ffd = _ffd_bins(instance)
    root = instance.counts
    if len(ffd) == _lower_bound(root, k):
        chosen = [tuple(sorted(sizes, reverse=True)) for sizes in ffd]
    else:
        chosen = _search_optimal(root, k, patterns, incumbent=ffd)

    multiplicity: dict[Pattern, int] = {}
    for sizes in chosen:
        pat = [0] * k
        for s in sizes:
            pat[s - 1] += 1
        key = tuple(pat)
        multiplicity[key] = multiplicity.get(key, 0) + 1
    return PackingSolution(
        patterns=patterns,
        multiplicities=[multiplicity.get(p, 0) for p in patterns],
        objective=len(chosen),
        bins=sorted(chosen, reverse=True),
    )


def _maximal_patterns(patterns: Sequence[Pattern], k: int, counts: tuple[int, ...]) -> list[Pattern]:
    out = []
    for p in patterns:
        slack = k - sum((j + 1) * a for j, a in enumerate(p))
        extendable = any(
            (j + 1) <= slack and p[j] < counts[j] for j in range(k)
        )
        if not extendable:
            out.append(p)
    return out


def _search_optimal(
    root: tuple[int, ...], k: int, patterns: Sequence[Pattern], incumbent: list[list[int]]
) -> list[tuple[int, ...]]:
    # Covering with >= allows a pattern slot to stay empty, so restricting
    # the search to maximal patterns loses no optimal solution: any pattern
    # can be swapped for a maximal one dominating it.
    maximal = _maximal_patterns(patterns, k, root)
    # Canonical bin order: every task must place a piece of the largest size
    # still in demand, so branch only over patterns containing that size.
    by_size = {j: [p for p in maximal if p[j]] for j in range(k)}

    best_bins: dict[tuple[int, ...], tuple[int, Pattern | None]] = {}
    limit = max(sys.getrecursionlimit(), len(incumbent) * 4 + 100)
    sys.setrecursionlimit(limit)
    unreachable = len(incumbent) + 1  # min bins of any substate <= incumbent

    def solve(demand: tuple[int, ...]) -> int:
        if not any(demand):
            return 0
        cached = best_bins.get(demand)
        if cached is not None:
            return cached[0]
        target = max(j for j in range(k) if demand[j])
        lb = _lower_bound(demand, k)
        best = unreachable
        best_pat: Pattern | None = None
        for pat in by_size[target]:
            nxt = tuple(max(0, d - a) for d, a in zip(demand, pat))
            sub = 1 + solve(nxt)
            if sub < best:
                best, best_pat = sub, pat
                if best == lb:
                    break
        best_bins[demand] = (best, best_pat)
        return best

    total = solve(root)
    bins: list[tuple[int, ...]] = []
    demand = root
    while any(demand):
        _, pat = best_bins[demand]
        assert pat is not None
        placed: list[int] = []
        for j in range(k - 1, -1, -1):
            take = min(pat[j], demand[j])
            placed.extend([j + 1] * take)
        bins.append(tuple(placed))
        demand = tuple(max(0, d - a) for d, a in zip(demand, pat))
    assert len(bins) == total
    return bins


def pack_units(units: Sequence[Component], k: int) -> list[tuple[Component, ...]]:
    """Assign each small piece to a task following the optimal packing.

    Pieces are queued per size in input order; surplus pattern slots (the
    covering constraint may overshoot) are simply left empty.
    """
    for unit in units:
        if len(unit) > k:
            raise ValueError(f"piece of size {len(unit)} exceeds k={k}")
    instance = PackingInstance.from_sizes((len(u) for u in units), k)
    solution = solve_packing(instance)
    queues: dict[int, list[Component]] = {}
    for unit in units:
        queues.setdefault(len(unit), []).append(unit)
    for queue in queues.values():
        queue.reverse()  # pop() yields input order
    tasks: list[tuple[Component, ...]] = []
    for sizes in solution.bins:
        members = tuple(queues[s].pop() for s in sizes if queues.get(s))
        if members:
            tasks.append(members)
    return tasks


def two_tiered(pairs: Sequence[CandidatePair], k: int) -> list[ClusterHit]:
    """Generate the minimum-packed cluster tasks for a candidate pair set.

    Builds the pair graph, partitions every large component into small
    pieces, packs all pieces optimally, and returns tasks that together
    cover every input pair with at most k records each.
    """
    graph = build_graph(pairs)
    components = connected_components(graph)
    small, large = classify_components(components, k)
    units: list[Component] = list(small)
    for lcc in large:
        units.extend(partition_lcc(lcc, k))
    if not units:
        return []
    tasks = pack_units(units, k)

    pair_index: dict[str, set[Pair]] = {}
    for pair in pairs:
        pair_index.setdefault(pair.a, set()).add(pair.key)
        pair_index.setdefault(pair.b, set()).add(pair.key)

    hits: list[ClusterHit] = []
    record_sets = sorted(
        {tuple(sorted(set().union(*(u.vertices for u in members)))) for members in tasks}
    )
    for i, records in enumerate(record_sets, start=1):
        record_set = set(records)
        covered = sorted(
            {
                key
                for r in records
                for key in pair_index.get(r, ())
                if key[0] in record_set and key[1] in record_set
            }
        )
        hits.append(
            ClusterHit(id=f"hit-{i:04d}", records=records, covered_pairs=tuple(covered))
        )
    return hits
