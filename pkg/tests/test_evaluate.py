import pytest

from crowder.aggregate import AggregatedVerdict
from crowder.evaluate import (
    bench_generators,
    entity_partition_of,
    precision_recall,
    rank_verdicts,
)
from crowder.records import GroundTruth


def _truth(*pairs):
    return GroundTruth(matches=frozenset(pairs))


def test_rank_breaks_ties_by_pair():
    verdicts = [
        AggregatedVerdict(("c", "d"), 0.9, True),
        AggregatedVerdict(("a", "b"), 0.9, True),
        AggregatedVerdict(("a", "z"), 0.2, False),
    ]
    assert rank_verdicts(verdicts) == [("a", "b"), ("c", "d"), ("a", "z")]


def test_perfect_prefix_has_precision_one():
    ranked = [("a", "b"), ("c", "d"), ("e", "f")]
    truth = _truth(("a", "b"), ("c", "d"))
    points = precision_recall(ranked, truth, [1, 2, 3])
    assert points[0].precision == 1.0
    assert points[1].precision == 1.0
    assert points[1].recall == 1.0
    assert points[2].precision == pytest.approx(2 / 3)


def test_zero_cutoff_omitted():
    points = precision_recall([("a", "b")], _truth(("a", "b")), [0, 1])
    assert [p.n for p in points] == [1]


def test_recall_monotone_and_counts_integral():
    ranked = [(f"a{i}", f"b{i}") for i in range(10)]
    truth = _truth(*[(f"a{i}", f"b{i}") for i in range(0, 10, 2)])
    points = precision_recall(ranked, truth)
    recalls = [p.recall for p in points]
    assert recalls == sorted(recalls)
    for p in points:
        assert (p.precision * p.n) == pytest.approx(round(p.precision * p.n))
        assert (p.recall * len(truth.matches)) == pytest.approx(
            round(p.recall * len(truth.matches))
        )


def test_empty_truth_rejected():
    with pytest.raises(ValueError):
        precision_recall([("a", "b")], GroundTruth(frozenset()), [1])


def test_entity_partition_of(truth):
    part = entity_partition_of(["r1", "r2", "r3", "r7"], truth)
    assert part.sizes == (3, 1)


def test_bench_demo(demo_pairs, truth):
    rows = bench_generators(
        demo_pairs,
        ["two-tiered", "approx", "pair"],
        thresholds=[0.3],
        cluster_sizes=[4],
        seeds=[0],
        truth=truth,
    )
    by_gen = {r.generator: r for r in rows}
    assert by_gen["two-tiered"].hit_count == 3
    assert by_gen["approx"].hit_count == 7  # nominal: 19 sequence elements / 3
    assert by_gen["pair"].hit_count == 3  # ceil(10/4)
    assert by_gen["two-tiered"].comparisons is not None
    assert all(r.error is None for r in rows)


def test_bench_isolates_failures(demo_pairs, truth):
    rows = bench_generators(
        demo_pairs, ["two-tiered", "nonsense"], [0.3], [4], [0], truth
    )
    errors = {r.generator: r.error for r in rows}
    assert errors["two-tiered"] is None
    assert "nonsense" in errors and errors["nonsense"]


def test_bench_single_config_single_row(demo_pairs):
    rows = bench_generators(demo_pairs, ["bfs"], [0.3], [4])
    assert len(rows) == 1
    assert rows[0].comparisons is None  # no truth given
