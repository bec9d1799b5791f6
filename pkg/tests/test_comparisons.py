import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crowder.comparisons import (
    EntityPartition,
    comparisons_closed,
    comparisons_seq,
    extreme_orderings,
)
from tests.oracles import comparisons_by_walk, ordering_extremes

partitions = st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=8)


def test_worked_example_three_plus_one():
    assert comparisons_seq(EntityPartition((3, 1))) == 3
    assert comparisons_closed(EntityPartition((3, 1))) == 3


def test_reversed_order_costs_more():
    assert comparisons_seq(EntityPartition((1, 3))) == 5
    assert comparisons_closed(EntityPartition((1, 3))) == 5


def test_all_singletons_is_quadratic():
    for n in (1, 2, 5, 9):
        part = EntityPartition((1,) * n)
        assert comparisons_seq(part) == n * (n - 1) // 2
        assert comparisons_closed(part) == n * (n - 1) // 2


def test_single_entity_is_linear():
    for n in (1, 2, 5, 9):
        part = EntityPartition((n,))
        assert comparisons_seq(part) == n - 1
        assert comparisons_closed(part) == n - 1


def test_two_pairs():
    assert comparisons_seq(EntityPartition((2, 2))) == 4
    assert comparisons_closed(EntityPartition((2, 2))) == 4


@given(partitions)
def test_seq_equals_closed(sizes):
    part = EntityPartition(tuple(sizes))
    assert comparisons_seq(part) == comparisons_closed(part)


@given(partitions)
def test_seq_matches_walk_oracle(sizes):
    assert comparisons_seq(EntityPartition(tuple(sizes))) == comparisons_by_walk(sizes)


@given(partitions)
def test_bounds(sizes):
    part = EntityPartition(tuple(sizes))
    n = part.n
    assert n - 1 <= comparisons_seq(part) <= n * (n - 1) // 2


def test_extremes_worked_example():
    ext = extreme_orderings([3, 1])
    assert ext.minimum == 3 and ext.maximum == 5
    assert ext.min_order == (3, 1)
    assert ext.descending_value == 3 and ext.ascending_value == 5


def test_extremes_single_entity():
    ext = extreme_orderings([6])
    assert ext.minimum == ext.maximum == 5


def test_extremes_symmetric_sizes():
    ext = extreme_orderings([1, 1, 1])
    assert ext.minimum == ext.maximum == 3


def test_extremes_rejects_large_m():
    with pytest.raises(ValueError, match="brute-force"):
        extreme_orderings([1] * 11)


@given(st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=7))
@settings(max_examples=60, deadline=None)
def test_minimum_is_a_size_sorted_order(sizes):
    ext = extreme_orderings(sizes)
    lo, hi = ordering_extremes(sizes)
    assert (ext.minimum, ext.maximum) == (lo, hi)
    # the best order is one of the two sorted directions (descending, per the
    # weighted-sum structure of the closed form)
    assert ext.minimum == min(ext.ascending_value, ext.descending_value)
    assert ext.minimum == ext.descending_value
    assert ext.maximum == ext.ascending_value
