#!/usr/bin/env python3
# this_file: tests/test_search.py
"""Tests for the ordering enumeration and subset DP engines."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from degreewidth.digraph import Digraph, Ordering, backedge_graph
from degreewidth.errors import GuardExceededError
from degreewidth.generators import random_digraph
from degreewidth.graph_params import max_degree
from degreewidth.search import (
    check_guard,
    crossing_table,
    minimize_over_orderings,
    popcount_layers,
    resolve_guards,
    suffix_dp,
)
from degreewidth.settings import Guards
from degreewidth.width import placement_degree_step


def _backedge_count(d: Digraph, order: Ordering) -> int:
    return backedge_graph(d, order).num_edges


def _width(d: Digraph, order: Ordering) -> int:
    return max_degree(backedge_graph(d, order))


def test_check_guard_when_within_then_silent_and_above_then_raises() -> None:
    check_guard(None, "bruteforce_n", 10)

    with pytest.raises(GuardExceededError) as info:
        check_guard(Guards(bruteforce_n=4), "bruteforce_n", 5)

    assert (info.value.guard, info.value.limit, info.value.actual) == ("bruteforce_n", 4, 5)
    assert resolve_guards(None) == Guards()


def test_popcount_layers_when_n3_then_layers_by_size() -> None:
    order, bounds = popcount_layers(3)

    assert bounds.tolist() == [0, 1, 4, 7, 8]
    assert order[0] == 0 and order[-1] == 7
    assert sorted(order[1:4].tolist()) == [1, 2, 4]


def test_minimize_over_orderings_when_ties_then_lexicographically_smallest() -> None:
    """The arcless digraph has cost 0 everywhere; the identity wins."""
    d = Digraph(4, frozenset())

    value, order = minimize_over_orderings(d, _backedge_count)

    assert value == 0
    assert order == Ordering.identity(4)


def test_minimize_over_orderings_when_workers_then_same_witness() -> None:
    """Splitting by first vertex keeps the canonical witness."""
    d = random_digraph(6, 0.4, seed=3)

    single = minimize_over_orderings(d, _width, lower_bound=-1)
    pooled = minimize_over_orderings(d, _width, lower_bound=-1, workers=2)

    assert single == pooled


def test_crossing_table_when_compared_with_direct_count_then_equal() -> None:
    d = random_digraph(6, 0.5, seed=11)
    cross = crossing_table(d)

    for mask in range(1 << d.n):
        direct = sum(1 for u, v in d.arcs if mask >> v & 1 and not mask >> u & 1)
        assert cross[mask] == direct


def test_suffix_dp_when_empty_then_zero() -> None:
    value, order = suffix_dp(0, placement_degree_step(Digraph(0, frozenset())), "max")

    assert value == 0
    assert len(order) == 0


@pytest.mark.parametrize("seed", range(6))
def test_suffix_dp_when_width_objective_then_matches_enumeration(seed: int) -> None:
    """DP optimum and witness equal the lexicographic enumeration."""
    d = random_digraph(6, 0.45, seed=seed)

    value, order = suffix_dp(d.n, placement_degree_step(d), "max")
    brute = min(
        (_width(d, Ordering(perm)), perm) for perm in itertools.permutations(range(d.n))
    )

    assert value == brute[0]
    assert order.perm == brute[1]
    assert _width(d, order) == value


def test_suffix_dp_when_sum_objective_then_matches_enumeration() -> None:
    """With ``sum`` and the crossing table the DP yields the minimum total cut size."""
    d = random_digraph(5, 0.5, seed=2)
    cross = crossing_table(d)

    value, order = suffix_dp(
        d.n, lambda u, prefixes, extended: cross[extended], "sum"
    )

    def total(perm: tuple[int, ...]) -> int:
        prefix = 0
        cost = 0
        for v in perm:
            prefix |= 1 << v
            cost += int(cross[prefix])
        return cost

    assert value == min(total(p) for p in itertools.permutations(range(d.n)))
    assert total(order.perm) == value
    assert isinstance(cross, np.ndarray)
