#!/usr/bin/env python3
# this_file: tests/test_generators.py
"""Tests for the seeded instance generators."""

from __future__ import annotations

import pytest

from degreewidth.digraph import delta_max, delta_min, make_digraph
from degreewidth.errors import InvalidInstanceError
from degreewidth.generators import (
    SYMMETRIC_FAMILIES,
    iter_tournaments,
    k_regular_digraph,
    random_3cnf,
    random_digraph,
    random_tournament,
    symmetric_family,
)


def test_random_digraph_when_same_seed_then_same_instance() -> None:
    assert random_digraph(8, 0.4, seed=3) == random_digraph(8, 0.4, seed=3)
    assert random_digraph(8, 0.4, seed=3) != random_digraph(8, 0.4, seed=4)


def test_random_digraph_when_probability_extremes_then_empty_or_complete() -> None:
    assert random_digraph(5, 0.0, seed=1).num_arcs == 0
    assert random_digraph(5, 1.0, seed=1).num_arcs == 20


def test_random_digraph_when_probability_out_of_range_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        random_digraph(3, 1.5, seed=0)


def test_random_tournament_when_generated_then_one_arc_per_pair() -> None:
    t = random_tournament(6, seed=2)

    assert t.num_arcs == 15
    assert all(t.has_arc(u, v) != t.has_arc(v, u) for u in range(6) for v in range(u + 1, 6))


def test_iter_tournaments_when_n3_then_eight_labelled() -> None:
    tournaments = list(iter_tournaments(3))

    assert len(tournaments) == 8
    assert len(set(tournaments)) == 8


@pytest.mark.parametrize(("n", "k"), [(6, 2), (7, 3), (5, 4), (4, 0)])
def test_k_regular_digraph_when_valid_then_all_degrees_k(n: int, k: int) -> None:
    d = k_regular_digraph(n, k, seed=11)

    assert all(d.in_degree(v) == d.out_degree(v) == k for v in d.vertices)
    assert delta_max(d) == k


@pytest.mark.parametrize(("n", "k"), [(3, 3), (4, 5), (3, -1)])
def test_k_regular_digraph_when_impossible_then_invalid(n: int, k: int) -> None:
    with pytest.raises(InvalidInstanceError):
        k_regular_digraph(n, k, seed=0)


@pytest.mark.parametrize(
    ("family", "n", "arcs"),
    [("cycle", 5, 10), ("complete", 4, 12), ("path", 4, 6), ("star", 5, 8), ("petersen", 0, 30)],
)
def test_symmetric_family_when_built_then_every_arc_has_reverse(
    family: str, n: int, arcs: int
) -> None:
    d = symmetric_family(family, n)

    assert d.num_arcs == arcs
    assert all(d.has_arc(v, u) for u, v in d.arcs)


def test_symmetric_family_when_cycle_then_delta_min_two() -> None:
    assert delta_min(symmetric_family("cycle", 6)) == 2


def test_symmetric_family_when_unknown_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError, match="unknown family"):
        symmetric_family("wheel", 5)
    assert "petersen" in SYMMETRIC_FAMILIES


def test_symmetric_family_when_short_cycle_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        symmetric_family("cycle", 2)


@pytest.mark.parametrize("seed", range(10))
def test_random_3cnf_when_generated_then_no_tautologies(seed: int) -> None:
    formula = random_3cnf(4, 8, seed)

    assert formula.num_clauses == 8
    for clause in formula.clauses:
        assert len(clause) == 3
        assert not any(lit.negated() in clause for lit in clause)


def test_random_3cnf_when_single_variable_then_repeated_polarity() -> None:
    formula = random_3cnf(1, 4, 0)

    assert all(len({lit for lit in clause}) == 1 for clause in formula.clauses)


def test_random_3cnf_when_same_seed_then_same_formula() -> None:
    assert random_3cnf(5, 7, 9) == random_3cnf(5, 7, 9)


def test_make_digraph_when_generated_arcs_then_equal_to_generator_output() -> None:
    d = random_digraph(4, 0.5, seed=8)

    assert make_digraph(d.n, d.sorted_arcs()) == d
