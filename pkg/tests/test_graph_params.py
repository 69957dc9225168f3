#!/usr/bin/env python3
# this_file: tests/test_graph_params.py
"""Tests for the undirected parameters applied to backedge graphs."""

from __future__ import annotations

import itertools

import networkx as nx
import pytest

from degreewidth.digraph import Ordering, UndirectedGraph, make_graph
from degreewidth.graph_params import (
    chromatic_number,
    clique_number,
    connected_components,
    greedy_color_count,
    greedy_colouring,
    is_complete,
    is_odd_cycle,
    max_degree,
    vertex_cover_number,
)


def _cycle(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_networkx(nx.cycle_graph(n))


def _complete(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_networkx(nx.complete_graph(n))


def _brute_vertex_cover(g: UndirectedGraph) -> int:
    for size in range(g.n + 1):
        for chosen in itertools.combinations(range(g.n), size):
            picked = set(chosen)
            if all(u in picked or v in picked for u, v in g.edges):
                return size
    return g.n


@pytest.mark.parametrize(
    ("graph", "expected"),
    [
        (make_graph(0, []), (0, 0, 0, 0)),
        (make_graph(3, []), (0, 1, 1, 0)),
        (_complete(4), (3, 4, 4, 3)),
        (_cycle(5), (2, 2, 3, 3)),
        (_cycle(6), (2, 2, 2, 3)),
        (UndirectedGraph.from_networkx(nx.petersen_graph()), (3, 2, 3, 6)),
    ],
)
def test_parameters_when_standard_graphs_then_known_values(
    graph: UndirectedGraph, expected: tuple[int, int, int, int]
) -> None:
    """Max degree, clique, chromatic and vertex cover numbers of textbook graphs."""
    assert (
        max_degree(graph),
        clique_number(graph),
        chromatic_number(graph),
        vertex_cover_number(graph),
    ) == expected


def test_greedy_colouring_when_bad_order_then_upper_bound_only() -> None:
    """First-fit along a poor ordering can exceed the chromatic number."""
    # on the path 0-1-2-3, placing both ends first forces a third colour
    g = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    order = Ordering((0, 3, 1, 2))

    colours = greedy_colouring(g, order)

    assert all(colours[u] != colours[v] for u, v in g.edges)
    assert greedy_color_count(g, order) >= chromatic_number(g) == 2


def test_chromatic_number_when_random_graphs_then_matches_brute_force() -> None:
    """Backtracking agrees with trying every colouring on small random graphs."""
    for seed in range(8):
        g = UndirectedGraph.from_networkx(nx.gnp_random_graph(7, 0.5, seed=seed))
        brute = next(
            k
            for k in range(1, g.n + 1)
            if any(
                all(col[u] != col[v] for u, v in g.edges)
                for col in itertools.product(range(k), repeat=g.n)
            )
        )
        assert chromatic_number(g) == brute


def test_vertex_cover_when_random_graphs_then_matches_brute_force() -> None:
    for seed in range(10):
        g = UndirectedGraph.from_networkx(nx.gnp_random_graph(8, 0.4, seed=seed))
        assert vertex_cover_number(g) == _brute_vertex_cover(g)


def test_vertex_cover_when_cycles_and_paths_then_low_degree_formula() -> None:
    """A cycle needs half its vertices rounded up, a path rounded down."""
    g = make_graph(9, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (7, 8)])

    assert vertex_cover_number(g) == 2 + 2 + 1


def test_clique_number_when_random_graphs_then_matches_networkx() -> None:
    for seed in range(10):
        graph = nx.gnp_random_graph(9, 0.5, seed=seed)
        g = UndirectedGraph.from_networkx(graph)
        assert clique_number(g) == max(len(c) for c in nx.find_cliques(graph))


def test_connected_components_when_two_parts_then_sorted_by_min() -> None:
    g = make_graph(5, [(3, 4), (0, 2)])

    assert connected_components(g) == [
        frozenset({0, 2}),
        frozenset({1}),
        frozenset({3, 4}),
    ]


def test_is_complete_when_subset_given_then_checks_induced() -> None:
    g = make_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])

    assert is_complete(g, frozenset({0, 1, 2}))
    assert not is_complete(g)


def test_is_odd_cycle_when_triangle_and_square_then_only_triangle() -> None:
    g = make_graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)])

    assert is_odd_cycle(g, frozenset({0, 1, 2}))
    assert not is_odd_cycle(g, frozenset({3, 4, 5, 6}))
    assert is_odd_cycle(_cycle(5), frozenset(range(5)))
