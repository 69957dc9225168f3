#!/usr/bin/env python3
# this_file: tests/test_properties.py
"""Property-based invariants over small random digraphs."""

from __future__ import annotations

import itertools

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from degreewidth.costs import di_ola, di_ola_cost, ola_vec, prefix_cut_profile
from degreewidth.digraph import (
    Digraph,
    Ordering,
    backedge_graph,
    backward_arcs,
    delta_max,
    delta_min,
    graph_of_arcset,
    is_acyclic,
    is_fas,
    make_digraph,
    ordering_from_fas,
    reverse,
)
from degreewidth.graph_params import max_degree
from degreewidth.width import (
    degreewidth_bruteforce,
    degreewidth_dp,
    dichromatic_number,
    dig_lower_bound,
    directed_clique_number,
)

PAIRS = {n: list(itertools.permutations(range(n), 2)) for n in range(7)}


@st.composite
def digraphs(draw, max_n: int = 6) -> Digraph:
    """Random loop-free digraph on at most ``max_n`` vertices."""
    n = draw(st.integers(min_value=0, max_value=max_n))
    arcs = draw(st.sets(st.sampled_from(PAIRS[n]))) if n > 1 else set()
    return make_digraph(n, arcs)


@st.composite
def digraphs_with_ordering(draw, max_n: int = 6) -> tuple[Digraph, Ordering]:
    d = draw(digraphs(max_n))
    perm = draw(st.permutations(list(range(d.n))))
    return d, Ordering(tuple(perm))


@settings(max_examples=150, deadline=None)
@given(digraphs())
def test_degreewidth_dp_matches_bruteforce(d: Digraph) -> None:
    assert degreewidth_dp(d).value == degreewidth_bruteforce(d).value


@settings(max_examples=150, deadline=None)
@given(digraphs())
def test_degreewidth_between_digon_bound_and_delta_min(d: Digraph) -> None:
    width = degreewidth_dp(d).value

    assert dig_lower_bound(d) <= width <= delta_min(d) <= delta_max(d)


@settings(max_examples=100, deadline=None)
@given(digraphs())
def test_degreewidth_invariant_under_reversal(d: Digraph) -> None:
    assert degreewidth_dp(d).value == degreewidth_dp(reverse(d)).value


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=5))
def test_clique_dichromatic_width_chain(d: Digraph) -> None:
    """Directed clique number <= dichromatic number <= degreewidth + 1."""
    chi = dichromatic_number(d)

    assert directed_clique_number(d) <= chi <= degreewidth_dp(d).value + 1


@settings(max_examples=100, deadline=None)
@given(digraphs())
def test_dichromatic_one_iff_acyclic(d: Digraph) -> None:
    assert (dichromatic_number(d) <= 1) == is_acyclic(d)
    assert (dichromatic_number(d) == 1) == (is_acyclic(d) and d.n > 0)


@settings(max_examples=150, deadline=None)
@given(digraphs_with_ordering())
def test_backward_length_equals_cut_profile_sum(case: tuple[Digraph, Ordering]) -> None:
    d, order = case

    assert di_ola_cost(d, order) == sum(prefix_cut_profile(d, order))


@settings(max_examples=150, deadline=None)
@given(digraphs_with_ordering())
def test_backward_arcs_give_fas_and_ordering_round_trip(case: tuple[Digraph, Ordering]) -> None:
    """The backward arcs of any ordering form a FAS whose ordering has no larger width."""
    d, order = case
    fas = backward_arcs(d, order)

    assert is_fas(d, fas)
    rebuilt = ordering_from_fas(d, fas)
    assert max_degree(backedge_graph(d, rebuilt)) <= max_degree(graph_of_arcset(d, fas))


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=5))
def test_ola_vec_at_most_di_ola(d: Digraph) -> None:
    assert ola_vec(d).value <= di_ola(d).value


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_acyclicity_agrees_with_networkx(d: Digraph) -> None:
    assert is_acyclic(d) == nx.is_directed_acyclic_graph(d.to_networkx())
