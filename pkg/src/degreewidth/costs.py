#!/usr/bin/env python3
# this_file: src/degreewidth/costs.py
"""Directed linear-arrangement costs where only backward arcs contribute.

An arc ``(u, v)`` with ``v`` placed before ``u`` has length
``position(u) - position(v)``. The directed OLA sums these lengths, the
directed cutwidth takes the largest number of backward arcs over one prefix
cut, the directed bandwidth takes the longest backward arc. The undirected
counterparts are evaluated on the symmetric closure, where every edge turns
into exactly one backward arc.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from loguru import logger

from .digraph import (
    ArcSet,
    Digraph,
    Ordering,
    UndirectedGraph,
    backedge_graph,
    backward_arcs,
    is_acyclic,
    iter_bits,
    symmetric_closure,
)
from .errors import GraphError
from .search import (
    StepCost,
    check_guard,
    crossing_table,
    minimize_over_orderings,
    resolve_guards,
    suffix_dp,
)
from .settings import Guards


@dataclass(frozen=True)
class CostReport:
    """Optimal cost and its ordering; ``inner_ordering`` is set for OLAvec."""

    value: int
    witness_ordering: Ordering
    method: str
    inner_ordering: Ordering | None = None


def arc_length(order: Ordering, u: int, v: int) -> int:
    """Return ``|position(u) - position(v)|``.

    Raises:
        GraphError: If ``u == v``.
    """
    if u == v:
        raise GraphError("arc length needs two distinct endpoints")
    return abs(order.position[u] - order.position[v])


def di_ola_cost(d: Digraph, order: Ordering) -> int:
    """Sum of backward-arc lengths under ``order``."""
    return sum(arc_length(order, u, v) for u, v in backward_arcs(d, order))


def prefix_cut_profile(d: Digraph, order: Ordering) -> list[int]:
    """Backward arcs crossing each of the ``n - 1`` prefix cuts of ``order``."""
    profile = []
    prefix = 0
    for v in order.perm[:-1]:
        prefix |= 1 << v
        profile.append(
            sum((d.in_masks[u] & ~prefix).bit_count() for u in iter_bits(prefix))
        )
    return profile


def directed_cutwidth_cost(d: Digraph, order: Ordering) -> int:
    """Largest entry of :func:`prefix_cut_profile` (0 for fewer than two vertices)."""
    return max(prefix_cut_profile(d, order), default=0)


def directed_bandwidth_cost(d: Digraph, order: Ordering) -> int:
    """Longest backward arc under ``order`` (0 when none)."""
    return max((arc_length(order, u, v) for u, v in backward_arcs(d, order)), default=0)


def _crossing_step(d: Digraph) -> StepCost:
    cross = crossing_table(d)

    def step(u: int, prefixes: np.ndarray, extended: np.ndarray) -> np.ndarray:
        return cross[extended]

    return step


def _backward_count_step(d: Digraph) -> StepCost:
    out_masks = d.out_masks

    def step(u: int, prefixes: np.ndarray, extended: np.ndarray) -> np.ndarray:
        return np.bitwise_count(prefixes & out_masks[u]).astype(np.int64)

    return step


def di_ola(d: Digraph, *, guards: Guards | None = None, workers: int = 1) -> CostReport:
    """Minimum total backward-arc length over all orderings.

    The total equals the sum over prefix cuts of the backward arcs crossing
    them, so the subset DP applies; beyond ``subset_dp_n`` the enumeration
    takes over under ``bruteforce_n``.

    Raises:
        GuardExceededError: If ``d`` fits neither guard.
    """
    if d.n <= resolve_guards(guards).subset_dp_n:
        value, order = suffix_dp(d.n, _crossing_step(d), "sum", label="diOLA-dp")
        return CostReport(value, order, "subset-dp")
    check_guard(guards, "bruteforce_n", d.n)
    value, order = minimize_over_orderings(
        d, di_ola_cost, lower_bound=0 if is_acyclic(d) else 1, workers=workers, label="diOLA"
    )
    return CostReport(value, order, "bruteforce")


def directed_cutwidth(d: Digraph, *, guards: Guards | None = None) -> CostReport:
    """Minimum over orderings of the largest backward prefix-cut crossing.

    Raises:
        GuardExceededError: If ``d`` has more than ``subset_dp_n`` vertices.
    """
    check_guard(guards, "subset_dp_n", d.n)
    value, order = suffix_dp(d.n, _crossing_step(d), "max", label="dcw-dp")
    return CostReport(value, order, "subset-dp")


def feedback_arc_number(d: Digraph, *, guards: Guards | None = None) -> CostReport:
    """Minimum number of backward arcs over all orderings (minimum feedback arc set).

    Raises:
        GuardExceededError: If ``d`` has more than ``subset_dp_n`` vertices.
    """
    check_guard(guards, "subset_dp_n", d.n)
    value, order = suffix_dp(d.n, _backward_count_step(d), "sum", label="fas-dp")
    return CostReport(value, order, "subset-dp")


def minimum_feedback_arc_set(d: Digraph, *, guards: Guards | None = None) -> ArcSet:
    """Backward arcs of the ordering found by :func:`feedback_arc_number`."""
    return backward_arcs(d, feedback_arc_number(d, guards=guards).witness_ordering)


def directed_bandwidth(d: Digraph, *, guards: Guards | None = None) -> CostReport:
    """Minimum over orderings of the longest backward arc.

    Depth-first placement in lexicographic order. Placing ``u`` at position
    ``p`` creates a backward arc of length ``p - position(x)`` for every
    already placed out-neighbour ``x``; a branch is cut once it cannot beat
    the best value. An acyclic digraph has bandwidth 0.

    Raises:
        GuardExceededError: If ``d`` has more than ``bruteforce_n`` vertices.
    """
    check_guard(guards, "bruteforce_n", d.n)
    n = d.n
    floor = 0 if is_acyclic(d) else 1
    best_value = n
    best_perm: list[int] = list(range(n))
    position = [-1] * n
    perm: list[int] = []
    nodes = 0

    def place(current: int) -> bool:
        nonlocal best_value, best_perm, nodes
        nodes += 1
        p = len(perm)
        if p == n:
            if current < best_value:
                best_value, best_perm = current, perm.copy()
            return best_value <= floor
        for u in range(n):
            if position[u] >= 0:
                continue
            longest = current
            for x in iter_bits(d.out_masks[u]):
                if position[x] >= 0:
                    longest = max(longest, p - position[x])
            if longest >= best_value:
                continue
            position[u] = p
            perm.append(u)
            done = place(longest)
            perm.pop()
            position[u] = -1
            if done:
                return True
        return False

    if n:
        # identity bound: any ordering has bandwidth at most n - 1
        best_value = directed_bandwidth_cost(d, Ordering.identity(n)) + 1
        best_perm = list(range(n))
        place(0)
    else:
        best_value = 0
    logger.debug("dbw: n={} value={} nodes={}", n, best_value, nodes)
    return CostReport(best_value, Ordering(tuple(best_perm)), "branch-and-bound")


def ola_undirected(g: UndirectedGraph, *, guards: Guards | None = None) -> CostReport:
    """Optimal linear arrangement of ``g`` (sum of edge lengths)."""
    return di_ola(symmetric_closure(g), guards=guards)


def cutwidth_undirected(g: UndirectedGraph, *, guards: Guards | None = None) -> CostReport:
    """Cutwidth of ``g``."""
    return directed_cutwidth(symmetric_closure(g), guards=guards)


def bandwidth_undirected(g: UndirectedGraph, *, guards: Guards | None = None) -> CostReport:
    """Bandwidth of ``g``."""
    return directed_bandwidth(symmetric_closure(g), guards=guards)


def ola_vec(d: Digraph, *, guards: Guards | None = None) -> CostReport:
    """Minimum over orderings of the optimal linear arrangement of the backedge graph.

    The inner arrangement is solved once per distinct backedge graph. The
    minimum feedback arc number is a floor: a backedge graph with ``m`` edges
    has arrangement cost at least ``m``.

    Raises:
        GuardExceededError: If ``d`` has more than ``ola_vec_n`` vertices.
    """
    check_guard(guards, "ola_vec_n", d.n)
    floor = feedback_arc_number(d, guards=guards).value
    memo: dict[frozenset[tuple[int, int]], CostReport] = {}
    best: tuple[int, Ordering, Ordering] | None = None
    scanned = 0
    for perm in itertools.permutations(range(d.n)):
        scanned += 1
        outer = Ordering(perm)
        g = backedge_graph(d, outer)
        inner = memo.get(g.edges)
        if inner is None:
            inner = ola_undirected(g, guards=guards)
            memo[g.edges] = inner
        if best is None or inner.value < best[0]:
            best = (inner.value, outer, inner.witness_ordering)
            if inner.value <= floor:
                break
    logger.debug("OLAvec: scanned {} orderings, {} distinct backedge graphs", scanned, len(memo))
    assert best is not None
    return CostReport(best[0], best[1], "bruteforce", inner_ordering=best[2])
