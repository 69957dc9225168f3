#!/usr/bin/env python3
# this_file: src/degreewidth/width.py
"""Exact solvers for degreewidth and the other ordering-minimised parameters.

Every directed parameter here is the minimum, over vertex orderings, of an
undirected parameter of the backedge graph. Exact values come from a subset
dynamic programme where the objective decomposes per vertex, from branch and
bound on directed cycles, or from plain enumeration of orderings for the
cross-checks.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from loguru import logger

from .digraph import (
    Arc,
    ArcSet,
    Digraph,
    Ordering,
    UndirectedGraph,
    backedge_graph,
    backward_arcs,
    cycle_arcs,
    degree_stats,
    full_mask,
    graph_of_arcset,
    is_acyclic,
    is_fas,
    iter_bits,
    ordering_from_fas,
    shortest_directed_cycle,
)
from .errors import InvalidInstanceError
from .graph_params import (
    chromatic_number,
    clique_number,
    connected_components,
    greedy_colouring,
    is_complete,
    is_odd_cycle,
    max_degree,
    vertex_cover_number,
)
from .search import (
    StepCost,
    check_guard,
    minimize_over_orderings,
    popcount_layers,
    resolve_guards,
    suffix_dp,
)
from .settings import Guards


@dataclass(frozen=True)
class WidthResult:
    """Optimal value with the ordering that attains it."""

    value: int
    witness_ordering: Ordering
    method: str


@dataclass(frozen=True)
class Decision:
    """Answer to "is the degreewidth at most k?" with a witness when yes."""

    answer: bool
    k: int
    method: str
    ordering: Ordering | None = None
    fas: ArcSet | None = None


class ParameterSelector(str, Enum):
    """Subgraph-monotone undirected parameters that can be lifted to digraphs."""

    MAX_DEGREE = "max_degree"
    CHROMATIC_NUMBER = "chromatic_number"
    CLIQUE_NUMBER = "clique_number"
    VERTEX_COVER = "vertex_cover"

    def evaluate(self, g: UndirectedGraph) -> int:
        """Return this parameter of ``g``."""
        if self is ParameterSelector.MAX_DEGREE:
            return max_degree(g)
        if self is ParameterSelector.CHROMATIC_NUMBER:
            return chromatic_number(g)
        if self is ParameterSelector.CLIQUE_NUMBER:
            return clique_number(g)
        return vertex_cover_number(g)

    def floor(self, d: Digraph) -> int:
        """A value no ordering of ``d`` can beat; used to stop enumeration early."""
        if self is ParameterSelector.MAX_DEGREE:
            return dig_lower_bound(d)
        if self in (ParameterSelector.CHROMATIC_NUMBER, ParameterSelector.CLIQUE_NUMBER):
            return 1 if d.n else 0
        return 0


def _selector_cost(selector: ParameterSelector, d: Digraph, order: Ordering) -> int:
    return selector.evaluate(backedge_graph(d, order))


def _backedge_max_degree(d: Digraph, order: Ordering) -> int:
    return max_degree(backedge_graph(d, order))


def dig_lower_bound(d: Digraph) -> int:
    """Largest number of digons at a single vertex; a lower bound on degreewidth."""
    return max((degree_stats(d, v).dig for v in d.vertices), default=0)


def degreewidth_bruteforce(
    d: Digraph, *, guards: Guards | None = None, workers: int = 1
) -> WidthResult:
    """Minimise the backedge-graph maximum degree over all ``n!`` orderings.

    Args:
        d: Input digraph.
        guards: Size caps; ``bruteforce_n`` applies.
        workers: Worker processes for the enumeration.

    Returns:
        WidthResult: Degreewidth and the lexicographically smallest optimal ordering.

    Raises:
        GuardExceededError: If ``d`` has more than ``bruteforce_n`` vertices.
    """
    check_guard(guards, "bruteforce_n", d.n)
    value, order = minimize_over_orderings(
        d,
        _backedge_max_degree,
        lower_bound=dig_lower_bound(d),
        workers=workers,
        label="degreewidth-bruteforce",
    )
    return WidthResult(value, order, "bruteforce")


def placement_degree_step(d: Digraph) -> StepCost:
    """Backedge degree of ``u`` when it is placed right after the prefix ``S``.

    Arcs from ``u`` into ``S`` point backwards, and so do arcs into ``u``
    from vertices placed later. A digon contributes once either way.
    """
    full = full_mask(d.n)
    out_masks = d.out_masks
    in_masks = d.in_masks

    def step(u: int, prefixes: np.ndarray, extended: np.ndarray) -> np.ndarray:
        earlier = np.bitwise_count(prefixes & out_masks[u])
        later = np.bitwise_count(~extended & full & in_masks[u])
        return earlier.astype(np.int64) + later

    return step


def degreewidth_dp(d: Digraph, *, guards: Guards | None = None) -> WidthResult:
    """Exact degreewidth by dynamic programming over prefix sets.

    Raises:
        GuardExceededError: If ``d`` has more than ``subset_dp_n`` vertices.
    """
    check_guard(guards, "subset_dp_n", d.n)
    value, order = suffix_dp(d.n, placement_degree_step(d), "max", label="degreewidth-dp")
    return WidthResult(value, order, "subset-dp")


def indeg_ordering_heuristic(d: Digraph) -> WidthResult:
    """Order by nondecreasing in-degree (ties by index) and report the resulting width."""
    order = Ordering(tuple(sorted(d.vertices, key=lambda v: (d.in_degree(v), v))))
    return WidthResult(_backedge_max_degree(d, order), order, "indeg-heuristic")


class _FasSearch:
    """Branch and bound for a feedback arc set whose graph has maximum degree ``k``.

    Each node picks a directed cycle of ``D - F`` with the fewest arcs that
    may still join ``F`` and branches on them; the arcs tried in earlier
    sibling branches are forbidden in later ones. A node dies when the arcs
    that must stay in ``D - F`` already close a cycle. Besides blocked arcs,
    a bundle of parallel two-arc paths ``a -> w -> b`` that cannot all be cut
    without pushing ``a`` or ``b`` above ``k`` counts as a kept connection.
    """

    def __init__(self, d: Digraph, k: int) -> None:
        self.d = d
        self.k = k
        self.nodes = 0
        bundles: dict[Arc, list[int]] = {}
        for w in d.vertices:
            if d.in_degree(w) == 1 and d.out_degree(w) == 1:
                (a,) = iter_bits(d.in_masks[w])
                (b,) = iter_bits(d.out_masks[w])
                if a != b:
                    bundles.setdefault((a, b), []).append(w)
        self.bundles = bundles

    def blocked(self, arc: Arc, fas: set[Arc], degree: list[int], forbidden: set[Arc]) -> bool:
        u, v = arc
        if arc in forbidden:
            return True
        if (v, u) in fas:
            return False
        return degree[u] >= self.k or degree[v] >= self.k

    def dead(self, fas: set[Arc], degree: list[int], forbidden: set[Arc]) -> bool:
        kept = {
            arc
            for arc in self.d.arcs
            if arc not in fas and self.blocked(arc, fas, degree, forbidden)
        }
        for (a, b), middles in self.bundles.items():
            open_paths = sum(1 for w in middles if (a, w) not in fas and (w, b) not in fas)
            spare = (self.k - degree[a]) + (self.k - degree[b])
            if open_paths > spare:
                kept.add((a, b))
        return not is_acyclic(Digraph(self.d.n, frozenset(kept)))

    def cheapest_cycle(
        self, fas: set[Arc], degree: list[int], forbidden: set[Arc]
    ) -> list[Arc] | None:
        """Cycle of ``D - F`` minimising the number of arcs that may join ``F``."""
        d = self.d
        best: tuple[int, list[Arc]] | None = None
        for start in d.vertices:
            dist = [-1] * d.n
            parent: dict[int, int] = {}
            dist[start] = 0
            queue: deque[int] = deque([start])
            settled = [False] * d.n
            while queue:
                v = queue.popleft()
                if settled[v]:
                    continue
                settled[v] = True
                for w in iter_bits(d.out_masks[v]):
                    if w == start or (v, w) in fas:
                        continue
                    weight = 0 if self.blocked((v, w), fas, degree, forbidden) else 1
                    if dist[w] == -1 or dist[v] + weight < dist[w]:
                        dist[w] = dist[v] + weight
                        parent[w] = v
                        if weight:
                            queue.append(w)
                        else:
                            queue.appendleft(w)
            for v in iter_bits(d.in_masks[start]):
                if dist[v] == -1 or (v, start) in fas:
                    continue
                cost = dist[v] + (0 if self.blocked((v, start), fas, degree, forbidden) else 1)
                if best is None or cost < best[0]:
                    path = [v]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    path.reverse()
                    best = (cost, cycle_arcs(path))
        return best[1] if best is not None else None

    def run(self, fas: set[Arc], degree: list[int], forbidden: set[Arc]) -> set[Arc] | None:
        self.nodes += 1
        if self.dead(fas, degree, forbidden):
            return None
        cycle = self.cheapest_cycle(fas, degree, forbidden)
        if cycle is None:
            return fas
        tried = set(forbidden)
        for arc in cycle:
            if self.blocked(arc, fas, degree, tried):
                continue
            u, v = arc
            grown = degree.copy()
            if (v, u) not in fas:
                grown[u] += 1
                grown[v] += 1
            found = self.run(fas | {arc}, grown, tried)
            if found is not None:
                return found
            tried = tried | {arc}
        return None


def degreewidth_via_fas(d: Digraph, k: int) -> ArcSet | None:
    """Search for a feedback arc set ``F`` with ``max degree(D[F]) <= k``.

    Such an ``F`` exists exactly when the degreewidth of ``d`` is at most
    ``k``; the search is complete, so ``None`` means "no".

    Args:
        d: Input digraph.
        k: Degree bound, non-negative.

    Returns:
        ArcSet | None: The first witness found, or ``None``.
    """
    if k < 0:
        raise InvalidInstanceError("k must be non-negative")
    if dig_lower_bound(d) > k:
        logger.debug("degreewidth-via-fas: digon bound {} > {}", dig_lower_bound(d), k)
        return None
    search = _FasSearch(d, k)
    found = search.run(set(), [0] * d.n, set())
    logger.debug(
        "degreewidth-via-fas: k={} nodes={} result={}",
        k,
        search.nodes,
        "found" if found is not None else "none",
    )
    return ArcSet(frozenset(found)) if found is not None else None


def decide_degreewidth(d: Digraph, k: int, *, guards: Guards | None = None) -> Decision:
    """Decide ``degreewidth(d) <= k`` and keep the witness.

    The subset DP answers when ``d`` fits ``subset_dp_n``; larger inputs go to
    the feedback-arc-set search.
    """
    if k < 0:
        raise InvalidInstanceError("k must be non-negative")
    if d.n <= resolve_guards(guards).subset_dp_n:
        result = degreewidth_dp(d, guards=guards)
        if result.value > k:
            return Decision(False, k, "subset-dp")
        order = result.witness_ordering
        return Decision(True, k, "subset-dp", ordering=order, fas=backward_arcs(d, order))
    fas = degreewidth_via_fas(d, k)
    if fas is None:
        return Decision(False, k, "fas-search")
    return Decision(True, k, "fas-search", ordering=ordering_from_fas(d, fas), fas=fas)


def k_degreewidth_decide(d: Digraph, k: int, *, guards: Guards | None = None) -> bool:
    """Return whether the degreewidth of ``d`` is at most ``k``."""
    return decide_degreewidth(d, k, guards=guards).answer


def acyclic_subset_table(d: Digraph) -> np.ndarray:
    """Boolean table over vertex masks: does the mask induce an acyclic subdigraph?

    A set is acyclic iff it has a sink whose removal leaves an acyclic set.
    """
    n = d.n
    acyclic = np.zeros(1 << n, dtype=bool)
    acyclic[0] = True
    order, bounds = popcount_layers(n)
    for layer in range(1, n + 1):
        states = order[bounds[layer] : bounds[layer + 1]].astype(np.int64)
        found = np.zeros(states.shape, dtype=bool)
        for u in range(n):
            bit = 1 << u
            member = (states & bit) != 0
            sink = (states & d.out_masks[u]) == 0
            candidate = member & sink
            if candidate.any():
                found[candidate] |= acyclic[states[candidate] ^ bit]
        acyclic[states] = found
    return acyclic


def dichromatic_number(d: Digraph, *, guards: Guards | None = None) -> int:
    """Minimum number of acyclic parts covering the vertices.

    Counts ``a(X)``, the acyclic subsets of every ``X``, with a zeta
    transform; ``d`` has a cover by ``k`` acyclic sets iff the alternating
    sum of ``a(X)**k`` is positive. Covers shrink to partitions because
    subsets of acyclic sets are acyclic.

    Raises:
        GuardExceededError: If ``d`` has more than ``dichromatic_n`` vertices.
    """
    check_guard(guards, "dichromatic_n", d.n)
    n = d.n
    if n == 0:
        return 0
    if is_acyclic(d):
        return 1
    counts = acyclic_subset_table(d).astype(np.int64)
    for bit in range(n):
        view = counts.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += view[:, 0, :]
    parity = (n - np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)) & 1
    keys, multiplicity = np.unique(counts * 2 + parity, return_counts=True)
    groups = [
        (int(key) >> 1, -1 if int(key) & 1 else 1, int(m))
        for key, m in zip(keys, multiplicity)
    ]
    for k in range(2, n + 1):
        total = sum(sign * m * a**k for a, sign, m in groups)
        if total > 0:
            logger.debug("dichromatic: n={} value={} groups={}", n, k, len(groups))
            return k
    return n


def gamma_via_orderings(
    d: Digraph,
    selector: ParameterSelector,
    *,
    guards: Guards | None = None,
    workers: int = 1,
) -> tuple[int, Ordering]:
    """Minimise ``selector`` of the backedge graph over all orderings.

    Raises:
        GuardExceededError: If ``d`` has more than ``bruteforce_n`` vertices.
    """
    check_guard(guards, "bruteforce_n", d.n)
    return minimize_over_orderings(
        d,
        functools.partial(_selector_cost, selector),
        lower_bound=selector.floor(d),
        workers=workers,
        label=f"orderings[{selector.value}]",
    )


def chi_vec_via_orderings(d: Digraph, *, guards: Guards | None = None, workers: int = 1) -> int:
    """Smallest chromatic number of a backedge graph; equals the dichromatic number."""
    value, _ = gamma_via_orderings(
        d, ParameterSelector.CHROMATIC_NUMBER, guards=guards, workers=workers
    )
    return value


def directed_clique_number(d: Digraph, *, guards: Guards | None = None, workers: int = 1) -> int:
    """Smallest clique number of a backedge graph."""
    value, _ = gamma_via_orderings(
        d, ParameterSelector.CLIQUE_NUMBER, guards=guards, workers=workers
    )
    return value


def tau_vec_via_orderings(d: Digraph, *, guards: Guards | None = None, workers: int = 1) -> int:
    """Smallest vertex cover of a backedge graph; equals the feedback vertex number."""
    value, _ = gamma_via_orderings(
        d, ParameterSelector.VERTEX_COVER, guards=guards, workers=workers
    )
    return value


def feedback_vertex_set(d: Digraph, *, guards: Guards | None = None) -> frozenset[int]:
    """Minimum vertex set meeting every directed cycle.

    Branches on the vertices of a shortest cycle of what remains; the vertices
    tried in earlier branches are kept in later ones.

    Raises:
        GuardExceededError: If ``d`` has more than ``subset_dp_n`` vertices.
    """
    check_guard(guards, "subset_dp_n", d.n)
    best = full_mask(d.n)
    nodes = 0

    def solve(alive: int, removed: int, kept: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if removed.bit_count() >= best.bit_count():
            return
        cycle = shortest_directed_cycle(d, alive=alive)
        if cycle is None:
            best = removed
            return
        if removed.bit_count() + 1 >= best.bit_count():
            return
        for v in cycle:
            if kept >> v & 1:
                continue
            solve(alive & ~(1 << v), removed | 1 << v, kept)
            kept |= 1 << v

    solve(full_mask(d.n), 0, 0)
    logger.debug("fvn: n={} value={} nodes={}", d.n, best.bit_count(), nodes)
    return frozenset(iter_bits(best))


def fvn(d: Digraph, *, guards: Guards | None = None) -> int:
    """Feedback vertex number: size of :func:`feedback_vertex_set`."""
    return len(feedback_vertex_set(d, guards=guards))


def minimal_feedback_arc_sets(d: Digraph, *, guards: Guards | None = None) -> list[ArcSet]:
    """Enumerate every inclusion-minimal feedback arc set, sorted.

    Raises:
        GuardExceededError: If ``d`` has more than ``minimal_fas_arcs`` arcs.
    """
    check_guard(guards, "minimal_fas_arcs", d.num_arcs)
    found: set[frozenset[Arc]] = set()

    def grow(fas: frozenset[Arc], forbidden: frozenset[Arc]) -> None:
        cycle = shortest_directed_cycle(d, removed=fas)
        if cycle is None:
            found.add(fas)
            return
        for arc in cycle_arcs(cycle):
            if arc in forbidden:
                continue
            grow(fas | {arc}, forbidden)
            forbidden = forbidden | {arc}

    grow(frozenset(), frozenset())
    minimal = [
        ArcSet(fas)
        for fas in found
        if not any(is_fas(d, ArcSet(fas - {arc})) for arc in fas)
    ]
    minimal.sort(key=lambda arcs: (len(arcs), arcs.sorted()))
    logger.debug("minimal-fas: {} candidates, {} minimal", len(found), len(minimal))
    return minimal


def gamma_via_minimal_fas(
    d: Digraph, selector: ParameterSelector, *, guards: Guards | None = None
) -> int:
    """Minimise ``selector`` of ``D[F]`` over the inclusion-minimal feedback arc sets."""
    return min(
        selector.evaluate(graph_of_arcset(d, fas))
        for fas in minimal_feedback_arc_sets(d, guards=guards)
    )


def dicolouring_from_ordering(d: Digraph, order: Ordering) -> list[frozenset[int]]:
    """Greedy colour classes of the backedge graph; each class induces an acyclic subdigraph."""
    colour = greedy_colouring(backedge_graph(d, order), order)
    classes: dict[int, set[int]] = {}
    for v, c in enumerate(colour):
        classes.setdefault(c, set()).add(v)
    return [frozenset(classes[c]) for c in sorted(classes)]


@dataclass
class BrooksReport:
    """Outcome of scanning optimal orderings for odd cycles and cliques."""

    k: int
    chi: int
    orderings_checked: int = 0
    counterexamples: list[Ordering] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def _has_tight_component(g: UndirectedGraph, k: int) -> bool:
    for component in connected_components(g):
        if k == 2 and is_odd_cycle(g, component):
            return True
        if k != 2 and len(component) == k + 1 and is_complete(g, component):
            return True
    return False


def brooks_tightness_scan(d: Digraph, k: int, *, guards: Guards | None = None) -> BrooksReport:
    """Check every ordering of width ``k`` for an odd-cycle or clique component.

    When the dichromatic number is ``k + 1``, each backedge graph of maximum
    degree ``k`` must contain a component equal to ``K_{k+1}`` (an odd cycle
    when ``k == 2``). Orderings violating this are reported.

    Raises:
        InvalidInstanceError: If the degreewidth of ``d`` is not ``k``.
        GuardExceededError: If ``d`` has more than ``bruteforce_n`` vertices.
    """
    check_guard(guards, "bruteforce_n", d.n)
    width = degreewidth_dp(d, guards=guards).value
    if width != k:
        raise InvalidInstanceError(f"degreewidth is {width}, not {k}")
    report = BrooksReport(k=k, chi=dichromatic_number(d, guards=guards))
    if report.chi != k + 1:
        return report
    for perm in itertools.permutations(range(d.n)):
        order = Ordering(perm)
        g = backedge_graph(d, order)
        if max_degree(g) != k:
            continue
        report.orderings_checked += 1
        if not _has_tight_component(g, k):
            report.counterexamples.append(order)
    logger.debug(
        "brooks-scan: k={} chi={} checked={} counterexamples={}",
        k,
        report.chi,
        report.orderings_checked,
        len(report.counterexamples),
    )
    return report
