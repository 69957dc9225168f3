#!/usr/bin/env python3
# this_file: src/degreewidth/graph_params.py
"""Undirected graph parameters evaluated on backedge graphs and ``D[F]``.

All of them are monotone under taking subgraphs. The empty graph has value 0
everywhere; an edgeless nonempty graph has clique and chromatic number 1.
"""

from __future__ import annotations

from collections.abc import Sequence

from loguru import logger

from .digraph import Ordering, UndirectedGraph, full_mask, iter_bits


def max_degree(g: UndirectedGraph) -> int:
    """Return the maximum degree of ``g`` (0 for the empty graph)."""
    return max((mask.bit_count() for mask in g.adj_masks), default=0)


def greedy_color_count(g: UndirectedGraph, order: Ordering) -> int:
    """First-fit colouring along ``order``; returns the number of colours used."""
    return max(greedy_colouring(g, order), default=-1) + 1


def greedy_colouring(g: UndirectedGraph, order: Ordering) -> list[int]:
    """Return the first-fit colour (0-based) of every vertex along ``order``."""
    colour = [-1] * g.n
    for v in order:
        taken = {colour[w] for w in iter_bits(g.adj_masks[v]) if colour[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        colour[v] = c
    return colour


def _max_clique(adj: Sequence[int], candidates: int) -> int:
    """Bron-Kerbosch with pivoting; returns the clique number of ``candidates``."""
    best = 0

    def expand(size: int, pool: int, excluded: int) -> None:
        nonlocal best
        if not pool and not excluded:
            best = max(best, size)
            return
        if size + pool.bit_count() <= best:
            return
        pivot = max(iter_bits(pool | excluded), key=lambda u: (adj[u] & pool).bit_count())
        for v in iter_bits(pool & ~adj[pivot]):
            expand(size + 1, pool & adj[v], excluded & adj[v])
            pool &= ~(1 << v)
            excluded |= 1 << v

    expand(0, candidates, 0)
    return best


def clique_number(g: UndirectedGraph) -> int:
    """Return ``omega(g)``; 1 for an edgeless nonempty graph, 0 for the empty one."""
    return _max_clique(g.adj_masks, full_mask(g.n))


def chromatic_number(g: UndirectedGraph) -> int:
    """Exact chromatic number by backtracking.

    Vertices are coloured in decreasing degree order; the clique number is a
    lower bound that stops the search early, the greedy count is the start
    upper bound.
    """
    if g.n == 0:
        return 0
    lower = clique_number(g)
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    upper = greedy_color_count(g, Ordering(tuple(order)))
    if upper == lower:
        return upper

    colour = [-1] * g.n
    nodes = 0

    def fits(limit: int, index: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if index == len(order):
            return True
        v = order[index]
        blocked = {colour[w] for w in iter_bits(g.adj_masks[v]) if colour[w] >= 0}
        # a fresh colour is interchangeable with any other unused one
        for c in range(min(used + 1, limit)):
            if c in blocked:
                continue
            colour[v] = c
            if fits(limit, index + 1, max(used, c + 1)):
                return True
        colour[v] = -1
        return False

    best = upper
    for limit in range(lower, upper):
        colour = [-1] * g.n
        if fits(limit, 0, 0):
            best = limit
            break
    logger.debug("chromatic_number n={} value={} nodes={}", g.n, best, nodes)
    return best


def vertex_cover_number(g: UndirectedGraph) -> int:
    """Minimum vertex cover size; branches on a maximum-degree vertex."""
    best = g.n

    def solve(alive: int, taken: int) -> None:
        nonlocal best
        if taken >= best:
            return
        pick = -1
        pick_degree = 0
        for v in iter_bits(alive):
            d = (g.adj_masks[v] & alive).bit_count()
            if d > pick_degree:
                pick, pick_degree = v, d
        if pick_degree == 0:
            best = taken
            return
        if pick_degree <= 2:
            # paths and cycles: every remaining component is solved exactly
            best = min(best, taken + _cover_low_degree(g, alive))
            return
        solve(alive & ~(1 << pick), taken + 1)
        neighbours = g.adj_masks[pick] & alive
        solve(alive & ~neighbours & ~(1 << pick), taken + neighbours.bit_count())

    solve(full_mask(g.n), 0)
    return best


def _cover_low_degree(g: UndirectedGraph, alive: int) -> int:
    """Vertex cover of a graph with maximum degree at most 2 (paths and cycles)."""
    total = 0
    seen = 0
    for start in iter_bits(alive):
        if seen >> start & 1:
            continue
        component = 0
        stack = [start]
        while stack:
            v = stack.pop()
            if component >> v & 1:
                continue
            component |= 1 << v
            stack.extend(iter_bits(g.adj_masks[v] & alive & ~component))
        seen |= component
        vertices = component.bit_count()
        edges = sum((g.adj_masks[v] & component).bit_count() for v in iter_bits(component)) // 2
        # a cycle on c vertices needs ceil(c/2), a path on c vertices floor(c/2)
        total += (vertices + 1) // 2 if edges == vertices else vertices // 2
    return total


def connected_components(g: UndirectedGraph) -> list[frozenset[int]]:
    """Return the connected components, sorted by smallest member."""
    import networkx as nx

    parts = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(parts, key=min)


def is_complete(g: UndirectedGraph, vertices: frozenset[int] | None = None) -> bool:
    """Return whether ``vertices`` (default: all) induce a complete graph."""
    chosen = vertices if vertices is not None else frozenset(g.vertices)
    mask = sum(1 << v for v in chosen)
    return all((g.adj_masks[v] & mask) == mask & ~(1 << v) for v in chosen)


def is_odd_cycle(g: UndirectedGraph, vertices: frozenset[int]) -> bool:
    """Return whether ``vertices`` induce a cycle of odd length at least 3."""
    if len(vertices) < 3 or len(vertices) % 2 == 0:
        return False
    mask = sum(1 << v for v in vertices)
    if any((g.adj_masks[v] & mask).bit_count() != 2 for v in vertices):
        return False
    # 2-regular: connected iff a single cycle
    start = min(vertices)
    reached = 1 << start
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in iter_bits(g.adj_masks[v] & mask & ~reached):
            reached |= 1 << w
            frontier.append(w)
    return reached == mask
