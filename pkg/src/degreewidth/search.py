#!/usr/bin/env python3
# this_file: src/degreewidth/search.py
"""Search engines shared by the width and cost solvers.

Two engines live here:

* :func:`minimize_over_orderings` enumerates all ``n!`` orderings in
  lexicographic order, optionally split across worker processes by first
  vertex, and keeps the lexicographically smallest optimum.
* :func:`suffix_dp` minimises an ordering objective whose per-vertex term
  depends only on the vertex and the set placed before it. The table is
  indexed by vertex bitmasks and filled one popcount layer at a time with
  numpy.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from typing import Literal

import numpy as np
from loguru import logger

from .digraph import Digraph, Ordering
from .errors import GuardExceededError
from .settings import Guards

OrderingCost = Callable[[Digraph, Ordering], int]
StepCost = Callable[[int, np.ndarray, np.ndarray], np.ndarray]
Combine = Literal["max", "sum"]


def resolve_guards(guards: Guards | None) -> Guards:
    """Return ``guards`` or the packaged defaults."""
    return guards if guards is not None else Guards()


def check_guard(guards: Guards | None, name: str, actual: int) -> None:
    """Raise :class:`GuardExceededError` when ``actual`` exceeds guard ``name``."""
    limit = getattr(resolve_guards(guards), name)
    if actual > limit:
        raise GuardExceededError(name, limit, actual)


def _scan_subtree(
    d: Digraph,
    cost: OrderingCost,
    first: int | None,
    lower_bound: int,
) -> tuple[int, tuple[int, ...], int]:
    """Scan the orderings starting with ``first`` (all of them for ``None``)."""
    if first is None:
        candidates = itertools.permutations(range(d.n))
    else:
        rest = [v for v in range(d.n) if v != first]
        candidates = ((first, *tail) for tail in itertools.permutations(rest))
    best_value = -1
    best_perm: tuple[int, ...] = ()
    scanned = 0
    for perm in candidates:
        scanned += 1
        value = cost(d, Ordering(perm))
        if best_value < 0 or value < best_value:
            best_value, best_perm = value, perm
            if value <= lower_bound:
                break
    return best_value, best_perm, scanned


def minimize_over_orderings(
    d: Digraph,
    cost: OrderingCost,
    *,
    lower_bound: int = 0,
    workers: int = 1,
    label: str = "orderings",
) -> tuple[int, Ordering]:
    """Return the minimum of ``cost`` over all orderings and its witness.

    The witness is the lexicographically smallest optimal permutation for any
    number of workers. The scan stops as soon as ``lower_bound`` is reached.

    Args:
        d: Digraph whose orderings are enumerated.
        cost: Module-level function ``(D, ordering) -> int`` (picklable).
        lower_bound: A value known to be optimal once reached.
        workers: Process count; 1 scans in-process.
        label: Name used in debug logs.

    Returns:
        tuple[int, Ordering]: Optimal value and canonical witness.
    """
    if d.n <= 1 or workers <= 1:
        value, perm, scanned = _scan_subtree(d, cost, None, lower_bound)
        logger.debug("{}: scanned {} orderings, best {}", label, scanned, value)
        return value, Ordering(perm)

    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan_subtree, d, cost, first, lower_bound) for first in range(d.n)
        ]
        results = [future.result() for future in futures]
    value, perm, _ = min(results, key=lambda item: (item[0], item[1]))
    logger.debug(
        "{}: scanned {} orderings on {} workers, best {}",
        label,
        sum(item[2] for item in results),
        workers,
        value,
    )
    return value, Ordering(perm)


def popcount_layers(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return all masks sorted by popcount and the start offset of each layer."""
    counts = np.bitwise_count(np.arange(1 << n, dtype=np.uint32))
    order = np.argsort(counts, kind="stable")
    bounds = np.searchsorted(counts[order], np.arange(n + 2))
    return order, bounds


def suffix_dp(
    n: int,
    step: StepCost,
    combine: Combine,
    *,
    label: str = "suffix-dp",
) -> tuple[int, Ordering]:
    """Minimise an ordering objective by dynamic programming over prefix sets.

    ``F(S)`` is the best objective for placing ``V \\ S`` after the prefix
    ``S``; ``F(V) = 0`` and ``F(S) = min over u not in S of
    combine(step(u, S, S | u), F(S | u))``. ``step`` receives arrays of
    prefix masks and returns one cost per mask.

    Args:
        n: Vertex count.
        step: Vectorised per-vertex term ``(u, prefixes, extended) -> costs``.
        combine: ``"max"`` for width objectives, ``"sum"`` for additive ones.
        label: Name used in debug logs.

    Returns:
        tuple[int, Ordering]: ``F(empty)`` and the lexicographically smallest
        optimal ordering.
    """
    if n == 0:
        return 0, Ordering(())
    op = np.maximum if combine == "max" else np.add
    table = np.zeros(1 << n, dtype=np.int64)
    order, bounds = popcount_layers(n)
    sentinel = np.iinfo(np.int64).max
    for layer in range(n - 1, -1, -1):
        states = order[bounds[layer] : bounds[layer + 1]].astype(np.int64)
        best = np.full(states.shape, sentinel, dtype=np.int64)
        for u in range(n):
            bit = 1 << u
            free = (states & bit) == 0
            if not free.any():
                continue
            prefixes = states[free]
            extended = prefixes | bit
            candidate = op(step(u, prefixes, extended).astype(np.int64), table[extended])
            best[free] = np.minimum(best[free], candidate)
        table[states] = best
    logger.debug("{}: filled {} states, optimum {}", label, 1 << n, int(table[0]))

    # walk forward taking the smallest vertex that still admits an optimal completion
    optimum = int(table[0])
    budget = optimum
    perm: list[int] = []
    prefix = 0
    for _ in range(n):
        for u in range(n):
            if prefix >> u & 1:
                continue
            extended = prefix | 1 << u
            single = np.array([prefix], dtype=np.int64)
            term = int(step(u, single, single | (1 << u))[0])
            rest = int(table[extended])
            feasible = max(term, rest) <= budget if combine == "max" else term + rest <= budget
            if feasible:
                perm.append(u)
                prefix = extended
                if combine == "sum":
                    budget -= term
                break
    return optimum, Ordering(tuple(perm))


def crossing_table(d: Digraph) -> np.ndarray:
    """Return ``cross[S]``: the number of arcs from ``V \\ S`` into ``S``.

    Filled by removing the lowest vertex of each mask, highest vertex first:
    ``cross(S) = cross(S - u) - |out(u) & (S - u)| + |in(u) - S|``.
    """
    n = d.n
    full = (1 << n) - 1
    cross = np.zeros(1 << n, dtype=np.int64)
    for u in range(n - 1, -1, -1):
        rest = np.arange(1 << (n - u - 1), dtype=np.int64) << (u + 1)
        masks = rest | (1 << u)
        cross[masks] = (
            cross[rest]
            - np.bitwise_count(rest & d.out_masks[u])
            + np.bitwise_count(~masks & full & d.in_masks[u])
        )
    return cross
