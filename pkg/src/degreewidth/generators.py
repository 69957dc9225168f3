#!/usr/bin/env python3
# this_file: src/degreewidth/generators.py
"""Seeded instance generators.

All randomness goes through ``numpy.random.Generator(PCG64(seed))`` so a
``(kind, n, seed)`` triple always produces the same instance.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator

import networkx as nx
import numpy as np
from loguru import logger

from .digraph import Digraph, UndirectedGraph, symmetric_closure
from .errors import ConstructionError, InvalidInstanceError
from .reductions import CnfFormula, Literal

SYMMETRIC_FAMILIES = ("cycle", "complete", "path", "star", "petersen")


def make_rng(seed: int) -> np.random.Generator:
    """Return the PCG64 generator used by every command."""
    return np.random.Generator(np.random.PCG64(seed))


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered pair ``(u, v)``, ``u != v``, is an arc with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInstanceError("arc probability must lie in [0, 1]")
    rng = make_rng(seed)
    coins = rng.random((n, n)) < p
    np.fill_diagonal(coins, False)
    rows, cols = np.nonzero(coins)
    return Digraph(n, frozenset(zip(rows.tolist(), cols.tolist())))


def random_tournament(n: int, seed: int) -> Digraph:
    """Orient every pair ``u < v`` by a fair coin."""
    rng = make_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    forward = rng.random(len(pairs)) < 0.5
    arcs = {(u, v) if keep else (v, u) for (u, v), keep in zip(pairs, forward.tolist())}
    return Digraph(n, frozenset(arcs))


def iter_tournaments(n: int) -> Iterator[Digraph]:
    """Yield all ``2**(n choose 2)`` labelled tournaments on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Digraph(
            n,
            frozenset((u, v) if mask >> b & 1 else (v, u) for b, (u, v) in enumerate(pairs)),
        )


def k_regular_digraph(n: int, k: int, seed: int, *, max_tries: int = 1000) -> Digraph:
    """Digraph with every in- and out-degree equal to ``k``.

    Built as the union of ``k`` random permutations without fixed points or
    repeated arcs; a permutation that clashes is redrawn, and the whole
    union restarts when one layer keeps failing.

    Raises:
        InvalidInstanceError: If ``k < 0`` or ``k >= n`` (for ``n > 0``).
        ConstructionError: If no union is found within ``max_tries`` draws.
    """
    if k < 0 or (n > 0 and k >= n) or (n == 0 and k > 0):
        raise InvalidInstanceError(f"no {k}-regular digraph on {n} vertices")
    if k == n - 1:
        return Digraph(n, frozenset(itertools.permutations(range(n), 2)))
    rng = make_rng(seed)
    draws = 0
    while draws < max_tries:
        arcs: set[tuple[int, int]] = set()
        for _ in range(k):
            for _attempt in range(50):
                draws += 1
                perm = rng.permutation(n).tolist()
                layer = {(v, perm[v]) for v in range(n)}
                if all(u != v for u, v in layer) and not layer & arcs:
                    arcs |= layer
                    break
            else:
                break
        else:
            logger.debug("kregular: n={} k={} found after {} draws", n, k, draws)
            return Digraph(n, frozenset(arcs))
    raise ConstructionError(f"no {k}-regular digraph on {n} vertices after {draws} draws")


def symmetric_family(family: str, n: int) -> Digraph:
    """Symmetric closure of a named undirected family on ``n`` vertices.

    ``star`` has one centre and ``n - 1`` leaves; ``petersen`` ignores ``n``.
    """
    builders = {
        "cycle": nx.cycle_graph,
        "complete": nx.complete_graph,
        "path": nx.path_graph,
        "star": lambda size: nx.star_graph(size - 1) if size else nx.empty_graph(0),
        "petersen": lambda _size: nx.petersen_graph(),
    }
    if family not in builders:
        raise InvalidInstanceError(
            f"unknown family '{family}'; expected one of {', '.join(SYMMETRIC_FAMILIES)}"
        )
    if family == "cycle" and 0 < n < 3:
        raise InvalidInstanceError("a cycle needs at least 3 vertices")
    return symmetric_closure(UndirectedGraph.from_networkx(builders[family](n)))


def random_3cnf(num_vars: int, num_clauses: int, seed: int) -> CnfFormula:
    """Random 3-CNF without tautological clauses.

    Clauses use three distinct variables when there are at least three;
    otherwise a repeated variable repeats its first polarity.
    """
    if num_vars < 1 and num_clauses > 0:
        raise InvalidInstanceError("clauses need at least one variable")
    rng = make_rng(seed)
    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(num_vars, size=3, replace=num_vars < 3).tolist()
        signs = (rng.random(3) < 0.5).tolist()
        polarity: dict[int, bool] = {}
        clause = []
        for var, sign in zip(variables, signs):
            positive = polarity.setdefault(var, sign)
            clause.append(Literal(var, positive))
        clauses.append(tuple(clause))
    return CnfFormula(num_vars, tuple(clauses))
