#!/usr/bin/env python3
# this_file: tests/conftest.py
"""Shared digraph fixtures."""

from __future__ import annotations

import itertools

import pytest

from degreewidth.digraph import Digraph, make_digraph


def directed_cycle(n: int) -> Digraph:
    """Return the directed cycle ``0 -> 1 -> ... -> n-1 -> 0``."""
    return make_digraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_digraph(n: int) -> Digraph:
    """Return the digraph with every ordered pair as an arc."""
    return make_digraph(n, itertools.permutations(range(n), 2))


def transitive_tournament(n: int) -> Digraph:
    """Return the acyclic tournament ``i -> j`` for ``i < j``."""
    return make_digraph(n, itertools.combinations(range(n), 2))


@pytest.fixture()
def c3() -> Digraph:
    return directed_cycle(3)


@pytest.fixture()
def digon() -> Digraph:
    return make_digraph(2, [(0, 1), (1, 0)])


@pytest.fixture()
def dag() -> Digraph:
    return make_digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
