#!/usr/bin/env python3
# this_file: tests/test_benchmark.py
"""Micro-benchmarks for the exponential solvers (run with ``hatch run test:bench``)."""

from __future__ import annotations

import pytest

from degreewidth.costs import di_ola, directed_cutwidth
from degreewidth.generators import random_digraph
from degreewidth.reductions import CnfFormula, build_reduction
from degreewidth.width import degreewidth_bruteforce, degreewidth_dp, dichromatic_number

pytestmark = pytest.mark.benchmark


def test_degreewidth_dp_n14(benchmark) -> None:
    d = random_digraph(14, 0.3, seed=1)

    result = benchmark(degreewidth_dp, d)

    assert result.value >= 0


def test_degreewidth_bruteforce_n8(benchmark) -> None:
    d = random_digraph(8, 0.3, seed=2)

    result = benchmark(degreewidth_bruteforce, d)

    assert result.value == degreewidth_dp(d).value


def test_dichromatic_number_n14(benchmark) -> None:
    d = random_digraph(14, 0.4, seed=3)

    assert benchmark(dichromatic_number, d) >= 1


def test_di_ola_and_cutwidth_n12(benchmark) -> None:
    d = random_digraph(12, 0.3, seed=4)

    def both() -> tuple[int, int]:
        return di_ola(d).value, directed_cutwidth(d).value

    ola, cutwidth = benchmark(both)

    assert ola >= cutwidth


def test_build_reduction_ten_clauses(benchmark) -> None:
    formula = CnfFormula.from_ints(
        4, [(1, 2, 3), (-1, 2, 4), (1, -3, -4), (-2, 3, 4), (2, -3, 4)] * 2
    )

    reduction = benchmark(build_reduction, formula, 2)

    assert reduction.digraph.n > 0
