#!/usr/bin/env python3
# this_file: tests/test_reductions.py
"""Tests for the gadget constructions and the 3-SAT reduction round-trip."""

from __future__ import annotations

import pytest

from degreewidth.digraph import (
    ArcSet,
    degeneracy,
    delta_min,
    graph_of_arcset,
    is_bipartite,
    is_fas,
    make_digraph,
    subdivide,
    underlying_graph,
)
from degreewidth.errors import ConstructionError, GuardExceededError, InvalidInstanceError
from degreewidth.generators import random_3cnf, random_digraph
from degreewidth.graph_params import max_degree
from degreewidth.reductions import (
    CnfFormula,
    Literal,
    Valuation,
    brooks_gadget,
    build_reduction,
    clause_gadget,
    expected_reduction_size,
    is_one_subdivision_shape,
    sat_bruteforce,
    transfer_cut_check,
    transfer_digraph,
    valuation_from_fas,
    witness_fas_from_valuation,
)
from degreewidth.settings import Guards
from degreewidth.width import (
    degreewidth_dp,
    degreewidth_via_fas,
    dichromatic_number,
    dig_lower_bound,
)

from .conftest import directed_cycle

SINGLE = CnfFormula.from_ints(1, [(1, 1, 1)])
UNSAT = CnfFormula.from_ints(1, [(1, 1, 1), (-1, -1, -1)])


def test_literal_when_dimacs_round_trip_then_same() -> None:
    lit = Literal.from_dimacs(-3)

    assert lit == Literal(2, False)
    assert lit.to_dimacs() == -3
    assert str(lit) == "~x3"
    assert lit.negated() == Literal(2, True)


def test_literal_when_zero_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        Literal.from_dimacs(0)


def test_cnf_formula_when_tautological_clause_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError, match="tautological"):
        CnfFormula.from_ints(2, [(1, -1, 2)])


def test_cnf_formula_when_two_literals_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError, match="expected 3"):
        CnfFormula.from_ints(2, [(1, 2)])


def test_cnf_formula_when_unknown_variable_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError, match="unknown variable"):
        CnfFormula.from_ints(1, [(1, 2, 1)])


def test_valuation_when_evaluated_then_matches_clauses() -> None:
    formula = CnfFormula.from_ints(2, [(1, 2, 2), (-1, -1, 2)])

    assert Valuation((False, True)).satisfies(formula)
    assert not Valuation((True, False)).satisfies(formula)
    assert Valuation((True, False)).as_dict() == {"x1": True, "x2": False}


def test_valuation_when_wrong_length_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        SINGLE.evaluate(Valuation((True, False)))


def test_transfer_digraph_when_p3_then_layout() -> None:
    gadget = transfer_digraph(3)

    assert gadget.digraph.n == 5
    assert gadget.digraph.num_arcs == 6
    assert (gadget.s, gadget.t) == (0, 4)
    assert gadget.transfer.middles == (1, 2, 3)
    assert gadget.roles[0] == "s" and gadget.roles[4] == "t"
    assert gadget.roles[2] == "tr:src=0,dst=4,path=2"


def test_transfer_digraph_when_p0_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        transfer_digraph(0)


@pytest.mark.parametrize(("k", "p"), [(1, 1), (1, 2), (1, 3), (2, 4), (2, 5)])
def test_transfer_cut_check_when_exhaustive_then_holds(k: int, p: int) -> None:
    """Every disconnecting arc set has width at least ceil(p/2)."""
    report = transfer_cut_check(k, p)

    assert report.exhaustive
    assert report.checked == 1 << (2 * p)
    assert report.disconnecting > 0
    assert report.holds


@pytest.mark.parametrize("p", [6, 7, 8])
def test_transfer_cut_check_when_sampled_then_holds(p: int) -> None:
    report = transfer_cut_check(p // 2, p, samples=10_000, seed=5, exhaustive_limit=5)

    assert not report.exhaustive
    assert report.checked == 10_000
    assert report.violations == []
    assert report.holds


def test_clause_gadget_when_k1_then_33_vertices() -> None:
    gadget = clause_gadget(1)

    assert gadget.digraph.n == 33
    assert gadget.roles[:3] == ("l:j=1,i=1", "l:j=1,i=2", "l:j=1,i=3")
    assert gadget.roles[6] == "c:j=1,i=1"


def test_clause_gadget_when_k0_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        clause_gadget(0)


@pytest.mark.parametrize(
    ("formula", "k", "vertices"),
    [(SINGLE, 1, 33), (UNSAT, 1, 120)],
)
def test_build_reduction_when_examples_then_expected_vertex_counts(
    formula: CnfFormula, k: int, vertices: int
) -> None:
    reduction = build_reduction(formula, k)

    assert reduction.digraph.n == vertices
    assert (reduction.digraph.n, reduction.digraph.num_arcs) == expected_reduction_size(
        formula, k
    )
    assert len(reduction.roles) == vertices
    assert is_one_subdivision_shape(reduction)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_build_reduction_when_random_formulas_then_closed_form_size(seed: int, k: int) -> None:
    formula = random_3cnf(4, 5, seed)

    reduction = build_reduction(formula, k)

    assert (reduction.digraph.n, reduction.digraph.num_arcs) == expected_reduction_size(
        formula, k
    )
    assert is_one_subdivision_shape(reduction)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("k", [1, 2])
def test_build_reduction_when_random_formulas_then_underlying_bipartite_and_2_degenerate(
    seed: int, k: int
) -> None:
    reduction = build_reduction(random_3cnf(3, 1 + seed % 3, seed), k)

    g = underlying_graph(reduction.digraph)

    assert is_bipartite(g)
    assert degeneracy(g) <= 2


def test_subdivide_when_c3_then_underlying_bipartite_and_2_degenerate() -> None:
    g = underlying_graph(subdivide(directed_cycle(3)))

    assert g.n == 6
    assert is_bipartite(g)
    assert degeneracy(g) == 2


def test_build_reduction_when_k0_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        build_reduction(SINGLE, 0)


def test_witness_round_trip_when_single_clause_then_width_k() -> None:
    """Satisfying valuation -> FAS of width k -> satisfying valuation."""
    reduction = build_reduction(SINGLE, 1)
    valuation = Valuation((True,))

    fas = witness_fas_from_valuation(reduction, valuation)

    assert is_fas(reduction.digraph, fas)
    assert max_degree(graph_of_arcset(reduction.digraph, fas)) == 1
    assert valuation_from_fas(reduction, fas) == valuation


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("k", [1, 2])
def test_witness_round_trip_when_random_satisfiable_then_consistent(seed: int, k: int) -> None:
    formula = random_3cnf(4, 4, seed)
    valuation = sat_bruteforce(formula)
    assert valuation is not None
    reduction = build_reduction(formula, k)

    fas = witness_fas_from_valuation(reduction, valuation)
    extracted = valuation_from_fas(reduction, fas)

    assert max_degree(graph_of_arcset(reduction.digraph, fas)) == k
    assert extracted.satisfies(formula)


def test_witness_fas_when_valuation_unsatisfying_then_invalid() -> None:
    reduction = build_reduction(SINGLE, 1)

    with pytest.raises(InvalidInstanceError, match="does not satisfy"):
        witness_fas_from_valuation(reduction, Valuation((False,)))


def test_valuation_from_fas_when_not_fas_then_invalid() -> None:
    reduction = build_reduction(SINGLE, 1)

    with pytest.raises(InvalidInstanceError, match="not a feedback arc set"):
        valuation_from_fas(reduction, ArcSet())


def test_reduction_when_single_clause_then_search_finds_width_k() -> None:
    reduction = build_reduction(SINGLE, 1)

    found = degreewidth_via_fas(reduction.digraph, 1)

    assert found is not None
    assert valuation_from_fas(reduction, found).satisfies(SINGLE)


@pytest.mark.slow
def test_reduction_when_unsat_then_no_width_k_witness() -> None:
    """The 120-vertex instance of an unsatisfiable formula has degreewidth above 1."""
    reduction = build_reduction(UNSAT, 1)

    assert sat_bruteforce(UNSAT) is None
    assert degreewidth_via_fas(reduction.digraph, 1) is None


def test_sat_bruteforce_when_guard_exceeded_then_error() -> None:
    formula = random_3cnf(6, 3, 0)

    with pytest.raises(GuardExceededError):
        sat_bruteforce(formula, guards=Guards(sat_vars=5))


def test_sat_bruteforce_when_satisfiable_then_first_in_order() -> None:
    formula = CnfFormula.from_ints(2, [(2, 2, 2)])

    assert sat_bruteforce(formula) == Valuation((False, True))


def test_brooks_gadget_when_single_vertex_then_three_vertices() -> None:
    gadget = brooks_gadget(make_digraph(1, []), 2)

    assert gadget.digraph.n == 3
    assert delta_min(gadget.digraph) == 2
    assert gadget.roles == ("v-:v=0", "v+:v=0", "v:v=0,i=1")


@pytest.mark.parametrize("seed", range(5))
def test_brooks_gadget_when_random_then_width_k_and_dicolourability_kept(seed: int) -> None:
    """The blow-up has degreewidth k and is k-dicolourable exactly when the input is."""
    d = random_digraph(3, 0.6, seed=seed)

    blown = brooks_gadget(d, 2).digraph

    assert delta_min(blown) == 2
    assert dig_lower_bound(blown) == 2
    assert degreewidth_dp(blown).value == 2
    assert (dichromatic_number(d) <= 2) == (dichromatic_number(blown) <= 2)


def test_brooks_gadget_when_k1_then_invalid() -> None:
    with pytest.raises(InvalidInstanceError):
        brooks_gadget(make_digraph(1, []), 1)


def test_construction_error_when_raised_then_exit_code_one() -> None:
    assert ConstructionError("x").exit_code == 1
