#!/usr/bin/env python3
# this_file: src/degreewidth/reductions.py
"""Gadget constructions: transfers, clause gadgets, the 3-SAT reduction and its witnesses.

The reduction turns a 3-CNF formula ``phi`` and a width ``k >= 1`` into a
digraph that has degreewidth at most ``k`` exactly when ``phi`` is
satisfiable. Every vertex carries a stable role string so instances can be
written out and inspected:

* ``l:j=<j>,i=<i>`` and ``l~:j=<j>,i=<i>``: the two literal vertices of
  position ``i`` in clause ``j``;
* ``c:j=<j>,i=<i>``: the cycle vertices of clause ``j``;
* ``tr:src=<u>,dst=<v>,path=<p>``: the middle vertex of path ``p`` of a
  transfer from vertex ``u`` to vertex ``v``.

Indices in role strings are 1-based; everything else is 0-based.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from .digraph import (
    Arc,
    ArcSet,
    Digraph,
    delta_min,
    graph_of_arcset,
    is_fas,
    iter_bits,
)
from .errors import ConstructionError, InvalidInstanceError
from .graph_params import max_degree
from .search import check_guard
from .settings import Guards
from .width import dig_lower_bound


@dataclass(frozen=True, order=True)
class Literal:
    """A variable (0-based) with a polarity."""

    var: int
    positive: bool = True

    def negated(self) -> Literal:
        return Literal(self.var, not self.positive)

    def to_dimacs(self) -> int:
        return self.var + 1 if self.positive else -(self.var + 1)

    @classmethod
    def from_dimacs(cls, value: int) -> Literal:
        if value == 0:
            raise InvalidInstanceError("0 is not a literal")
        return cls(abs(value) - 1, value > 0)

    def __str__(self) -> str:
        return f"x{self.var + 1}" if self.positive else f"~x{self.var + 1}"


Clause = tuple[Literal, Literal, Literal]


@dataclass(frozen=True)
class Valuation:
    """Total truth assignment, indexed by variable."""

    assignment: tuple[bool, ...]

    def value(self, literal: Literal) -> bool:
        return self.assignment[literal.var] == literal.positive

    def satisfies(self, formula: CnfFormula) -> bool:
        """Return whether every clause of ``formula`` has a true literal."""
        return formula.evaluate(self)

    def as_dict(self) -> dict[str, bool]:
        return {f"x{var + 1}": value for var, value in enumerate(self.assignment)}


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF formula. Repeated literals are fine, tautological clauses are not."""

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(clause) for clause in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise InvalidInstanceError("variable count must be non-negative")
        for j, clause in enumerate(clauses, start=1):
            if len(clause) != 3:
                raise InvalidInstanceError(f"clause {j} has {len(clause)} literals, expected 3")
            for literal in clause:
                if not 0 <= literal.var < self.num_vars:
                    raise InvalidInstanceError(f"clause {j} uses unknown variable {literal}")
            if any(literal.negated() in clause for literal in clause):
                raise InvalidInstanceError(f"clause {j} is tautological")

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Sequence[int]]) -> CnfFormula:
        """Build from DIMACS-style signed integers (``-2`` means "not x2")."""
        return cls(
            num_vars,
            tuple(
                tuple(Literal.from_dimacs(v) for v in clause)  # type: ignore[misc]
                for clause in clauses
            ),
        )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, valuation: Valuation) -> bool:
        """Return the truth value of the formula under ``valuation``."""
        if len(valuation.assignment) != self.num_vars:
            raise InvalidInstanceError(
                f"valuation covers {len(valuation.assignment)} variables, "
                f"formula has {self.num_vars}"
            )
        return all(any(valuation.value(lit) for lit in clause) for clause in self.clauses)


@dataclass(frozen=True)
class Transfer:
    """``p`` disjoint two-arc paths from ``src`` to ``dst`` through ``middles``."""

    src: int
    dst: int
    middles: tuple[int, ...]

    def source_arc(self, path: int) -> Arc:
        return (self.src, self.middles[path])

    def sink_arc(self, path: int) -> Arc:
        return (self.middles[path], self.dst)


@dataclass(frozen=True)
class LabeledDigraph:
    """A digraph with one role string per vertex."""

    digraph: Digraph
    roles: tuple[str, ...]

    def role_map(self) -> dict[int, str]:
        return dict(enumerate(self.roles))


@dataclass(frozen=True)
class TransferDigraph(LabeledDigraph):
    """Standalone transfer digraph with its source and sink."""

    s: int = 0
    t: int = 0
    transfer: Transfer = field(default_factory=lambda: Transfer(0, 0, ()))


@dataclass(frozen=True)
class ReductionOutput(LabeledDigraph):
    """Reduction instance with the positions of every named gadget vertex.

    ``literal[j][i]``, ``tilde[j][i]`` and ``cycle[j][i]`` are the vertices of
    position ``i`` in clause ``j`` (0-based). ``clause_transfers[j][i]`` is the
    size-``2k`` transfer between ``literal[j][i]`` and ``tilde[j][i]``.
    """

    formula: CnfFormula = field(default_factory=lambda: CnfFormula(0, ()))
    k: int = 0
    literal: tuple[tuple[int, int, int], ...] = ()
    tilde: tuple[tuple[int, int, int], ...] = ()
    cycle: tuple[tuple[int, int, int], ...] = ()
    cycle_arcs: tuple[tuple[Arc, ...], ...] = ()
    clause_transfers: tuple[tuple[Transfer, Transfer, Transfer], ...] = ()
    transfers: tuple[Transfer, ...] = ()


class _Builder:
    """Accumulates vertices, roles and arcs in creation order."""

    def __init__(self) -> None:
        self.roles: list[str] = []
        self.arcs: list[Arc] = []
        self.transfers: list[Transfer] = []

    def vertex(self, role: str) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def arc(self, u: int, v: int) -> Arc:
        self.arcs.append((u, v))
        return (u, v)

    def transfer(self, src: int, dst: int, size: int) -> Transfer:
        middles = []
        for path in range(1, size + 1):
            w = self.vertex(f"tr:src={src},dst={dst},path={path}")
            self.arc(src, w)
            self.arc(w, dst)
            middles.append(w)
        made = Transfer(src, dst, tuple(middles))
        self.transfers.append(made)
        return made

    def digraph(self) -> Digraph:
        return Digraph(len(self.roles), frozenset(self.arcs))


def transfer_digraph(p: int) -> TransferDigraph:
    """Return ``T_p``: ``s``, ``t`` and ``p`` disjoint paths ``s -> v_i -> t``.

    Vertex 0 is ``s``, vertices ``1..p`` are the middles and ``p + 1`` is ``t``.

    Raises:
        InvalidInstanceError: If ``p < 1``.
    """
    if p < 1:
        raise InvalidInstanceError("a transfer needs at least one path")
    builder = _Builder()
    s = builder.vertex("s")
    middles = [builder.vertex(f"tr:src={s},dst={p + 1},path={i}") for i in range(1, p + 1)]
    t = builder.vertex("t")
    for w in middles:
        builder.arc(s, w)
        builder.arc(w, t)
    return TransferDigraph(
        builder.digraph(), tuple(builder.roles), s=s, t=t, transfer=Transfer(s, t, tuple(middles))
    )


def _add_clause(
    builder: _Builder, j: int, k: int
) -> tuple[list[int], list[int], list[int], list[Transfer], list[Arc]]:
    """Add the gadget of clause ``j`` (0-based) and return its named parts."""
    literal = [builder.vertex(f"l:j={j + 1},i={i + 1}") for i in range(3)]
    tilde = [builder.vertex(f"l~:j={j + 1},i={i + 1}") for i in range(3)]
    cycle = [builder.vertex(f"c:j={j + 1},i={i + 1}") for i in range(3)]
    inner = [builder.transfer(literal[i], tilde[i], 2 * k) for i in range(3)]
    for i, other in itertools.permutations(range(3), 2):
        builder.transfer(tilde[i], literal[other], 2 * k + 1)
    arcs = []
    for i in range(3):
        arcs.append(builder.arc(tilde[i], cycle[i]))
        arcs.append(builder.arc(cycle[i], tilde[(i + 1) % 3]))
    return literal, tilde, cycle, inner, arcs


def clause_gadget(k: int) -> LabeledDigraph:
    """Return the gadget of a single clause for width ``k``.

    Raises:
        InvalidInstanceError: If ``k < 1``.
    """
    if k < 1:
        raise InvalidInstanceError("clause gadgets need k >= 1")
    builder = _Builder()
    _add_clause(builder, 0, k)
    return LabeledDigraph(builder.digraph(), tuple(builder.roles))


def _linked_pairs(formula: CnfFormula) -> list[tuple[int, int, int, int]]:
    """Ordered position pairs ``(j, i, j', i')`` of distinct clauses with complementary literals."""
    pairs = []
    for j, jj in itertools.permutations(range(formula.num_clauses), 2):
        for i in range(3):
            for ii in range(3):
                if formula.clauses[j][i] == formula.clauses[jj][ii].negated():
                    pairs.append((j, i, jj, ii))
    return pairs


def expected_reduction_size(formula: CnfFormula, k: int) -> tuple[int, int]:
    """Closed-form ``(vertices, arcs)`` of :func:`build_reduction`."""
    m = formula.num_clauses
    linked = len(_linked_pairs(formula))
    vertices = m * (9 + 3 * 2 * k + 6 * (2 * k + 1)) + linked * (2 * k + 1)
    arcs = m * (3 * 2 * (2 * k) + 6 * 2 * (2 * k + 1) + 6) + linked * 2 * (2 * k + 1)
    return vertices, arcs


def build_reduction(formula: CnfFormula, k: int) -> ReductionOutput:
    """Build the degreewidth-``k`` instance of ``formula``.

    One gadget per clause, then a size-``2k+1`` transfer from the tilde
    vertex of every position to the plain literal vertex of every
    complementary position in another clause.

    Raises:
        InvalidInstanceError: If ``k < 1``.
        ConstructionError: If the result does not have the closed-form size.
    """
    if k < 1:
        raise InvalidInstanceError("the reduction needs k >= 1")
    builder = _Builder()
    literal, tilde, cycle, inner, cycles = [], [], [], [], []
    for j in range(formula.num_clauses):
        parts = _add_clause(builder, j, k)
        literal.append(tuple(parts[0]))
        tilde.append(tuple(parts[1]))
        cycle.append(tuple(parts[2]))
        inner.append(tuple(parts[3]))
        cycles.append(tuple(parts[4]))
    for j, i, jj, ii in _linked_pairs(formula):
        builder.transfer(tilde[j][i], literal[jj][ii], 2 * k + 1)
    digraph = builder.digraph()
    expected = expected_reduction_size(formula, k)
    if (digraph.n, digraph.num_arcs) != expected:
        raise ConstructionError(
            f"reduction has {digraph.n} vertices and {digraph.num_arcs} arcs, expected {expected}"
        )
    logger.debug(
        "reduction: m={} k={} vertices={} arcs={}",
        formula.num_clauses,
        k,
        digraph.n,
        digraph.num_arcs,
    )
    return ReductionOutput(
        digraph,
        tuple(builder.roles),
        formula=formula,
        k=k,
        literal=tuple(literal),
        tilde=tuple(tilde),
        cycle=tuple(cycle),
        cycle_arcs=tuple(cycles),
        clause_transfers=tuple(inner),
        transfers=tuple(builder.transfers),
    )


def is_one_subdivision_shape(reduction: LabeledDigraph) -> bool:
    """Every non-literal vertex has one in-arc and one out-arc, both to literal vertices."""
    d = reduction.digraph
    original = {v for v, role in enumerate(reduction.roles) if role.startswith(("l:", "l~:"))}
    for v in d.vertices:
        if v in original:
            continue
        if d.in_degree(v) != 1 or d.out_degree(v) != 1:
            return False
        if not {*d.in_neighbors(v), *d.out_neighbors(v)} <= original:
            return False
    return True


def witness_fas_from_valuation(reduction: ReductionOutput, valuation: Valuation) -> ArcSet:
    """Turn a satisfying valuation into a feedback arc set of width exactly ``k``.

    For each clause the cycle arc leaving the tilde vertex of the first true
    position goes in. Every other position has its size-``2k`` transfer cut:
    source arcs on the first ``k`` paths, sink arcs on the last ``k``.

    Raises:
        InvalidInstanceError: If ``valuation`` does not satisfy the formula.
        ConstructionError: If the result is not a feedback arc set of width ``k``.
    """
    formula = reduction.formula
    if not formula.evaluate(valuation):
        raise InvalidInstanceError("valuation does not satisfy the formula")
    k = reduction.k
    arcs: set[Arc] = set()
    for j, clause in enumerate(formula.clauses):
        chosen = next(i for i, lit in enumerate(clause) if valuation.value(lit))
        arcs.add((reduction.tilde[j][chosen], reduction.cycle[j][chosen]))
        for i in range(3):
            if i == chosen:
                continue
            transfer = reduction.clause_transfers[j][i]
            arcs.update(transfer.source_arc(path) for path in range(k))
            arcs.update(transfer.sink_arc(path) for path in range(k, 2 * k))
    fas = ArcSet(frozenset(arcs))
    if not is_fas(reduction.digraph, fas):
        raise ConstructionError("witness arcs do not break every cycle")
    width = max_degree(graph_of_arcset(reduction.digraph, fas))
    if width != k:
        raise ConstructionError(f"witness has width {width}, expected {k}")
    return fas


def valuation_from_fas(reduction: ReductionOutput, fas: ArcSet) -> Valuation:
    """Read a satisfying valuation off a feedback arc set of width at most ``k``.

    Every literal whose tilde vertex touches an arc of its clause cycle in
    ``fas`` becomes true; variables left open are false.

    Raises:
        InvalidInstanceError: If ``fas`` is not a feedback arc set of width ``k``.
        ConstructionError: If a variable is forced both ways or the result
            does not satisfy the formula.
    """
    d = reduction.digraph
    if not is_fas(d, fas):
        raise InvalidInstanceError("arc set is not a feedback arc set")
    width = max_degree(graph_of_arcset(d, fas))
    if width > reduction.k:
        raise InvalidInstanceError(f"arc set has width {width} > {reduction.k}")
    formula = reduction.formula
    forced: dict[int, bool] = {}
    for j, clause in enumerate(formula.clauses):
        for i, lit in enumerate(clause):
            tilde = reduction.tilde[j][i]
            if not any(tilde in arc for arc in reduction.cycle_arcs[j] if arc in fas):
                continue
            if forced.get(lit.var, lit.positive) != lit.positive:
                raise ConstructionError(f"variable {lit.var + 1} forced both ways")
            forced[lit.var] = lit.positive
    valuation = Valuation(tuple(forced.get(var, False) for var in range(formula.num_vars)))
    if not formula.evaluate(valuation):
        raise ConstructionError("extracted valuation does not satisfy the formula")
    return valuation


@dataclass
class TransferCutReport:
    """Disconnecting arc sets of ``T_p`` checked against the ``ceil(p/2)`` bound."""

    k: int
    p: int
    exhaustive: bool
    checked: int = 0
    disconnecting: int = 0
    violations: list[ArcSet] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def _check_transfer_subset(
    gadget: TransferDigraph, arcs: list[Arc], mask: int, k: int, report: TransferCutReport
) -> None:
    report.checked += 1
    chosen = frozenset(arcs[b] for b in iter_bits(mask))
    transfer = gadget.transfer
    if any(
        transfer.source_arc(path) not in chosen and transfer.sink_arc(path) not in chosen
        for path in range(len(transfer.middles))
    ):
        return
    report.disconnecting += 1
    fas = ArcSet(chosen)
    g = graph_of_arcset(gadget.digraph, fas)
    width = max_degree(g)
    p = report.p
    bad = width < (p + 1) // 2
    if p == 2 * k:
        balanced = g.degree(gadget.s) == k and g.degree(gadget.t) == k
        bad = bad or ((width == k) != balanced)
    if bad:
        report.violations.append(fas)


def transfer_cut_check(
    k: int, p: int, *, samples: int = 10_000, seed: int = 0, exhaustive_limit: int = 6
) -> TransferCutReport:
    """Check the disconnection bound on the arc subsets of ``T_p``.

    A subset that separates ``s`` from ``t`` must have width at least
    ``ceil(p/2)``; for ``p == 2k``, width ``k`` holds exactly when ``s`` and
    ``t`` both have degree ``k``. All ``2**(2p)`` subsets are checked up to
    ``p == exhaustive_limit``, a seeded sample beyond.
    """
    gadget = transfer_digraph(p)
    arcs = gadget.digraph.sorted_arcs()
    exhaustive = p <= exhaustive_limit
    report = TransferCutReport(k=k, p=p, exhaustive=exhaustive)
    if exhaustive:
        masks: Iterable[int] = range(1 << len(arcs))
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        bits = rng.integers(0, 2, size=(samples, len(arcs)), dtype=np.int64)
        masks = (int(row @ (1 << np.arange(len(arcs), dtype=np.int64))) for row in bits)
    for mask in masks:
        _check_transfer_subset(gadget, arcs, mask, k, report)
    logger.debug(
        "transfer cuts: k={} p={} checked={} disconnecting={} violations={}",
        k,
        p,
        report.checked,
        report.disconnecting,
        len(report.violations),
    )
    return report


def brooks_gadget(d: Digraph, k: int) -> LabeledDigraph:
    """Blow every vertex ``v`` up into ``v-``, ``v+`` and ``v_1..v_{k-1}``.

    Vertex ``v * (k + 1)`` is ``v-``, the next one ``v+``, then ``v_1..v_{k-1}``.
    ``{v-, v_1..}`` and ``{v+, v_1..}`` become complete symmetric digraphs,
    ``v- -> v+`` is added, and each arc ``u -> v`` of ``d`` becomes ``u+ -> v-``.
    The result is ``k``-dicolourable exactly when ``d`` is, and has degreewidth ``k``.

    Raises:
        InvalidInstanceError: If ``k < 2``.
        ConstructionError: If the degree post-conditions fail.
    """
    if k < 2:
        raise InvalidInstanceError("the dicolouring gadget needs k >= 2")
    size = k + 1
    roles: list[str] = []
    arcs: set[Arc] = set()
    for v in d.vertices:
        minus, plus = v * size, v * size + 1
        inner = [v * size + 1 + i for i in range(1, k)]
        roles.extend([f"v-:v={v}", f"v+:v={v}"])
        roles.extend(f"v:v={v},i={i}" for i in range(1, k))
        for clique in ([minus, *inner], [plus, *inner]):
            arcs.update((a, b) for a, b in itertools.permutations(clique, 2))
        arcs.add((minus, plus))
    for u, v in d.arcs:
        arcs.add((u * size + 1, v * size))
    blown = Digraph(d.n * size, frozenset(arcs))
    if d.n and (delta_min(blown) != k or dig_lower_bound(blown) != k):
        raise ConstructionError("dicolouring gadget misses its degree bounds")
    return LabeledDigraph(blown, tuple(roles))


def sat_bruteforce(formula: CnfFormula, *, guards: Guards | None = None) -> Valuation | None:
    """Return the first satisfying valuation in ``False < True`` order, or ``None``.

    Raises:
        GuardExceededError: If the formula has more than ``sat_vars`` variables.
    """
    check_guard(guards, "sat_vars", formula.num_vars)
    for values in itertools.product((False, True), repeat=formula.num_vars):
        valuation = Valuation(values)
        if formula.evaluate(valuation):
            return valuation
    return None
