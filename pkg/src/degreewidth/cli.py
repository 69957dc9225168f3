#!/usr/bin/env python3
# this_file: src/degreewidth/cli.py
"""Command-line entrypoints for the ``dwidth`` tool.

The CLI is built with :mod:`fire`. Every command returns a string, JSON for
machine-readable results, which Fire prints on standard output. A one-line
human summary goes to standard error through :mod:`rich`, and logging goes
through :mod:`loguru` on standard error as well.

Collaborators (settings persistence, the console, the clock) are injected so
the commands stay easy to test.
"""

from __future__ import annotations

import sys
import time
from collections.abc import Callable
from pathlib import Path
from typing import Any

import fire
from fire.core import FireError
from loguru import logger
from rich.console import Console

from . import __version__
from .costs import (
    di_ola,
    directed_bandwidth,
    directed_cutwidth,
    feedback_arc_number,
    ola_vec,
)
from .digraph import Digraph, Ordering, delta_max, delta_min, graph_of_arcset
from .errors import DegreewidthError
from .formats import (
    build_report,
    dump_json,
    format_dimacs,
    format_dot,
    format_edge_list,
    read_dimacs,
    read_edge_list,
    write_dimacs,
    write_edge_list,
    write_role_map,
    write_text,
)
from .generators import (
    SYMMETRIC_FAMILIES,
    k_regular_digraph,
    random_3cnf,
    random_digraph,
    random_tournament,
    symmetric_family,
)
from .graph_params import max_degree
from .reductions import (
    build_reduction,
    sat_bruteforce,
    valuation_from_fas,
    witness_fas_from_valuation,
)
from .search import check_guard
from .settings import HARD_LIMITS, Guards, Settings, load_settings, save_settings
from .width import (
    ParameterSelector,
    decide_degreewidth,
    degreewidth_dp,
    degreewidth_via_fas,
    dichromatic_number,
    dig_lower_bound,
    feedback_vertex_set,
    gamma_via_orderings,
)

# Guard that ``--guard-n`` overrides for each parameter.
PARAMETER_GUARDS: dict[str, str | None] = {
    "degreewidth": "subset_dp_n",
    "dichromatic": "dichromatic_n",
    "diclique": "bruteforce_n",
    "fvn": "subset_dp_n",
    "diOLA": "subset_dp_n",
    "OLAvec": "ola_vec_n",
    "dcw": "subset_dp_n",
    "dbw": "bruteforce_n",
    "fas": "subset_dp_n",
    "dmax": None,
    "dmin": None,
    "diglb": None,
}

GEN_KINDS = ("random", "tournament", "kregular", "symmetric")

Witness = Any


def _validate_parameter(param: str) -> str:
    """Return ``param`` if it names a computable parameter.

    Raises:
        FireError: For an unknown name.
    """
    if param not in PARAMETER_GUARDS:
        raise FireError(f"param must be one of {', '.join(PARAMETER_GUARDS)}")
    return param


def _ordered(report: Any) -> tuple[int, Witness, str, Ordering]:
    order = report.witness_ordering
    return report.value, order.to_list(), report.method, order


def _compute(
    param: str, d: Digraph, guards: Guards, workers: int
) -> tuple[int, Witness, str, Ordering | None]:
    """Run the solver behind ``param``; returns value, JSON witness, method and ordering."""
    if param == "degreewidth":
        return _ordered(degreewidth_dp(d, guards=guards))
    if param == "dichromatic":
        return dichromatic_number(d, guards=guards), None, "inclusion-exclusion", None
    if param == "diclique":
        value, order = gamma_via_orderings(
            d, ParameterSelector.CLIQUE_NUMBER, guards=guards, workers=workers
        )
        return value, order.to_list(), "bruteforce", order
    if param == "fvn":
        chosen = feedback_vertex_set(d, guards=guards)
        return len(chosen), sorted(chosen), "branch-and-bound", None
    if param in ("diOLA", "dcw", "dbw", "fas"):
        solver = {
            "diOLA": lambda: di_ola(d, guards=guards, workers=workers),
            "dcw": lambda: directed_cutwidth(d, guards=guards),
            "dbw": lambda: directed_bandwidth(d, guards=guards),
            "fas": lambda: feedback_arc_number(d, guards=guards),
        }[param]
        return _ordered(solver())
    if param == "OLAvec":
        report = ola_vec(d, guards=guards)
        inner = report.inner_ordering.to_list() if report.inner_ordering is not None else None
        witness = {"outer": report.witness_ordering.to_list(), "inner": inner}
        return report.value, witness, report.method, report.witness_ordering
    stats = {"dmax": delta_max, "dmin": delta_min, "diglb": dig_lower_bound}[param]
    return stats(d), None, "degree-scan", None


class ConfigCLI:
    """Fire namespace for the persisted settings (``dwidth config ...``).

    Attributes:
        _load: Loader returning the current :class:`Settings`.
        _save: Saver persisting mutated settings.
    """

    def __init__(
        self,
        loader: Callable[[], Settings],
        saver: Callable[[Settings], Path],
    ) -> None:
        self._load = loader
        self._save = saver

    def show(self) -> str:
        """Return the persisted settings as JSON."""
        settings = self._load()
        return dump_json(settings.to_dict(), settings.indent)

    def set(self, name: str, value: Any) -> str:
        """Persist one setting: a guard name, ``threads``, ``timing`` or ``indent``.

        Raises:
            FireError: If ``name`` is not a known setting.
        """
        settings = self._load()
        if name in HARD_LIMITS:
            settings.guards = settings.guards.with_override(name, int(value))
            stored: Any = getattr(settings.guards, name)
        elif name in ("threads", "indent"):
            setattr(settings, name, int(value))
            stored = getattr(settings, name)
        elif name == "timing":
            settings.timing = value if isinstance(value, bool) else str(value).lower() == "true"
            stored = settings.timing
        else:
            raise FireError(f"unknown setting '{name}'")
        self._save(settings)
        return f"{name} set to {stored}"

    def reset(self) -> str:
        """Restore packaged defaults."""
        self._save(Settings.default())
        return "Settings reset to defaults"


class DegreewidthCLI:
    """Top-level Fire component; each public method is a ``dwidth`` command."""

    def __init__(
        self,
        settings_loader: Callable[[], Settings] = load_settings,
        settings_saver: Callable[[Settings], Path] = save_settings,
        console: Console | None = None,
        clock: Callable[[], float] = time.perf_counter,
    ) -> None:
        """Initialise the CLI with its collaborators.

        Args:
            settings_loader: Loads persisted settings for each command.
            settings_saver: Persists settings edited through ``config``.
            console: Console for human summaries; standard error by default.
            clock: Monotonic clock in seconds used for ``elapsed_ms``.
        """
        self._load = settings_loader
        self._console = console if console is not None else Console(stderr=True)
        self._clock = clock
        self.config = ConfigCLI(settings_loader, settings_saver)

    def _settings(
        self, guard: str | None, guard_n: int | None, threads: int | None
    ) -> tuple[Settings, Guards, int]:
        settings = self._load()
        guards = settings.guards
        if guard_n is not None:
            if guard is None:
                raise FireError("--guard-n has no effect for this parameter")
            guards = guards.with_override(guard, guard_n)
        workers = threads if threads is not None else settings.threads
        if workers < 1:
            raise FireError("--threads must be at least 1")
        return settings, guards, workers

    def version(self) -> str:
        """Return the installed package version."""
        return __version__

    def compute(
        self,
        param: str,
        input: str,
        guard_n: int | None = None,
        threads: int | None = None,
        dot: str | None = None,
        timing: bool | None = None,
    ) -> str:
        """Compute one parameter of the digraph in ``input`` and return the JSON report.

        Args:
            param: One of degreewidth, dichromatic, diclique, fvn, diOLA,
                OLAvec, dcw, dbw, fas, dmax, dmin, diglb.
            input: Edge-list file.
            guard_n: One-off override of the guard behind ``param``.
            threads: Worker processes for ordering enumeration.
            dot: Optional path for a DOT rendering of the witness ordering.
            timing: Include ``elapsed_ms``; defaults to the ``timing`` setting.
        """
        param = _validate_parameter(param)
        settings, guards, workers = self._settings(PARAMETER_GUARDS[param], guard_n, threads)
        d = read_edge_list(Path(input))
        logger.info("compute {} on {} (n={}, m={})", param, input, d.n, d.num_arcs)
        started = self._clock()
        value, witness, method, order = _compute(param, d, guards, workers)
        elapsed = (self._clock() - started) * 1000.0
        if dot is not None:
            write_text(Path(dot), format_dot(d, order))
            logger.info("wrote DOT to {}", dot)
        show_timing = settings.timing if timing is None else timing
        report = build_report(
            param, value, witness, method, guards.as_dict(), elapsed if show_timing else None
        )
        self._console.print(f"[bold]{param}[/bold] = {value} ({method}, {elapsed:.1f} ms)")
        return dump_json(report, settings.indent)

    def decide(self, input: str, k: int, guard_n: int | None = None) -> str:
        """Answer "is the degreewidth at most ``k``?" with a witness when yes."""
        settings, guards, _ = self._settings("subset_dp_n", guard_n, None)
        d = read_edge_list(Path(input))
        decision = decide_degreewidth(d, int(k), guards=guards)
        payload: dict[str, Any] = {
            "answer": decision.answer,
            "k": decision.k,
            "method": decision.method,
        }
        if decision.answer and decision.ordering is not None and decision.fas is not None:
            payload["witness"] = {
                "ordering": decision.ordering.to_list(),
                "fas": [list(arc) for arc in decision.fas.sorted()],
            }
        verdict = "yes" if decision.answer else "no"
        self._console.print(f"degreewidth <= {k}: [bold]{verdict}[/bold]")
        return dump_json(payload, settings.indent)

    def reduce(self, cnf: str, k: int, out: str) -> str:
        """Build the reduction instance of ``cnf`` and write edge list plus role map.

        The role map goes next to ``out`` with the suffix ``.roles.json``.
        """
        settings = self._load()
        formula = read_dimacs(Path(cnf))
        reduction = build_reduction(formula, int(k))
        edges = write_edge_list(
            Path(out),
            reduction.digraph,
            comment=f"reduction of {Path(cnf).name} with k={k}",
        )
        roles = write_role_map(Path(out).with_suffix(".roles.json"), reduction, settings.indent)
        logger.info("wrote {} and {}", edges, roles)
        self._console.print(
            f"reduction: {reduction.digraph.n} vertices, {reduction.digraph.num_arcs} arcs"
        )
        return dump_json(
            {
                "vertices": reduction.digraph.n,
                "arcs": reduction.digraph.num_arcs,
                "clauses": formula.num_clauses,
                "k": reduction.k,
                "edges": str(edges),
                "roles": str(roles),
            },
            settings.indent,
        )

    def verify(self, cnf: str, k: int) -> str:
        """Check both directions of the reduction on ``cnf`` and report a verdict.

        A satisfiable formula must yield a witness arc set of width exactly
        ``k`` whose extracted valuation satisfies the formula; an
        unsatisfiable one must make the arc-set search come back empty.
        """
        settings = self._load()
        formula = read_dimacs(Path(cnf))
        check_guard(settings.guards, "sat_vars", formula.num_vars)
        valuation = sat_bruteforce(formula, guards=settings.guards)
        reduction = build_reduction(formula, int(k))
        d = reduction.digraph
        payload: dict[str, Any] = {
            "satisfiable": valuation is not None,
            "k": reduction.k,
            "vertices": d.n,
            "arcs": d.num_arcs,
        }
        if valuation is not None:
            fas = witness_fas_from_valuation(reduction, valuation)
            width = max_degree(graph_of_arcset(d, fas))
            extracted = valuation_from_fas(reduction, fas)
            agree = width == reduction.k and extracted.satisfies(formula)
            payload.update(
                valuation=valuation.as_dict(),
                witness_fas_size=len(fas),
                width=width,
                extracted_valuation=extracted.as_dict(),
            )
        else:
            found = degreewidth_via_fas(d, reduction.k)
            agree = found is None
            payload["search_found_fas"] = found is not None
        payload["verdict"] = "OK" if agree else "FAIL"
        self._console.print(f"verify: [bold]{payload['verdict']}[/bold]")
        return dump_json(payload, settings.indent)

    def gen(
        self,
        kind: str,
        n: int,
        seed: int = 0,
        out: str | None = None,
        p: float = 0.5,
        k: int = 2,
        family: str = "cycle",
    ) -> str:
        """Generate a digraph; returns the edge list, or a summary when ``out`` is given.

        Args:
            kind: random (uses ``p``), tournament, kregular (uses ``k``) or
                symmetric (uses ``family``).
            n: Vertex count.
            seed: PCG64 seed.
            out: Optional output file.
        """
        if kind not in GEN_KINDS:
            raise FireError(f"kind must be one of {', '.join(GEN_KINDS)}")
        if kind == "symmetric" and family not in SYMMETRIC_FAMILIES:
            raise FireError(f"family must be one of {', '.join(SYMMETRIC_FAMILIES)}")
        n, seed = int(n), int(seed)
        if kind == "random":
            d = random_digraph(n, float(p), seed)
        elif kind == "tournament":
            d = random_tournament(n, seed)
        elif kind == "kregular":
            d = k_regular_digraph(n, int(k), seed)
        else:
            d = symmetric_family(family, n)
        logger.info("generated {} digraph: n={} m={}", kind, d.n, d.num_arcs)
        if out is None:
            return format_edge_list(d).rstrip("\n")
        write_edge_list(Path(out), d)
        self._console.print(f"gen {kind}: {d.n} vertices, {d.num_arcs} arcs -> {out}")
        return dump_json({"kind": kind, "vertices": d.n, "arcs": d.num_arcs, "path": out})

    def gencnf(self, num_vars: int, num_clauses: int, seed: int = 0, out: str | None = None) -> str:
        """Generate a random 3-CNF formula in DIMACS format."""
        formula = random_3cnf(int(num_vars), int(num_clauses), int(seed))
        if out is None:
            return format_dimacs(formula).rstrip("\n")
        write_dimacs(Path(out), formula)
        return dump_json({"vars": formula.num_vars, "clauses": formula.num_clauses, "path": out})

    def dot(
        self, input: str, ordering: list[int] | str | None = None, out: str | None = None
    ) -> str:
        """Render ``input`` as DOT; backward arcs of ``ordering`` are highlighted."""
        d = read_edge_list(Path(input))
        order = None
        if ordering is not None:
            values = ordering if isinstance(ordering, (list, tuple)) else str(ordering).split(",")
            order = Ordering(tuple(int(v) for v in values))
        text = format_dot(d, order)
        if out is None:
            return text.rstrip("\n")
        write_text(Path(out), text)
        return f"DOT written to {out}"


def configure_logging(verbose: bool) -> None:
    """Send loguru output to standard error at WARNING, or DEBUG when verbose."""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


def main(argv: list[str] | None = None) -> None:
    """Run :class:`DegreewidthCLI` under Fire and map errors to exit codes.

    ``--verbose`` anywhere on the command line switches logging to DEBUG.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    verbose = "--verbose" in args
    args = [arg for arg in args if arg != "--verbose"]
    configure_logging(verbose)
    try:
        fire.Fire(DegreewidthCLI, command=args, name="dwidth")
    except DegreewidthError as error:
        Console(stderr=True).print(f"[red]error:[/red] {error}")
        sys.exit(error.exit_code)
    except FireError as error:
        Console(stderr=True).print(f"[red]usage error:[/red] {error}")
        sys.exit(2)


if __name__ == "__main__":
    main()
