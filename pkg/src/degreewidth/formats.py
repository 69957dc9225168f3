#!/usr/bin/env python3
# this_file: src/degreewidth/formats.py
"""Readers and writers for edge lists, DIMACS CNF, role maps, DOT and JSON reports.

Files are written through a validate-then-replace workflow: the payload goes
to a temporary sibling, is parsed back, and only then replaces the target.
An existing target is backed up first, restored if anything fails and
removed once the write succeeds.
"""

from __future__ import annotations

import json
import shutil
from collections.abc import Callable, Mapping
from datetime import datetime
from pathlib import Path
from typing import Any

from loguru import logger

from .digraph import Digraph, Ordering, backward_arcs, make_digraph
from .errors import ParseError
from .reductions import CnfFormula, LabeledDigraph, Literal

MAX_FILE_VERTICES = 1 << 20


def _content_lines(text: str, comment: str) -> list[tuple[int, list[str]]]:
    """Return ``(line_number, tokens)`` for every non-blank, non-comment line."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(comment):
            continue
        lines.append((number, stripped.split()))
    return lines


def _ints(tokens: list[str], line: int) -> list[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line=line) from None


def parse_edge_list(text: str) -> Digraph:
    """Parse the ``n m`` header followed by ``m`` lines ``u v``.

    Lines starting with ``#`` are comments.

    Raises:
        ParseError: On a missing or malformed header, a malformed arc line or
            an arc count that does not match the header.
        GraphError: On a loop, a duplicate arc or an endpoint out of range.

    A header announcing more than ``MAX_FILE_VERTICES`` vertices is a
    ParseError, raised before any adjacency is allocated.
    """
    lines = _content_lines(text, "#")
    if not lines:
        raise ParseError("missing 'n m' header")
    line, tokens = lines[0]
    header = _ints(tokens, line)
    if len(header) != 2 or min(header) < 0:
        raise ParseError("header must be two non-negative integers 'n m'", line=line)
    n, m = header
    if n > MAX_FILE_VERTICES:
        raise ParseError(
            f"header declares {n} vertices, at most {MAX_FILE_VERTICES} are read", line=line
        )
    arcs = []
    for line, tokens in lines[1:]:
        pair = _ints(tokens, line)
        if len(pair) != 2:
            raise ParseError("arc lines must hold exactly two vertices", line=line)
        arcs.append((pair[0], pair[1]))
    if len(arcs) != m:
        raise ParseError(f"header announces {m} arcs, found {len(arcs)}")
    return make_digraph(n, arcs)


def format_edge_list(d: Digraph, comment: str | None = None) -> str:
    """Render ``d`` with arcs in sorted order; ``comment`` lines are prefixed with ``#``."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{d.n} {d.num_arcs}")
    out.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF with exactly three literals per clause.

    Clauses may span lines; each ends with ``0``. Lines starting with ``c``
    are comments.

    Raises:
        ParseError: On a malformed problem line, a literal outside the
            declared variables, a clause without three literals, or a clause
            count that does not match the problem line.
        InvalidInstanceError: On a tautological clause.
    """
    lines = _content_lines(text, "c")
    if not lines or lines[0][1][:2] != ["p", "cnf"]:
        first = lines[0][0] if lines else None
        raise ParseError("missing 'p cnf <vars> <clauses>' line", line=first)
    line, tokens = lines[0]
    counts = _ints(tokens[2:], line)
    if len(counts) != 2 or min(counts) < 0:
        raise ParseError("problem line must be 'p cnf <vars> <clauses>'", line=line)
    num_vars, num_clauses = counts
    clauses: list[tuple[Literal, ...]] = []
    pending: list[int] = []
    for line, tokens in lines[1:]:
        if tokens[0] == "%":
            break
        for value in _ints(tokens, line):
            if value == 0:
                if len(pending) != 3:
                    raise ParseError(f"clause has {len(pending)} literals, expected 3", line=line)
                clauses.append(tuple(Literal.from_dimacs(v) for v in pending))
                pending = []
            elif abs(value) > num_vars:
                raise ParseError(f"literal {value} exceeds {num_vars} variables", line=line)
            else:
                pending.append(value)
    if pending:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        raise ParseError(f"problem line announces {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))  # type: ignore[arg-type]


def format_dimacs(formula: CnfFormula) -> str:
    """Render ``formula`` as DIMACS CNF."""
    out = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    out.extend(
        " ".join(str(lit.to_dimacs()) for lit in clause) + " 0" for clause in formula.clauses
    )
    return "\n".join(out) + "\n"


def format_role_map(labeled: LabeledDigraph, indent: int = 2) -> str:
    """JSON object ``{vertex_id: role}`` in vertex order."""
    roles = {str(v): role for v, role in labeled.role_map().items()}
    return json.dumps(roles, indent=indent) + "\n"


def parse_role_map(text: str) -> dict[int, str]:
    """Inverse of :func:`format_role_map`."""
    try:
        payload = json.loads(text)
        return {int(key): str(value) for key, value in payload.items()}
    except (ValueError, AttributeError) as error:
        raise ParseError(f"role map is not a JSON object of vertex ids: {error}") from None


def format_dot(d: Digraph, order: Ordering | None = None, name: str = "D") -> str:
    """Graphviz DOT text; with ``order``, vertices follow it and backward arcs are red."""
    backward = backward_arcs(d, order).arcs if order is not None else frozenset()
    vertices = order.perm if order is not None else tuple(d.vertices)
    out = [f"digraph {name} {{"]
    if order is not None:
        out.append("  rankdir=LR;")
    out.extend(f"  {v};" for v in vertices)
    for u, v in d.sorted_arcs():
        style = ' [color=red, constraint=false]' if (u, v) in backward else ""
        out.append(f"  {u} -> {v}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


def build_report(
    parameter: str,
    value: int,
    witness: Any,
    method: str,
    guards: Mapping[str, int],
    elapsed_ms: float | None = None,
) -> dict[str, Any]:
    """Assemble the JSON report of a computation; ``elapsed_ms`` is omitted when ``None``."""
    report: dict[str, Any] = {
        "parameter": parameter,
        "value": value,
        "witness": witness,
        "method": method,
    }
    if elapsed_ms is not None:
        report["elapsed_ms"] = round(elapsed_ms, 3)
    report["guards"] = dict(guards)
    return report


def dump_json(payload: Any, indent: int = 2) -> str:
    """Serialise ``payload`` deterministically."""
    return json.dumps(payload, indent=indent)


def _read_source(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as error:
        raise ParseError(f"{path} is not UTF-8 text: {error.reason}") from error
    except OSError as error:
        raise ParseError(f"cannot read {path}: {error.strerror or error}") from error


def read_edge_list(path: Path) -> Digraph:
    """Read and parse an edge-list file.

    Raises:
        ParseError: If the file cannot be read or decoded, or does not parse.
    """
    return parse_edge_list(_read_source(path))


def read_dimacs(path: Path) -> CnfFormula:
    """Read and parse a DIMACS CNF file."""
    return parse_dimacs(_read_source(path))


def backup_file(path: Path) -> Path | None:
    """Copy ``path`` to a timestamped sibling; ``None`` when it does not exist."""
    if not path.exists():
        return None
    backup = path.with_suffix(f"{path.suffix}.backup.{datetime.now():%Y%m%d_%H%M%S_%f}")
    shutil.copy2(path, backup)
    logger.debug("Backed up {} to {}", path, backup)
    return backup


def _restore_from_backup(target: Path, backup: Path | None) -> None:
    if backup is None:
        return
    shutil.copy2(backup, target)
    logger.warning("Restored {} from {}", target, backup)


def write_with_rollback(
    target: Path,
    write_func: Callable[[Path], None],
    validate_func: Callable[[Path], None],
) -> None:
    """Write ``target`` via a validated temporary file.

    An existing target is backed up for the duration of the write. The backup
    is removed once the new content is in place and restored otherwise.

    Args:
        target: File that should be replaced.
        write_func: Writes the payload to the temporary file.
        validate_func: Re-reads the temporary file and raises if it is invalid.

    Raises:
        Exception: Whatever ``write_func`` or ``validate_func`` raised, after
            the backup has been restored.
    """
    target = Path(target)
    backup = backup_file(target)
    tmp_path = target.with_suffix(target.suffix + ".tmp")
    if tmp_path.exists():
        tmp_path.unlink()
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        write_func(tmp_path)
        validate_func(tmp_path)
        tmp_path.replace(target)
    except Exception:
        if tmp_path.exists():
            tmp_path.unlink()
        _restore_from_backup(target, backup)
        raise
    finally:
        if backup is not None:
            backup.unlink(missing_ok=True)


def _text_writer(text: str) -> Callable[[Path], None]:
    def write(path: Path) -> None:
        path.write_text(text, encoding="utf-8")

    return write


def write_edge_list(path: Path, d: Digraph, comment: str | None = None) -> Path:
    """Write ``d`` to ``path``; the file is re-parsed before it replaces the target."""
    text = format_edge_list(d, comment)

    def validate(tmp: Path) -> None:
        if read_edge_list(tmp) != d:
            raise ParseError(f"{tmp} does not re-parse to the written digraph")

    write_with_rollback(Path(path), _text_writer(text), validate)
    return Path(path)


def write_dimacs(path: Path, formula: CnfFormula) -> Path:
    """Write ``formula`` to ``path`` as DIMACS CNF."""

    def validate(tmp: Path) -> None:
        if read_dimacs(tmp) != formula:
            raise ParseError(f"{tmp} does not re-parse to the written formula")

    write_with_rollback(Path(path), _text_writer(format_dimacs(formula)), validate)
    return Path(path)


def write_role_map(path: Path, labeled: LabeledDigraph, indent: int = 2) -> Path:
    """Write the role map of ``labeled`` as JSON."""

    def validate(tmp: Path) -> None:
        parse_role_map(tmp.read_text(encoding="utf-8"))

    write_with_rollback(Path(path), _text_writer(format_role_map(labeled, indent)), validate)
    return Path(path)


def write_text(path: Path, text: str) -> Path:
    """Write free-form text (DOT) with the same rollback behaviour."""
    write_with_rollback(Path(path), _text_writer(text), lambda _tmp: None)
    return Path(path)
