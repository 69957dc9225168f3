#!/usr/bin/env python3
# this_file: src/degreewidth/errors.py
"""Exception hierarchy shared by the solvers, builders and the CLI.

Every exception carries the process exit code the ``dwidth`` command uses
when the error escapes a command: 2 for unreadable input, 3 for guard
violations, 4 for invalid instances and 1 for broken post-conditions.
"""

from __future__ import annotations


class DegreewidthError(Exception):
    """Root of all errors raised by the ``degreewidth`` package."""

    exit_code = 1


class ParseError(DegreewidthError, ValueError):
    """Edge-list or DIMACS text could not be parsed."""

    exit_code = 2

    def __init__(self, message: str, *, line: int | None = None) -> None:
        """Record the offending line number alongside the message.

        Args:
            message: Description of the problem.
            line: 1-based line number in the source text, when known.
        """
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GuardExceededError(DegreewidthError):
    """An instance is larger than a configured solver guard."""

    exit_code = 3

    def __init__(self, guard: str, limit: int, actual: int) -> None:
        """Describe which guard tripped and by how much.

        Args:
            guard: Name of the guard (``bruteforce_n``, ``subset_dp_n`` ...).
            limit: Configured maximum.
            actual: Size of the rejected instance or override.
        """
        self.guard = guard
        self.limit = limit
        self.actual = actual
        super().__init__(f"{guard} guard exceeded: {actual} > {limit}")


class GraphError(DegreewidthError, ValueError):
    """A core graph invariant was violated (loop, duplicate arc, bad index)."""

    exit_code = 4


class InvalidInstanceError(DegreewidthError, ValueError):
    """Input is well-formed but semantically unusable for the request."""

    exit_code = 4


class ConstructionError(DegreewidthError, RuntimeError):
    """A construction or extraction failed its own post-condition check."""

    exit_code = 1
