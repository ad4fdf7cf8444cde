"""Instance file formats, canonical serialization, and content digests.

A matrix file holds the player count on the first line, then n rows of n
whitespace-separated tokens: {0,1} for binary tournaments, decimal reals
for probabilistic ones (diagonal 0).  The canonical form is single-space
separated with a trailing newline; parsing then re-serializing any valid
file reproduces the canonical text bit-exactly.  ``FORMAT_VERSION`` guards
the generator reproducibility contract.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .core import (
    MatrixTournament,
    ProbabilisticTournament,
    TourneyError,
    validate_matrix,
    validate_probabilistic,
)

FORMAT_VERSION = 1


class MatrixParseError(TourneyError, ValueError):
    """Syntax or validation failure while reading a matrix file."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None) -> None:
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _parse_grid(text: str, parse_token, what: str) -> tuple[int, list[list]]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixParseError("empty input", line=1)
    header = lines[0].strip()
    try:
        n = int(header)
    except ValueError:
        raise MatrixParseError(
            f"expected a player count, got {header!r}", line=1
        ) from None
    if n < 1:
        raise MatrixParseError(f"player count must be >= 1, got {n}", line=1)
    body = lines[1:]
    if len(body) != n:
        raise MatrixParseError(
            f"header says {n} players but {len(body)} rows follow"
        )
    grid = []
    for i, raw in enumerate(body):
        tokens = raw.split()
        if len(tokens) != n:
            raise MatrixParseError(
                f"expected {n} columns, got {len(tokens)}", line=i + 2
            )
        row = []
        for j, token in enumerate(tokens):
            value = parse_token(token)
            if value is None:
                raise MatrixParseError(
                    f"malformed {what} token {token!r}", line=i + 2, column=j + 1
                )
            row.append(value)
        grid.append(row)
    return n, grid


def _binary_token(token: str):
    if token == "0":
        return 0
    if token == "1":
        return 1
    return None


def _real_token(token: str):
    try:
        return float(token)
    except ValueError:
        return None


def parse_binary_matrix(text: str) -> MatrixTournament:
    """Parse and validate a binary tournament file."""
    _, grid = _parse_grid(text, _binary_token, "binary")
    instance = MatrixTournament(np.array(grid, dtype=np.uint8))
    check = validate_matrix(instance)
    if not check.ok:
        raise MatrixParseError(check.message)
    return instance


def parse_probabilistic_matrix(text: str) -> ProbabilisticTournament:
    """Parse and validate a probabilistic tournament file."""
    _, grid = _parse_grid(text, _real_token, "real")
    instance = ProbabilisticTournament(np.array(grid, dtype=np.float64))
    check = validate_probabilistic(instance)
    if not check.ok:
        raise MatrixParseError(check.message)
    return instance


def format_binary_matrix(instance: MatrixTournament) -> str:
    """Canonical text form of a binary instance."""
    lines = [str(instance.n)]
    for row in instance.wins.tolist():
        lines.append(" ".join("1" if x else "0" for x in row))
    return "\n".join(lines) + "\n"


def format_probabilistic_matrix(instance: ProbabilisticTournament) -> str:
    """Canonical text form of a probabilistic instance (shortest-roundtrip reals)."""
    lines = [str(instance.n)]
    for row in instance.p.tolist():
        lines.append(" ".join(repr(x) for x in row))
    return "\n".join(lines) + "\n"


def instance_digest(instance: MatrixTournament | ProbabilisticTournament) -> str:
    """SHA-256 of the canonical serialization; stable across formatting."""
    if isinstance(instance, MatrixTournament):
        text = format_binary_matrix(instance)
    else:
        text = format_probabilistic_matrix(instance)
    return hashlib.sha256(text.encode("ascii")).hexdigest()
