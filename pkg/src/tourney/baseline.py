"""Quadratic ground-truth solvers: the correctness oracle and cost baseline.

These read the matrix directly (no probe counting); they exist to check the
probe-efficient algorithms and to price the naive all-pairs tournament they
are compared against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InvalidSpecError, MatrixTournament


@dataclass(frozen=True)
class FullSolution:
    """Exact per-player losses plus the derived ranking and champion set."""

    losses: tuple[int, ...]
    ranking: tuple[int, ...]
    champions: tuple[int, ...]


def brute_force_champions(instance: MatrixTournament) -> FullSolution:
    """Solve the whole tournament by column sums.

    ``losses[u]`` counts the players beating u; the ranking sorts players by
    ascending losses with index as tie-break, and the champions are every
    player attaining the minimum.
    """
    losses = instance.wins.sum(axis=0, dtype=np.int64)
    order = np.lexsort((np.arange(instance.n), losses))
    best = int(losses.min())
    champs = np.flatnonzero(losses == best)
    return FullSolution(
        losses=tuple(int(x) for x in losses),
        ranking=tuple(int(x) for x in order),
        champions=tuple(int(x) for x in champs),
    )


def full_tournament_cost(n: int, asymmetric: bool = True) -> tuple[int, int]:
    """(comparisons, inferences) of playing every match of an n-player tournament.

    All n(n-1)/2 pairs get resolved; an asymmetric pairwise model evaluates
    both orderings, doubling the inference count (n=30 asymmetric: 870).
    """
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    comparisons = n * (n - 1) // 2
    inferences = n * (n - 1) if asymmetric else comparisons
    return comparisons, inferences
