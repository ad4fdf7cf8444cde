"""Champion search when probes return win probabilities.

A probe of (u, v) reveals the complementary pair (p_uv, p_vu) instead of a
binary winner, and the champion minimizes the expected number of matches
lost, i.e. the column sum of the probability matrix.  The search is the
same exponential threshold doubling as the binary algorithm; the only
change is that a probe charges p_vu to u's loss accumulator and p_uv to
v's, so accumulators are real-valued and a player is removed the moment
its accumulator reaches alpha.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .algorithms import _make_schedule
from .core import (
    COMPLEMENTARITY_TOL,
    ChampionReport,
    InvalidPairError,
    LookupStats,
    MalformedInstanceError,
    ProbabilisticTournament,
)

#: Players within this distance of the minimum expected loss tie as champions.
TIE_TOL = 1e-9


class ProbabilisticOracle:
    """Counting probe interface over a :class:`ProbabilisticTournament`.

    ``prob_probe(u, v)`` returns the complementary pair (p_uv, p_vu) and
    costs one comparison; with ``memoize`` a repeated pair is answered from
    the cache for free.  Returned values are canonicalized from the
    lower-index cell, so probing (u, v) and (v, u) yields exactly mirrored
    pairs no matter the cache state.  Complementarity of the underlying
    matrix is checked on every fresh probe.
    """

    __slots__ = ("n", "asymmetric", "comparisons", "cache_hits", "batch_calls",
                 "_rows", "_memo")

    def __init__(
        self,
        instance: ProbabilisticTournament,
        *,
        memoize: bool = True,
        asymmetric: bool = True,
    ) -> None:
        self._rows: list[list[float]] = instance.p.tolist()
        self.n: int = instance.n
        self._memo: Optional[dict[int, float]] = {} if memoize else None
        self.asymmetric = asymmetric
        self.comparisons = 0
        self.cache_hits = 0
        self.batch_calls = 0

    def prob_probe(self, u: int, v: int) -> tuple[float, float]:
        """Reveal (p_uv, p_vu) for the pair {u, v}."""
        n = self.n
        if u == v:
            raise InvalidPairError(f"cannot probe a player against itself: ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidPairError(f"player indices ({u}, {v}) out of range [0, {n})")
        lo, hi = (u, v) if u < v else (v, u)
        memo = self._memo
        if memo is not None:
            p_lo = memo.get(lo * n + hi)
            if p_lo is not None:
                self.cache_hits += 1
                return (p_lo, 1.0 - p_lo) if u == lo else (1.0 - p_lo, p_lo)
        p_lo = self._rows[lo][hi]
        p_hi = self._rows[hi][lo]
        if abs(p_lo + p_hi - 1.0) > COMPLEMENTARITY_TOL:
            raise MalformedInstanceError(
                f"p[{lo}][{hi}] + p[{hi}][{lo}] = {p_lo + p_hi!r}, expected 1"
            )
        self.comparisons += 1
        if memo is not None:
            memo[lo * n + hi] = p_lo
        return (p_lo, 1.0 - p_lo) if u == lo else (1.0 - p_lo, p_lo)

    def snapshot_stats(
        self, per_alpha: list[tuple[int, int]] | None = None
    ) -> LookupStats:
        return LookupStats(
            comparisons=self.comparisons,
            cache_hits=self.cache_hits,
            batch_calls=self.batch_calls,
            asymmetric=self.asymmetric,
            per_alpha=tuple(per_alpha) if per_alpha else (),
        )


def expected_losses_brute(instance: ProbabilisticTournament) -> list[float]:
    """Exact expected losses (column sums), accumulated in ascending row order.

    This is the ground-truth oracle for the probabilistic search; the fixed
    summation order keeps it bit-reproducible.
    """
    acc = np.zeros(instance.n)
    for row in instance.p:
        acc += row
    return [float(x) for x in acc]


def _prob_brute_over_alive(
    oracle: ProbabilisticOracle, alive
) -> dict[int, float]:
    # Expected losses of each candidate against the whole field; pairs
    # between two candidates are probed once and credited to both.
    candidates = sorted(set(alive))
    in_a = set(candidates)
    outsiders = [v for v in range(oracle.n) if v not in in_a]
    prob_probe = oracle.prob_probe
    losses = {}
    for u in candidates:
        total = 0.0
        for v in outsiders:
            total += prob_probe(u, v)[1]
        losses[u] = total
    for i, u in enumerate(candidates):
        for v in candidates[i + 1:]:
            p_uv, p_vu = prob_probe(u, v)
            losses[u] += p_vu
            losses[v] += p_uv
    return losses


def _run_round_prob(oracle: ProbabilisticOracle, alpha: int, schedule: str):
    n = oracle.n
    sched = _make_schedule(schedule, n)
    lost = [0.0] * n
    prob_probe = oracle.prob_probe
    next_pair = sched.next_pair
    record = sched.record_outcome
    stop = 2 * alpha
    while sched.num_alive > stop:
        pair = next_pair()
        if pair is None:
            break
        u, v = pair
        p_uv, p_vu = prob_probe(u, v)
        lu = lost[u] + p_vu
        lost[u] = lu
        lv = lost[v] + p_uv
        lost[v] = lv
        record(lu >= alpha, lv >= alpha)
    return sched.alive_players()


def find_champions_probabilistic(
    oracle: ProbabilisticOracle, *, schedule: str = "array_swap"
) -> ChampionReport:
    """Find every player minimizing expected losses.

    The exit test (best survivor below alpha) uses a strict comparison;
    champion ties are reported for every survivor within :data:`TIE_TOL`
    of the minimum.  On a 0/1-valued instance this returns exactly the
    binary algorithm's champion set.
    """
    n = oracle.n
    if n == 1:
        return ChampionReport((0,), 0.0, 1, oracle.snapshot_stats([(1, 0)]))
    per_alpha: list[tuple[int, int]] = []
    alpha = 1
    while True:
        before = oracle.comparisons
        if 2 * alpha < n:
            alive = _run_round_prob(oracle, alpha, schedule)
        else:
            alive = range(n)
        losses = _prob_brute_over_alive(oracle, alive)
        best = min(losses.values())
        per_alpha.append((alpha, oracle.comparisons - before))
        if best < alpha:
            champions = tuple(
                sorted(u for u, l in losses.items() if l <= best + TIE_TOL)
            )
            return ChampionReport(
                champions, best, alpha, oracle.snapshot_stats(per_alpha)
            )
        alpha *= 2
