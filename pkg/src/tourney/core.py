"""Tournament instances, the probe oracle, and lookup accounting.

Algorithms in this package never read an adjacency matrix directly: they see
a tournament only through :class:`MatrixOracle` (or the probabilistic oracle
in :mod:`tourney.probabilistic`), which answers pairwise probes and counts
them.  That keeps the cost model honest: every resolved pair shows up in
:class:`LookupStats` and nothing else does.

Thread-safety: instances are read-only and may be shared freely.  An oracle
(its counters and its :class:`MemoCache`) is confined to a single thread;
concurrent runs should each build their own oracle over the shared instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

PlayerId = int

#: Tolerance for the complementarity invariant p[u][v] + p[v][u] == 1.
COMPLEMENTARITY_TOL = 1e-9


class TourneyError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPairError(TourneyError, ValueError):
    """A probe was requested for u == v or an out-of-range player index."""


class DuplicateInBatchError(TourneyError, ValueError):
    """A batch contained the same unordered pair twice."""


class MalformedInstanceError(TourneyError, ValueError):
    """An instance violated a structural invariant at probe time."""


class InvalidSpecError(TourneyError, ValueError):
    """A generator was asked for parameters outside its constraints."""


class InvalidKError(TourneyError, ValueError):
    """Top-k was requested with k outside [1, n]."""


class InvalidBatchSizeError(TourneyError, ValueError):
    """The batched algorithm was given a batch size below 1."""


@dataclass(frozen=True, eq=False)
class MatrixTournament:
    """Dense binary tournament: ``wins[u][v] == 1`` iff u beats v.

    The diagonal is unused (must be 0) and exactly one of ``wins[u][v]``,
    ``wins[v][u]`` is 1 for every pair u != v.  Use :func:`validate_matrix`
    to check both invariants.
    """

    wins: np.ndarray

    def __post_init__(self) -> None:
        wins = np.asarray(self.wins, dtype=np.uint8)
        if wins.ndim != 2 or wins.shape[0] != wins.shape[1] or wins.shape[0] < 1:
            raise MalformedInstanceError(
                f"wins must be a square n x n matrix with n >= 1, got shape {wins.shape}"
            )
        object.__setattr__(self, "wins", wins)

    @property
    def n(self) -> int:
        return self.wins.shape[0]

    def losses(self) -> np.ndarray:
        """Per-player loss counts (column sums of the win matrix)."""
        return self.wins.sum(axis=0, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class ProbabilisticTournament:
    """Win-probability matrix: ``p[u][v]`` is the probability that u beats v.

    Complementary by construction: ``p[v][u] == 1 - p[u][v]`` within
    :data:`COMPLEMENTARITY_TOL`, diagonal 0.
    """

    p: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=np.float64)
        if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] < 1:
            raise MalformedInstanceError(
                f"p must be a square n x n matrix with n >= 1, got shape {p.shape}"
            )
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.p.shape[0]

    def expected_losses(self) -> np.ndarray:
        """Per-player expected loss counts (column sums of p)."""
        return self.p.sum(axis=0)


@dataclass(frozen=True)
class MatrixValidation:
    """Outcome of :func:`validate_matrix` / :func:`validate_probabilistic`."""

    ok: bool
    cell: tuple[int, int] | None = None
    message: str | None = None


def validate_matrix(instance: MatrixTournament) -> MatrixValidation:
    """Check the binary-tournament invariants, reporting the first bad cell.

    Cells are scanned row-major, so e.g. a symmetric violation between
    players 0 and 1 is reported at (0, 1).
    """
    wins = instance.wins
    viol = (wins != 0) & (wins != 1)
    sums = wins.astype(np.int16) + wins.astype(np.int16).T
    off = ~np.eye(instance.n, dtype=bool)
    viol |= off & (sums != 1)
    viol |= ~off & (wins != 0)
    if not viol.any():
        return MatrixValidation(ok=True)
    flat = int(np.flatnonzero(viol)[0])
    u, v = divmod(flat, instance.n)
    if u == v:
        msg = f"diagonal cell ({u}, {v}) must be 0"
    elif wins[u][v] not in (0, 1):
        msg = f"cell ({u}, {v}) must be 0 or 1"
    else:
        msg = f"wins[{u}][{v}] + wins[{v}][{u}] must equal 1"
    return MatrixValidation(ok=False, cell=(u, v), message=msg)


def validate_probabilistic(instance: ProbabilisticTournament) -> MatrixValidation:
    """Check diagonal, range and complementarity of a probability matrix."""
    p = instance.p
    viol = (p < 0.0) | (p > 1.0) | ~np.isfinite(p)
    off = ~np.eye(instance.n, dtype=bool)
    viol |= off & (np.abs(p + p.T - 1.0) > COMPLEMENTARITY_TOL)
    viol |= ~off & (p != 0.0)
    if not viol.any():
        return MatrixValidation(ok=True)
    flat = int(np.flatnonzero(viol)[0])
    u, v = divmod(flat, instance.n)
    if u == v:
        msg = f"diagonal cell ({u}, {v}) must be 0.0"
    elif not (0.0 <= p[u][v] <= 1.0):
        msg = f"cell ({u}, {v}) must be a probability in [0, 1]"
    else:
        msg = f"p[{u}][{v}] + p[{v}][{u}] must equal 1 within {COMPLEMENTARITY_TOL}"
    return MatrixValidation(ok=False, cell=(u, v), message=msg)


class MemoCache:
    """Winner cache keyed on unordered pairs.

    A cached pair is answered without touching the instance and costs zero
    comparisons, which is what makes replays across exponential-search
    rounds free.  Not synchronized; confine each cache to one thread.
    """

    __slots__ = ("n", "_table")

    def __init__(self, n: int) -> None:
        self.n = n
        self._table: dict[int, int] = {}

    def _key(self, u: int, v: int) -> int:
        return u * self.n + v if u < v else v * self.n + u

    def lookup(self, u: int, v: int) -> Optional[int]:
        """Cached winner of {u, v}, or None if the pair was never resolved."""
        return self._table.get(self._key(u, v))

    def store(self, u: int, v: int, winner: int) -> None:
        self._table[self._key(u, v)] = winner

    def contains(self, u: int, v: int) -> bool:
        return self._key(u, v) in self._table

    def __len__(self) -> int:
        return len(self._table)


@dataclass(frozen=True)
class LookupStats:
    """Snapshot of an oracle's lookup counters.

    ``inferences`` is derived: an asymmetric pairwise model needs two model
    evaluations per comparison (u-vs-v and v-vs-u), a symmetric one needs
    one.  ``per_alpha`` breaks comparisons down by exponential-search round.
    """

    comparisons: int
    cache_hits: int
    batch_calls: int
    asymmetric: bool
    per_alpha: tuple[tuple[int, int], ...] = ()

    @property
    def inferences(self) -> int:
        return self.comparisons * 2 if self.asymmetric else self.comparisons


class MatrixOracle:
    """Counting probe interface over a :class:`MatrixTournament`.

    ``probe(u, v)`` resolves one unordered pair and returns the winner;
    ``probe_batch`` resolves several pairs in one parallel-unfold call.
    With ``memoize`` enabled (the default), repeated pairs are answered
    from a :class:`MemoCache` and increment ``cache_hits`` instead of
    ``comparisons``.

    The ``asymmetric`` flag only affects the derived inference count:
    it models a pairwise scorer that must evaluate both orderings of a
    pair (two inferences per comparison).
    """

    __slots__ = ("n", "cache", "asymmetric", "comparisons", "cache_hits",
                 "batch_calls", "_rows")

    def __init__(
        self,
        instance: MatrixTournament,
        *,
        memoize: bool = True,
        asymmetric: bool = True,
    ) -> None:
        # Plain nested lists: scalar indexing into numpy arrays is far too
        # slow for the probe hot path.
        self._rows: list[list[int]] = instance.wins.tolist()
        self.n: int = instance.n
        self.cache: Optional[MemoCache] = MemoCache(instance.n) if memoize else None
        self.asymmetric = asymmetric
        self.comparisons = 0
        self.cache_hits = 0
        self.batch_calls = 0

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise InvalidPairError(f"cannot probe a player against itself: ({u}, {v})")
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidPairError(f"player indices ({u}, {v}) out of range [0, {n})")

    def probe(self, u: int, v: int) -> int:
        """Resolve the match between u and v; returns the winner."""
        if u == v or u < 0 or v < 0 or u >= self.n or v >= self.n:
            self._check_pair(u, v)
        cache = self.cache
        if cache is not None:
            key = u * self.n + v if u < v else v * self.n + u
            winner = cache._table.get(key)
            if winner is not None:
                self.cache_hits += 1
                return winner
            self.comparisons += 1
            winner = u if self._rows[u][v] else v
            cache._table[key] = winner
            return winner
        self.comparisons += 1
        return u if self._rows[u][v] else v

    def probe_batch(self, pairs: list[tuple[int, int]]) -> list[int]:
        """Resolve a batch of distinct pairs in one parallel-unfold call.

        Returns winners in input order; the result is identical to probing
        the pairs one by one.  An empty batch costs nothing.
        """
        if not pairs:
            return []
        n = self.n
        seen: set[int] = set()
        for u, v in pairs:
            self._check_pair(u, v)
            key = u * n + v if u < v else v * n + u
            if key in seen:
                raise DuplicateInBatchError(
                    f"pair ({u}, {v}) appears twice in one batch"
                )
            seen.add(key)
        self.batch_calls += 1
        cache = self.cache
        rows = self._rows
        winners: list[int] = []
        if cache is None:
            self.comparisons += len(pairs)
            for u, v in pairs:
                winners.append(u if rows[u][v] else v)
            return winners
        table = cache._table
        for u, v in pairs:
            key = u * n + v if u < v else v * n + u
            winner = table.get(key)
            if winner is None:
                self.comparisons += 1
                winner = u if rows[u][v] else v
                table[key] = winner
            else:
                self.cache_hits += 1
            winners.append(winner)
        return winners

    def is_cached(self, u: int, v: int) -> bool:
        """True if {u, v} would be answered from the memo (no counters touched)."""
        cache = self.cache
        if cache is None:
            return False
        key = u * self.n + v if u < v else v * self.n + u
        return key in cache._table

    def probe_if_cached(self, u: int, v: int) -> Optional[int]:
        """Zero-cost replay path: the cached winner of {u, v}, or None.

        Counts a cache hit when the pair is cached, never a comparison.
        Assumes a valid pair; used by the batched scheduler to decide which
        arcs actually need a batch slot.
        """
        cache = self.cache
        if cache is None:
            return None
        key = u * self.n + v if u < v else v * self.n + u
        winner = cache._table.get(key)
        if winner is not None:
            self.cache_hits += 1
        return winner

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


@dataclass(frozen=True)
class ChampionReport:
    """Result of a champion search.

    ``champions`` is the full set of minimum-loss players in ascending
    index order, ``losses`` their common loss count (an int for binary
    tournaments, a float for probabilistic ones), and ``final_alpha`` the
    threshold at which the exponential search accepted, so
    ``losses < final_alpha`` always holds.
    """

    champions: tuple[int, ...]
    losses: int | float
    final_alpha: int
    stats: LookupStats
