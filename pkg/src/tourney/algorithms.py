"""Champion search by exponential threshold doubling.

The driver guesses a loss threshold alpha (1, 2, 4, ...) and, for each
guess, runs an elimination tournament that drops a player the moment it
loses alpha matches, stopping once at most 2*alpha players remain.  The
survivors' exact losses are then settled against the whole field; if the
best survivor lost fewer than alpha matches the guess was high enough and
every true champion is still standing, otherwise the threshold doubles and
the tournament restarts.  Total probe cost stays within O(ell * n) for a
champion losing ell matches, without knowing ell in advance.

Two pair-selection schedules are provided.  ``array_swap`` keeps alive
players in an array prefix and removes by swapping with the last alive
slot; ``order_preserving`` keeps them in a linked list so matches follow
the input order, which pays off when the input is pre-sorted by expected
strength and lookups are memoized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ChampionReport, InvalidKError, LookupStats, MatrixOracle

SCHEDULES = ("array_swap", "order_preserving")


@dataclass(frozen=True)
class RoundResult:
    """Outcome of one elimination round: survivors and in-round loss counts.

    ``exhausted`` flags the (normally impossible) case where the schedule
    ran out of fresh pairs before the alive set shrank to the target; it
    can only fire against an oracle that is not a valid tournament.
    """

    alive: tuple[int, ...]
    losses: tuple[int, ...]
    exhausted: bool


@dataclass(frozen=True)
class TopKReport:
    """The k best players by losses, ties broken by ascending index."""

    players: tuple[int, ...]
    losses: tuple[int, ...]
    stats: LookupStats


class _ArraySwapSchedule:
    """Array-prefix alive set with two scan cursors.

    The anchor at position p1 plays everyone in the alive suffix via p2.
    Eliminations swap the victim with the last alive slot: if the victim
    was the opponent, the swapped-in player is played next (p2 stays); if
    it was the anchor, a new series starts at the same position.  Within
    one round this never selects the same pair twice.
    """

    __slots__ = ("order", "pos", "num_alive", "p1", "p2")

    def __init__(self, n: int) -> None:
        self.order = list(range(n))
        self.pos = list(range(n))
        self.num_alive = n
        self.p1 = 0
        self.p2 = 1

    def next_pair(self):
        p2 = self.p2
        if p2 >= self.num_alive:
            p1 = self.p1 + 1
            p2 = p1 + 1
            if p2 >= self.num_alive:
                return None
            self.p1 = p1
            self.p2 = p2
        return self.order[self.p1], self.order[p2]

    def record_outcome(self, anchor_out: bool, opponent_out: bool) -> None:
        if opponent_out:
            self._remove_at(self.p2)
        if anchor_out:
            self._remove_at(self.p1)
            self.p2 = self.p1 + 1
        elif not opponent_out:
            self.p2 += 1

    def _remove_at(self, i: int) -> None:
        last = self.num_alive - 1
        order, pos = self.order, self.pos
        a, b = order[i], order[last]
        order[i], order[last] = b, a
        pos[a], pos[b] = last, i
        self.num_alive = last

    def alive_players(self) -> list[int]:
        return self.order[: self.num_alive]


class _OrderPreservingSchedule:
    """Linked-list alive set whose cursors only ever advance.

    Removal splices a node out but keeps its own links, so a cursor parked
    on a removed player still resumes at the right successor.  Alive
    players keep their relative input order for the whole round.
    """

    __slots__ = ("nxt", "prv", "head", "num_alive", "p1", "p2")

    def __init__(self, n: int) -> None:
        self.nxt = list(range(1, n)) + [-1]
        self.prv = [-1] + list(range(n - 1))
        self.head = 0
        self.num_alive = n
        self.p1 = 0
        self.p2 = self.nxt[0] if n > 1 else -1

    def next_pair(self):
        p1 = self.p1
        if p1 == -1:
            return None
        p2 = self.p2
        while p2 == -1:
            p1 = self.nxt[p1]
            if p1 == -1:
                self.p1 = -1
                return None
            self.p1 = p1
            p2 = self.nxt[p1]
        self.p2 = p2
        return p1, p2

    def record_outcome(self, anchor_out: bool, opponent_out: bool) -> None:
        if opponent_out:
            self._unlink(self.p2)
        if anchor_out:
            old = self.p1
            self._unlink(old)
            p1 = self.nxt[old]
            self.p1 = p1
            self.p2 = self.nxt[p1] if p1 != -1 else -1
        else:
            self.p2 = self.nxt[self.p2]

    def _unlink(self, x: int) -> None:
        nx, pv = self.nxt[x], self.prv[x]
        if pv != -1:
            self.nxt[pv] = nx
        else:
            self.head = nx
        if nx != -1:
            self.prv[nx] = pv
        self.num_alive -= 1

    def alive_players(self) -> list[int]:
        out = []
        x = self.head
        while x != -1:
            out.append(x)
            x = self.nxt[x]
        return out


def _make_schedule(kind: str, n: int):
    if kind == "array_swap":
        return _ArraySwapSchedule(n)
    if kind == "order_preserving":
        return _OrderPreservingSchedule(n)
    raise ValueError(f"unknown schedule {kind!r}; expected one of {SCHEDULES}")


def exponential_search_round(
    oracle: MatrixOracle,
    alpha: int,
    *,
    schedule: str = "array_swap",
    stop_size: int | None = None,
) -> RoundResult:
    """Run one elimination round at threshold ``alpha``.

    Players are matched per the schedule; each loss charges the loser's
    in-round counter and a player reaching ``alpha`` losses is removed.
    Stops when at most ``stop_size`` (default ``2 * alpha``) players remain.
    A player whose true loss count is below ``alpha`` can never be removed,
    since in-round losses never exceed true losses.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if stop_size is None:
        stop_size = 2 * alpha
    n = oracle.n
    sched = _make_schedule(schedule, n)
    lost = [0] * n
    probe = oracle.probe
    next_pair = sched.next_pair
    record = sched.record_outcome
    while sched.num_alive > stop_size:
        pair = next_pair()
        if pair is None:
            return RoundResult(
                alive=tuple(sorted(sched.alive_players())),
                losses=tuple(lost),
                exhausted=True,
            )
        u, v = pair
        winner = probe(u, v)
        loser = v if winner == u else u
        count = lost[loser] + 1
        lost[loser] = count
        if count >= alpha:
            record(loser == u, loser == v)
        else:
            record(False, False)
    return RoundResult(
        alive=tuple(sorted(sched.alive_players())),
        losses=tuple(lost),
        exhausted=False,
    )


def brute_force_over_alive(oracle: MatrixOracle, alive) -> dict[int, int]:
    """Exact losses of each candidate against the whole field.

    Probes every (candidate, other) pair at most once per call; a pair
    between two candidates is shared rather than probed from both sides.
    """
    candidates = sorted(set(alive))
    if not candidates:
        raise ValueError("candidate set must be non-empty")
    in_a = set(candidates)
    outsiders = [v for v in range(oracle.n) if v not in in_a]
    probe = oracle.probe
    losses = {}
    for u in candidates:
        count = 0
        for v in outsiders:
            if probe(u, v) == v:
                count += 1
        losses[u] = count
    for i, u in enumerate(candidates):
        for v in candidates[i + 1:]:
            if probe(u, v) == v:
                losses[u] += 1
            else:
                losses[v] += 1
    return losses


def find_champions(
    oracle: MatrixOracle, *, schedule: str = "array_swap"
) -> ChampionReport:
    """Find every minimum-loss player of the tournament behind ``oracle``.

    Doubles alpha until the best survivor of the elimination round
    provably lost fewer than alpha matches; at that point the survivors
    include every champion, and all of them are reported.  Costs at most
    24 * n * max(ell, 1) comparisons (at most 3n when ell = 0).

    Memoization is a property of the oracle: build it with
    ``MatrixOracle(instance, memoize=True)`` to share lookups across
    rounds.
    """
    n = oracle.n
    if n == 1:
        return ChampionReport((0,), 0, 1, oracle.snapshot_stats([(1, 0)]))
    if n == 2:
        before = oracle.comparisons
        winner = oracle.probe(0, 1)
        spent = oracle.comparisons - before
        return ChampionReport(
            (winner,), 0, 1, oracle.snapshot_stats([(1, spent)])
        )
    per_alpha: list[tuple[int, int]] = []
    alpha = 1
    while True:
        before = oracle.comparisons
        if 2 * alpha < n:
            alive = exponential_search_round(oracle, alpha, schedule=schedule).alive
        else:
            # Threshold cap: the elimination loop would be vacuous, settle
            # the whole field directly.  Exit is then guaranteed because
            # the champion loses at most (n-1)/2 < alpha matches.
            alive = range(n)
        losses = brute_force_over_alive(oracle, alive)
        best = min(losses.values())
        per_alpha.append((alpha, oracle.comparisons - before))
        if best < alpha:
            champions = tuple(sorted(u for u, l in losses.items() if l == best))
            return ChampionReport(
                champions, best, alpha, oracle.snapshot_stats(per_alpha)
            )
        alpha *= 2


def top_k_champions(
    oracle: MatrixOracle, k: int, *, schedule: str = "array_swap"
) -> TopKReport:
    """The k players with the fewest losses, ties broken by index.

    Same exponential search as :func:`find_champions`, with the round stop
    widened to ``max(2 * alpha, k)`` so at least k candidates survive, and
    the exit test applied to the k-th best survivor.  Cost scales with the
    losses of the k-th best player.
    """
    n = oracle.n
    if not 1 <= k <= n:
        raise InvalidKError(f"k must be in [1, {n}], got {k}")
    per_alpha: list[tuple[int, int]] = []
    alpha = 1
    while True:
        before = oracle.comparisons
        stop = max(2 * alpha, k)
        if stop < n:
            alive = exponential_search_round(
                oracle, alpha, schedule=schedule, stop_size=stop
            ).alive
        else:
            alive = range(n)
        losses = brute_force_over_alive(oracle, alive)
        ranked = sorted(losses, key=lambda u: (losses[u], u))
        kth = losses[ranked[k - 1]]
        per_alpha.append((alpha, oracle.comparisons - before))
        if kth < alpha:
            players = tuple(ranked[:k])
            return TopKReport(
                players,
                tuple(losses[p] for p in players),
                oracle.snapshot_stats(per_alpha),
            )
        alpha *= 2
