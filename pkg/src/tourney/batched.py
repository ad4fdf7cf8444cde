"""Batched champion search: unfold up to B arcs per parallel call.

Same exponential threshold doubling as the sequential search, but matches
are resolved through ``probe_batch`` so a GPU-style backend can score B
pairs at once.  Three mechanisms keep the number of parallel calls at
O(ell*n/B + ell*log B):

* Batch construction is speculative.  While picking the pairs of one batch,
  both endpoints of every pick are charged a provisional loss on an overlay
  of the alive/loss state (rolled back before unfolding), so no player can
  ever exceed alpha real losses no matter how the batch resolves, and
  every pick's endpoints are guaranteed still alive when its result lands.
* The effective batch size halves whenever fewer than 2B' + 2*alpha players
  remain, which keeps construction feasible; the elimination stops early,
  at 6*alpha survivors, leaving the remainder to the brute-force stage.
* With memoization, pairs already in the cache never occupy a batch slot:
  they are replayed for free, and partially filled batches are topped up
  with prefetch arcs of the currently-best players, warming the cache for
  the rounds and brute-force scans that follow.

The brute-force stage scans each survivor's full row in index order but
abandons a row as soon as it accumulates alpha losses; abandoned rows
cannot contain a champion once the exit test succeeds, so the reported
champion set and losses are identical to the sequential algorithm's.
"""

from __future__ import annotations

import heapq

from .core import (
    ChampionReport,
    InvalidBatchSizeError,
    MatrixOracle,
    TourneyError,
)

Pair = tuple[int, int]


class BatchState:
    """Mutable state of one batched elimination round.

    Alive players live in the prefix ``order[:num_alive]``; removal swaps
    with the last alive slot.  ``played[u]`` holds u's opponents so far
    this round, and the (p1, p2) cursor walks position pairs looking for
    fresh matches, with one full rescan allowed per batch because swaps
    can move unseen players behind the cursor.
    """

    __slots__ = ("n", "alpha", "batch_size", "b_prime", "order", "pos",
                 "num_alive", "lost", "played", "p1", "p2", "_rescanned")

    def __init__(self, n: int, alpha: int, batch_size: int) -> None:
        self.n = n
        self.alpha = alpha
        self.batch_size = batch_size
        self.b_prime = batch_size
        self.order = list(range(n))
        self.pos = list(range(n))
        self.num_alive = n
        self.lost = [0] * n
        self.played: list[set[int]] = [set() for _ in range(n)]
        self.p1 = 0
        self.p2 = 1
        self._rescanned = False

    def is_alive(self, player: int) -> bool:
        return self.pos[player] < self.num_alive

    def alive_players(self) -> list[int]:
        return self.order[: self.num_alive]

    def _remove(self, player: int, log: list | None = None) -> None:
        i = self.pos[player]
        last = self.num_alive - 1
        order, pos = self.order, self.pos
        other = order[last]
        order[i], order[last] = other, player
        pos[player], pos[other] = last, i
        self.num_alive = last
        if log is not None:
            log.append((True, i, last))

    def next_fresh_pair(self) -> Pair | None:
        order, played = self.order, self.played
        while True:
            na = self.num_alive
            p1, p2 = self.p1, self.p2
            if p1 >= na - 1:
                if self._rescanned or na < 2:
                    return None
                self._rescanned = True
                self.p1, self.p2 = 0, 1
                continue
            if p2 >= na:
                self.p1 = p1 + 1
                self.p2 = p1 + 2
                continue
            u = order[p1]
            v = order[p2]
            if v in played[u]:
                self.p2 = p2 + 1
                continue
            return u, v


def increase_loss(state: BatchState, player: int) -> None:
    """Charge one loss to an alive player, removing it at alpha losses.

    Calling this on an eliminated player is a bug in the caller (batch
    resolution guards for it), so it raises rather than ignores.
    """
    if state.pos[player] >= state.num_alive:
        raise TourneyError(
            f"internal invariant violated: loss charged to eliminated player {player}"
        )
    count = state.lost[player] + 1
    state.lost[player] = count
    if count >= state.alpha:
        state._remove(player)


def _speculative_loss(state: BatchState, log: list, player: int) -> None:
    state.lost[player] += 1
    log.append((False, player, 0))
    if state.lost[player] >= state.alpha:
        state._remove(player, log)


def _rollback(state: BatchState, log: list) -> None:
    order, pos = state.order, state.pos
    for is_swap, a, b in reversed(log):
        if is_swap:
            x, y = order[a], order[b]
            order[a], order[b] = y, x
            pos[x], pos[y] = b, a
            state.num_alive += 1
        else:
            state.lost[a] -= 1


def build_batch(state: BatchState) -> list[Pair]:
    """Select up to B' fresh pairs whose losers are guaranteed still alive.

    Both endpoints of every selected pair are charged speculatively on the
    state overlay, so a player one loss from elimination is picked at most
    once more; the overlay is rolled back before returning and the global
    alive/loss state is unchanged.  Selected pairs are marked as played.
    """
    log: list = []
    plan: list[Pair] = []
    played = state.played
    state._rescanned = False
    while len(plan) < state.b_prime:
        pair = state.next_fresh_pair()
        if pair is None:
            break
        u, v = pair
        played[u].add(v)
        played[v].add(u)
        plan.append(pair)
        _speculative_loss(state, log, u)
        _speculative_loss(state, log, v)
    _rollback(state, log)
    return plan


def fill_batch_heuristic(
    oracle: MatrixOracle,
    alive,
    lost: list[int],
    pairs: list[Pair],
    batch_size: int,
    fill_cursor: list[int] | None = None,
) -> list[Pair]:
    """Prefetch arcs to top a partially filled batch up to ``batch_size``.

    Repeatedly takes the alive player with the fewest losses (ties by
    index) that still has un-probed arcs and appends those arcs in opponent
    index order, until the batch is full or nothing un-probed remains.
    The caller only stores the padded results in the memo cache; they charge
    no loss counters this round.  Requires a memoizing oracle.

    ``fill_cursor`` persists each player's scan position across calls so
    re-scanning already-cached prefixes is paid once per run.
    """
    if oracle.cache is None:
        raise TourneyError("batch filling requires a memoizing oracle")
    capacity = batch_size - len(pairs)
    if capacity <= 0:
        return []
    n = oracle.n
    if fill_cursor is None:
        fill_cursor = [0] * n
    table = oracle.cache._table
    exclude = {u * n + v if u < v else v * n + u for u, v in pairs}
    heap = [(lost[u], u) for u in alive if fill_cursor[u] < n]
    heapq.heapify(heap)
    pads: list[Pair] = []
    while capacity > 0 and heap:
        _, u = heapq.heappop(heap)
        cur = fill_cursor[u]
        while cur < n and capacity > 0:
            v = cur
            if v != u:
                key = u * n + v if u < v else v * n + u
                if key not in table and key not in exclude:
                    exclude.add(key)
                    pads.append((u, v))
                    capacity -= 1
            cur += 1
        fill_cursor[u] = cur
    return pads


def _resolve_plan(
    oracle: MatrixOracle,
    state: BatchState,
    plan: list[Pair],
    batch_fill: bool,
    fill_cursor: list[int],
) -> None:
    # Cached pairs are replayed for free (and resolved on the spot); only
    # cache misses occupy batch slots, topped up with prefetch arcs when
    # the batch is short.
    probe_if_cached = oracle.probe_if_cached
    fresh: list[Pair] = []
    for u, v in plan:
        winner = probe_if_cached(u, v)
        if winner is None:
            fresh.append((u, v))
            continue
        loser = v if winner == u else u
        if state.pos[loser] < state.num_alive:
            increase_loss(state, loser)
    if not fresh:
        return
    batch = fresh
    if batch_fill and len(batch) < state.batch_size:
        batch = fresh + fill_batch_heuristic(
            oracle, state.alive_players(), state.lost, fresh,
            state.batch_size, fill_cursor,
        )
    winners = oracle.probe_batch(batch)
    for (u, v), winner in zip(fresh, winners):
        loser = v if winner == u else u
        # A stale result (loser already removed by an earlier pair of this
        # batch) is impossible under speculative construction, but results
        # from a misbehaving oracle are still safe: they just stay cached.
        if state.pos[loser] < state.num_alive:
            increase_loss(state, loser)


def _run_batched_elimination(
    oracle: MatrixOracle,
    state: BatchState,
    batch_fill: bool,
    fill_cursor: list[int],
) -> None:
    alpha = state.alpha
    halving_started = False
    while state.num_alive > 6 * alpha:
        while state.num_alive < 2 * state.b_prime + 2 * alpha and state.b_prime > 1:
            state.b_prime //= 2
            halving_started = True
        if halving_started:
            lo = 2 * state.b_prime + 2 * alpha
            hi = 4 * state.b_prime + 2 * alpha
            if not lo <= state.num_alive <= hi:
                raise TourneyError(
                    f"halving window violated: alive={state.num_alive}, "
                    f"B'={state.b_prime}, alpha={alpha}, expected [{lo}, {hi}]"
                )
        plan = build_batch(state)
        if not plan:
            # No fresh pair among the alive players: only possible against
            # an oracle that is not a valid tournament.  The brute-force
            # stage still decides correctly on whatever is alive.
            break
        _resolve_plan(oracle, state, plan, batch_fill, fill_cursor)


def _brute_force_batched(
    oracle: MatrixOracle,
    alive,
    alpha: int,
    batch_size: int,
    lost: list[int],
    batch_fill: bool,
    fill_cursor: list[int],
) -> dict[int, int]:
    """Exact losses of every candidate that loses fewer than alpha matches.

    Scans each candidate's row in index order, in batches of fresh arcs;
    a row is abandoned once it reaches alpha losses, which cannot discard
    a champion when the exit test subsequently accepts.  Returns only the
    completed (sub-alpha) rows.
    """
    n = oracle.n
    completed: dict[int, int] = {}
    probe_if_cached = oracle.probe_if_cached
    for u in sorted(set(alive)):
        count = 0
        abandoned = False
        v = 0
        while v < n and not abandoned:
            fresh: list[Pair] = []
            room = batch_size
            while v < n and room:
                if v != u:
                    winner = probe_if_cached(u, v)
                    if winner is None:
                        fresh.append((u, v))
                        room -= 1
                    elif winner == v:
                        count += 1
                        if count >= alpha:
                            abandoned = True
                            break
                v += 1
            if abandoned or not fresh:
                break
            batch = fresh
            if batch_fill and len(batch) < batch_size:
                batch = fresh + fill_batch_heuristic(
                    oracle, alive, lost, fresh, batch_size, fill_cursor
                )
            winners = oracle.probe_batch(batch)
            for (a, b), winner in zip(fresh, winners):
                if winner == b:
                    count += 1
                    if count >= alpha:
                        abandoned = True
                        break
        if not abandoned:
            completed[u] = count
    return completed


def find_champions_batched(
    oracle: MatrixOracle,
    batch_size: int,
    *,
    batch_fill: bool | None = None,
) -> ChampionReport:
    """Find every champion, resolving matches in batches of ``batch_size``.

    Returns exactly the champion set and losses of the sequential
    :func:`tourney.algorithms.find_champions`; the stats additionally count
    ``batch_calls``, the number of parallel unfolds issued.  ``batch_fill``
    defaults to on when the oracle memoizes and must stay off otherwise.
    """
    if batch_size < 1:
        raise InvalidBatchSizeError(f"batch size must be >= 1, got {batch_size}")
    memoized = oracle.cache is not None
    if batch_fill is None:
        batch_fill = memoized
    elif batch_fill and not memoized:
        raise TourneyError("batch_fill requires a memoizing oracle")
    n = oracle.n
    if n == 1:
        return ChampionReport((0,), 0, 1, oracle.snapshot_stats([(1, 0)]))
    if n == 2:
        before = oracle.comparisons
        winner = oracle.probe_batch([(0, 1)])[0]
        spent = oracle.comparisons - before
        return ChampionReport((winner,), 0, 1, oracle.snapshot_stats([(1, spent)]))
    fill_cursor = [0] * n
    per_alpha: list[tuple[int, int]] = []
    alpha = 1
    while True:
        before = oracle.comparisons
        if 6 * alpha < n:
            state = BatchState(n, alpha, batch_size)
            _run_batched_elimination(oracle, state, batch_fill, fill_cursor)
            alive = state.alive_players()
            lost = state.lost
        else:
            alive = list(range(n))
            lost = [0] * n
        completed = _brute_force_batched(
            oracle, alive, alpha, batch_size, lost, batch_fill, fill_cursor
        )
        per_alpha.append((alpha, oracle.comparisons - before))
        if completed:
            best = min(completed.values())
            if best < alpha:
                champions = tuple(
                    sorted(u for u, l in completed.items() if l == best)
                )
                return ChampionReport(
                    champions, best, alpha, oracle.snapshot_stats(per_alpha)
                )
        alpha *= 2
