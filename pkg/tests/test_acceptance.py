"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; each test asserts its stated tolerance (bounds are exact where the
criterion is exact) and the stated runtime budget.
"""

import itertools
import math
import time

import numpy as np

from tourney.algorithms import SCHEDULES, find_champions, top_k_champions
from tourney.baseline import brute_force_champions, full_tournament_cost
from tourney.batched import find_champions_batched
from tourney.bench import SuiteSpec, rows_to_csv, run_suite
from tourney.core import MatrixOracle, MatrixTournament, ProbabilisticTournament
from tourney.generators import (
    gen_anomalous,
    gen_planted,
    gen_random,
    gen_random_probabilistic,
    gen_transitive,
)
from tourney.probabilistic import (
    ProbabilisticOracle,
    expected_losses_brute,
    find_champions_probabilistic,
)


def _report(name: str, detail: str, started: float, budget: float) -> None:
    elapsed = time.perf_counter() - started
    assert elapsed < budget, f"{name} took {elapsed:.1f}s, budget {budget}s"
    print(f"\nACCEPTANCE {name}: PASS ({detail}; {elapsed:.1f}s < {budget:.0f}s)")


def _matrix_from_bits(n: int, bits: int) -> MatrixTournament:
    wins = np.zeros((n, n), dtype=np.uint8)
    for i, (u, v) in enumerate(itertools.combinations(range(n), 2)):
        if bits >> i & 1:
            wins[u][v] = 1
        else:
            wins[v][u] = 1
    return MatrixTournament(wins)


def test_criterion_1_exhaustive_small_tournaments():
    started = time.perf_counter()
    runs = 0
    for n in (2, 3, 4, 5, 6):
        for bits in range(1 << (n * (n - 1) // 2)):
            instance = _matrix_from_bits(n, bits)
            expected = brute_force_champions(instance)
            best = min(expected.losses)
            for schedule in SCHEDULES:
                for memoize in (True, False):
                    report = find_champions(
                        MatrixOracle(instance, memoize=memoize),
                        schedule=schedule,
                    )
                    assert report.champions == expected.champions, (n, bits)
                    assert report.losses == best
                    runs += 1
    _report("criterion 1 (exhaustive n=2..6)", f"{runs} runs", started, 60.0)


def test_criterion_2_randomized_correctness():
    started = time.perf_counter()
    runs = 0
    for n in (20, 50, 200):
        for seed in range(100):
            instance = gen_random(n, seed)
            expected = brute_force_champions(instance).champions
            assert find_champions(MatrixOracle(instance)).champions == expected
            prob_twin = ProbabilisticTournament(instance.wins.astype(np.float64))
            prob = find_champions_probabilistic(ProbabilisticOracle(prob_twin))
            assert prob.champions == expected
            for batch_size in (1, 8, 64):
                batched = find_champions_batched(MatrixOracle(instance), batch_size)
                assert batched.champions == expected
            runs += 5
    _report("criterion 2 (random n=20/50/200)", f"{runs} runs", started, 60.0)


def test_criterion_3_lookup_bound_on_planted():
    started = time.perf_counter()
    for n in (100, 500):
        for ell in (0, 1, 2, 4, 8):
            for seed in range(20):
                instance, _ = gen_planted(n, ell, seed=seed)
                for schedule in SCHEDULES:
                    oracle = MatrixOracle(instance)
                    report = find_champions(oracle, schedule=schedule)
                    assert report.losses == ell
                    assert oracle.comparisons <= 24 * n * max(ell, 1), (n, ell, seed)
                    if ell == 0:
                        assert oracle.comparisons <= 3 * n, (n, seed)
    _report("criterion 3 (lookup bound)", "(n,ell) grid x 20 seeds", started, 30.0)


def test_criterion_4_full_tournament_baseline_and_speedup():
    started = time.perf_counter()
    assert full_tournament_cost(30, asymmetric=True) == (435, 870)
    oracle = MatrixOracle(gen_transitive(30))
    report = find_champions(oracle)
    assert report.champions == (0,)
    inferences = oracle.snapshot_stats().inferences
    speedup = 870 / inferences
    assert speedup >= 5.0, speedup
    _report("criterion 4 (870-inference baseline)",
            f"speedup {speedup:.1f}x", started, 10.0)


def test_criterion_5_anomalous_construction():
    started = time.perf_counter()
    for k, m in ((3, 11), (5, 17), (7, 23)):
        ell = (3 * k - 1) // 2
        for seed in range(10):
            instance, meta = gen_anomalous(k, m, seed=seed)
            assert meta.ell == ell
            losses = brute_force_champions(instance).losses
            assert meta.champion < k
            assert losses[meta.champion] == ell
            for u in range(k):
                if u != meta.champion:
                    assert losses[u] == ell + 1
            assert min(losses[k:]) >= (m - 1) // 2
            assert (m - 1) // 2 > ell
    _report("criterion 5 (anomalous construction)", "3 shapes x 10 seeds",
            started, 10.0)


def test_criterion_6_probabilistic_equivalence():
    started = time.perf_counter()
    for n in (10, 30, 50):
        for seed in range(50):
            instance = gen_random_probabilistic(n, seed)
            sums = np.asarray(expected_losses_brute(instance))
            assert sums.max() >= (n - 1) / 2
            expected = tuple(np.flatnonzero(sums <= sums.min() + 1e-9).tolist())
            report = find_champions_probabilistic(ProbabilisticOracle(instance))
            assert report.champions == expected, (n, seed)
            assert abs(report.losses - sums.min()) <= 1e-9
    _report("criterion 6 (probabilistic)", "150 instances", started, 30.0)


def test_criterion_7_batched_bounds():
    started = time.perf_counter()
    n, ell = 500, 4
    budgets = {}
    for seed in range(10):
        instance, _ = gen_planted(n, ell, seed=seed)
        expected = brute_force_champions(instance).champions
        calls = []
        for batch_size in (2, 4, 8, 16, 32, 64, 128, 256):
            oracle = MatrixOracle(instance)
            # The halving-window check raises from inside the round, so a
            # clean return is the window assertion.
            report = find_champions_batched(oracle, batch_size)
            assert report.champions == expected
            budget = (8 * ell * n / batch_size
                      + 32 * ell * math.log2(batch_size) + 16 * ell + 64)
            assert oracle.batch_calls <= budget, (seed, batch_size)
            calls.append(oracle.batch_calls)
            budgets[batch_size] = max(budgets.get(batch_size, 0), oracle.batch_calls)
        assert all(a >= b for a, b in zip(calls, calls[1:])), (seed, calls)
    detail = f"worst calls at B=2: {budgets[2]}"
    _report("criterion 7 (batched bounds)", detail, started, 60.0)


def test_criterion_8_top_k():
    started = time.perf_counter()
    n = 50
    instances = [gen_planted(n, ell, seed=seed)[0]
                 for ell in (0, 2, 5) for seed in range(3)]
    instances += [gen_random(n, seed) for seed in range(3)]
    for instance in instances:
        full = sorted(brute_force_champions(instance).losses)
        counts = []
        for k in range(1, 11):
            oracle = MatrixOracle(instance)
            report = top_k_champions(oracle, k)
            assert sorted(report.losses) == full[:k]
            counts.append(oracle.comparisons)
        assert counts == sorted(counts), counts
    _report("criterion 8 (top-k)", f"{len(instances)} instances x k=1..10",
            started, 30.0)


def test_criterion_9_bench_determinism():
    started = time.perf_counter()
    spec = SuiteSpec(
        kinds=("planted", "transitive"), sizes=(30,), ells=(0, 2),
        ks=(1, 3), batch_sizes=(2, 16),
        algorithms=("champion", "topk", "batched"), seeds=5, base_seed=7,
    )
    first = rows_to_csv(run_suite(spec))
    second = rows_to_csv(run_suite(spec))
    assert first == second
    assert first.encode() == second.encode()
    _report("criterion 9 (bench determinism)",
            f"{len(first.splitlines()) - 1} cells byte-identical", started, 30.0)
