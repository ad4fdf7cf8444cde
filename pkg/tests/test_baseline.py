"""Ground-truth solver and the full-tournament cost model."""

from hypothesis import given, settings
from hypothesis import strategies as st

from tourney.baseline import brute_force_champions, full_tournament_cost
from tourney.core import MatrixTournament
from tourney.generators import gen_anomalous, gen_random, gen_transitive


def test_transitive_solution():
    solution = brute_force_champions(gen_transitive(4))
    assert solution.losses == (0, 1, 2, 3)
    assert solution.champions == (0,)
    assert solution.ranking == (0, 1, 2, 3)


def test_cycle_solution():
    cycle = MatrixTournament([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    solution = brute_force_champions(cycle)
    assert solution.losses == (1, 1, 1)
    assert solution.champions == (0, 1, 2)


def test_anomalous_champion_losses():
    instance, _ = gen_anomalous(3, 11, seed=5)
    solution = brute_force_champions(instance)
    assert solution.losses[solution.champions[0]] == 4


@given(n=st.integers(1, 20), seed=st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_losses_sum_and_outdegree_recount(n, seed):
    instance = gen_random(n, seed)
    solution = brute_force_champions(instance)
    assert sum(solution.losses) == n * (n - 1) // 2
    out_degrees = instance.wins.sum(axis=1)
    for u in range(n):
        assert solution.losses[u] == (n - 1) - out_degrees[u]
    assert sorted(solution.ranking) == list(range(n))


def test_full_tournament_cost_matches_pairwise_model():
    assert full_tournament_cost(30, asymmetric=True) == (435, 870)
    assert full_tournament_cost(30, asymmetric=False) == (435, 435)
    assert full_tournament_cost(1, asymmetric=True) == (0, 0)
