"""Probe-efficient Copeland winner search for tournament graphs.

The package finds all minimum-loss players (champions) of a round-robin
tournament while counting every pairwise probe, together with top-k,
probabilistic and batched variants, instance generators with known champion
structure, a quadratic baseline oracle, and a benchmark harness.
"""

from .algorithms import (
    RoundResult,
    SCHEDULES,
    TopKReport,
    brute_force_over_alive,
    exponential_search_round,
    find_champions,
    top_k_champions,
)
from .baseline import FullSolution, brute_force_champions, full_tournament_cost
from .batched import find_champions_batched
from .core import (
    ChampionReport,
    DuplicateInBatchError,
    InvalidBatchSizeError,
    InvalidKError,
    InvalidPairError,
    InvalidSpecError,
    LookupStats,
    MalformedInstanceError,
    MatrixOracle,
    MatrixTournament,
    MatrixValidation,
    MemoCache,
    ProbabilisticTournament,
    TourneyError,
    validate_matrix,
    validate_probabilistic,
)
from .generators import (
    AnomalousMeta,
    GenSpec,
    PlantedMeta,
    gen_anomalous,
    gen_planted,
    gen_random,
    gen_random_probabilistic,
    gen_regular_rotational,
    gen_transitive,
)
from .probabilistic import (
    ProbabilisticOracle,
    expected_losses_brute,
    find_champions_probabilistic,
)

__version__ = "0.1.0"

__all__ = [
    "AnomalousMeta",
    "ChampionReport",
    "DuplicateInBatchError",
    "FullSolution",
    "GenSpec",
    "InvalidBatchSizeError",
    "InvalidKError",
    "InvalidPairError",
    "InvalidSpecError",
    "LookupStats",
    "MalformedInstanceError",
    "MatrixOracle",
    "MatrixTournament",
    "MatrixValidation",
    "MemoCache",
    "PlantedMeta",
    "ProbabilisticOracle",
    "ProbabilisticTournament",
    "RoundResult",
    "SCHEDULES",
    "TopKReport",
    "TourneyError",
    "brute_force_champions",
    "brute_force_over_alive",
    "expected_losses_brute",
    "exponential_search_round",
    "find_champions",
    "find_champions_batched",
    "find_champions_probabilistic",
    "full_tournament_cost",
    "gen_anomalous",
    "gen_planted",
    "gen_random",
    "gen_random_probabilistic",
    "gen_regular_rotational",
    "gen_transitive",
    "top_k_champions",
    "validate_matrix",
    "validate_probabilistic",
]
