"""Seeded construction of tournament instances.

All generators are pure functions of their parameters and a 64-bit seed,
drawn from ``numpy.random.default_rng`` (PCG64).  Reproducibility contract:
the same (parameters, seed) always yields the identical matrix, on every
platform; the generator algorithm must not change without a format-version
bump of the file formats in :mod:`tourney.formats`.

Besides the plain transitive/regular/random families, two constructions
produce instances with known champion structure:

* ``gen_planted`` hides a unique champion with exactly ``ell`` losses inside
  an otherwise regular field, parameterizing instance hardness directly.
* ``gen_anomalous`` builds the block tournament whose champion sits in the
  first ``k`` rows and loses exactly ``(3k - 1) / 2`` matches while every
  other player loses strictly more, the adversarial shape that makes
  sublinear-in-ell algorithms impossible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    InvalidSpecError,
    MatrixTournament,
    ProbabilisticTournament,
)


@dataclass(frozen=True)
class PlantedMeta:
    champion: int
    ell: int


@dataclass(frozen=True)
class AnomalousMeta:
    champion: int
    ell: int
    k: int
    m: int


def gen_transitive(n: int) -> MatrixTournament:
    """Transitive tournament: u beats v iff u < v; player 0 never loses."""
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    wins = np.triu(np.ones((n, n), dtype=np.uint8), k=1)
    return MatrixTournament(wins)


def gen_regular_rotational(n: int) -> MatrixTournament:
    """Rotational regular tournament: i beats i+1 .. i+(n-1)/2 (mod n).

    Every out-degree equals (n-1)/2, so all n players tie as champions.
    Requires odd n.
    """
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    if n % 2 == 0:
        raise InvalidSpecError(f"a regular tournament needs odd n, got {n}")
    idx = np.arange(n)
    diff = (idx[None, :] - idx[:, None]) % n
    wins = ((diff >= 1) & (diff <= (n - 1) // 2)).astype(np.uint8)
    return MatrixTournament(wins)


def gen_random(n: int, seed: int) -> MatrixTournament:
    """Uniformly random orientation of every pair, deterministic in seed."""
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
    wins = np.triu(bits, 1) + np.tril(1 - bits.T, -1)
    return MatrixTournament(wins.astype(np.uint8))


def gen_planted(
    n: int, ell: int, seed: int, check: bool = False
) -> tuple[MatrixTournament, PlantedMeta]:
    """Plant a unique champion (player 0) losing exactly ``ell`` matches.

    Players 1..n-1 form a rotational regular tournament, each losing
    (n-2)/2 matches there; a seeded subset of exactly ``ell`` of them beats
    player 0, everyone else loses to it.  Requires odd n-1 and
    0 <= ell < (n-2)/2, which makes every other player lose strictly more
    than the champion.
    """
    if n < 2 or (n - 1) % 2 == 0:
        raise InvalidSpecError(f"planted instances need odd n-1, got n={n}")
    if not 0 <= ell < (n - 2) / 2:
        raise InvalidSpecError(
            f"planted ell must satisfy 0 <= ell < (n-2)/2, got ell={ell}, n={n}"
        )
    rng = np.random.default_rng(seed)
    wins = np.zeros((n, n), dtype=np.uint8)
    wins[1:, 1:] = gen_regular_rotational(n - 1).wins
    wins[0, 1:] = 1
    dominators = rng.choice(n - 1, size=ell, replace=False) + 1
    wins[0, dominators] = 0
    wins[dominators, 0] = 1
    instance = MatrixTournament(wins)
    meta = PlantedMeta(champion=0, ell=ell)
    if check:
        _check_planted(instance, meta)
    return instance, meta


def _check_planted(instance: MatrixTournament, meta: PlantedMeta) -> None:
    losses = instance.losses()
    if losses[meta.champion] != meta.ell:
        raise InvalidSpecError(
            f"self-check failed: champion loses {losses[meta.champion]}, "
            f"expected {meta.ell}"
        )
    others = np.delete(losses, meta.champion)
    if others.min() <= meta.ell:
        raise InvalidSpecError("self-check failed: champion is not unique")


def gen_anomalous(
    k: int, m: int, seed: int, check: bool = False
) -> tuple[MatrixTournament, AnomalousMeta]:
    """Block tournament with champion in the first k rows losing (3k-1)/2.

    Layout: the first k players and the last m players each form a
    rotational regular tournament; the k x m block between them has one
    seeded row with exactly k zeroes (the champion) and k+1 zeroes in every
    other row, with the opposite block its complement.  Requires odd k and
    m with m > 3k, so all last-m players lose at least (m-1)/2 > (3k-1)/2.
    """
    if k < 1 or m < 1 or k % 2 == 0 or m % 2 == 0:
        raise InvalidSpecError(f"anomalous instances need odd k and m, got k={k}, m={m}")
    if m <= 3 * k:
        raise InvalidSpecError(f"anomalous instances need m > 3k, got k={k}, m={m}")
    rng = np.random.default_rng(seed)
    champion = int(rng.integers(0, k))
    block = np.ones((k, m), dtype=np.uint8)
    for row in range(k):
        zeros = k if row == champion else k + 1
        cols = rng.choice(m, size=zeros, replace=False)
        block[row, cols] = 0
    n = k + m
    wins = np.zeros((n, n), dtype=np.uint8)
    wins[:k, :k] = gen_regular_rotational(k).wins
    wins[k:, k:] = gen_regular_rotational(m).wins
    wins[:k, k:] = block
    wins[k:, :k] = (1 - block).T
    instance = MatrixTournament(wins)
    meta = AnomalousMeta(champion=champion, ell=(3 * k - 1) // 2, k=k, m=m)
    if check:
        _check_anomalous(instance, meta)
    return instance, meta


def _check_anomalous(instance: MatrixTournament, meta: AnomalousMeta) -> None:
    losses = instance.losses()
    if losses[meta.champion] != meta.ell:
        raise InvalidSpecError(
            f"self-check failed: champion loses {losses[meta.champion]}, "
            f"expected {meta.ell}"
        )
    first_k = np.delete(losses[: meta.k], meta.champion)
    if first_k.size and not (first_k == meta.ell + 1).all():
        raise InvalidSpecError("self-check failed: non-champion first-k losses")
    if losses[meta.k:].min() < (meta.m - 1) // 2:
        raise InvalidSpecError("self-check failed: last-m player loses too little")


def gen_random_probabilistic(n: int, seed: int) -> ProbabilisticTournament:
    """Uniform [0, 1] win probability per pair, exactly complementary."""
    if n < 1:
        raise InvalidSpecError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    vals = rng.random((n, n))
    p = np.triu(vals, 1) + np.tril(1.0 - vals.T, -1)
    return ProbabilisticTournament(p)


#: Generator kinds accepted by :class:`GenSpec` (and the CLI).
KINDS = ("transitive", "regular", "random", "planted", "anomalous", "probabilistic")


@dataclass(frozen=True)
class GenSpec:
    """Declarative description of an instance to generate.

    ``kind`` selects the family; ``n`` sizes every family except
    ``anomalous``, which takes (k, m) instead; ``ell`` applies to planted
    instances only.
    """

    kind: str
    n: int = 0
    ell: int = 0
    k: int = 0
    m: int = 0
    seed: int = 0

    def generate(
        self, check: bool = False
    ) -> MatrixTournament | ProbabilisticTournament:
        if self.kind == "transitive":
            return gen_transitive(self.n)
        if self.kind == "regular":
            return gen_regular_rotational(self.n)
        if self.kind == "random":
            return gen_random(self.n, self.seed)
        if self.kind == "planted":
            return gen_planted(self.n, self.ell, self.seed, check=check)[0]
        if self.kind == "anomalous":
            return gen_anomalous(self.k, self.m, self.seed, check=check)[0]
        if self.kind == "probabilistic":
            return gen_random_probabilistic(self.n, self.seed)
        raise InvalidSpecError(f"unknown generator kind {self.kind!r}")
