"""Benchmark harness: mean lookup counts over instance/algorithm grids.

A suite is a cross product of generator configurations and algorithm
configurations; every cell is run over ``seeds`` consecutive seeds and
reported as mean comparisons, inferences and batch calls, plus the speedup
against resolving the full all-pairs tournament.  Runs are deterministic:
the same suite always produces byte-identical CSV.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algorithms import find_champions, top_k_champions
from .baseline import full_tournament_cost
from .batched import find_champions_batched
from .core import InvalidSpecError, MatrixOracle, ProbabilisticTournament
from .generators import GenSpec
from .probabilistic import ProbabilisticOracle, find_champions_probabilistic

#: Generator kinds the harness can sweep (anomalous needs (k, m), not n).
BENCH_KINDS = ("transitive", "regular", "random", "planted", "probabilistic")

ALGORITHMS = ("champion", "topk", "batched", "prob")

CSV_HEADER = "kind,n,ell,k,B,algorithm,comparisons,inferences,batch_calls,speedup,seeds"


@dataclass(frozen=True)
class SuiteSpec:
    """What to run: instance families x algorithm configurations."""

    kinds: tuple[str, ...]
    sizes: tuple[int, ...]
    ells: tuple[int, ...] = (0,)
    ks: tuple[int, ...] = ()
    batch_sizes: tuple[int, ...] = ()
    algorithms: tuple[str, ...] = ("champion",)
    seeds: int = 10
    base_seed: int = 0
    asymmetric: bool = True
    memoize: bool = True
    schedule: str = "array_swap"

    def validate(self) -> None:
        for kind in self.kinds:
            if kind not in BENCH_KINDS:
                raise InvalidSpecError(
                    f"unknown bench kind {kind!r}; expected one of {BENCH_KINDS}"
                )
        for algorithm in self.algorithms:
            if algorithm not in ALGORITHMS:
                raise InvalidSpecError(
                    f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}"
                )
        if "topk" in self.algorithms and not self.ks:
            raise InvalidSpecError("topk requires at least one k")
        if "batched" in self.algorithms and not self.batch_sizes:
            raise InvalidSpecError("batched requires at least one batch size")
        if self.seeds < 1:
            raise InvalidSpecError(f"seed count must be >= 1, got {self.seeds}")


@dataclass(frozen=True)
class BenchRow:
    """One suite cell: an instance configuration run under one algorithm."""

    kind: str
    n: int
    ell: int | None
    k: int | None
    batch: int | None
    algorithm: str
    comparisons: float
    inferences: float
    batch_calls: float
    speedup: float
    seeds: int


def _binary_to_probabilistic(instance) -> ProbabilisticTournament:
    return ProbabilisticTournament(instance.wins.astype(np.float64))


def _run_once(spec: SuiteSpec, kind: str, n: int, ell: int | None,
              algorithm: str, k: int | None, batch: int | None, seed: int):
    gen = GenSpec(kind=kind, n=n, ell=ell or 0, seed=seed)
    instance = gen.generate()
    if algorithm == "prob":
        if kind != "probabilistic":
            instance = _binary_to_probabilistic(instance)
        oracle = ProbabilisticOracle(
            instance, memoize=spec.memoize, asymmetric=spec.asymmetric
        )
        find_champions_probabilistic(oracle, schedule=spec.schedule)
    else:
        if kind == "probabilistic":
            raise InvalidSpecError(
                f"algorithm {algorithm!r} needs a binary instance kind"
            )
        oracle = MatrixOracle(
            instance, memoize=spec.memoize, asymmetric=spec.asymmetric
        )
        if algorithm == "champion":
            find_champions(oracle, schedule=spec.schedule)
        elif algorithm == "topk":
            top_k_champions(oracle, k, schedule=spec.schedule)
        else:
            find_champions_batched(oracle, batch)
    stats = oracle.snapshot_stats()
    return stats.comparisons, stats.inferences, stats.batch_calls


def _cell(spec: SuiteSpec, kind: str, n: int, ell: int | None,
          algorithm: str, k: int | None, batch: int | None) -> BenchRow:
    totals = [0, 0, 0]
    for i in range(spec.seeds):
        result = _run_once(spec, kind, n, ell, algorithm, k, batch,
                           spec.base_seed + i)
        for j in range(3):
            totals[j] += result[j]
    means = [t / spec.seeds for t in totals]
    _, baseline_inferences = full_tournament_cost(n, spec.asymmetric)
    speedup = baseline_inferences / means[1] if means[1] > 0 else 0.0
    return BenchRow(
        kind=kind, n=n, ell=ell, k=k, batch=batch, algorithm=algorithm,
        comparisons=means[0], inferences=means[1], batch_calls=means[2],
        speedup=speedup, seeds=spec.seeds,
    )


def run_suite(spec: SuiteSpec) -> list[BenchRow]:
    """Run every cell of the suite; row order is the deterministic grid order."""
    spec.validate()
    rows: list[BenchRow] = []
    for kind in spec.kinds:
        ells = spec.ells if kind == "planted" else (None,)
        for n in spec.sizes:
            for ell in ells:
                for algorithm in spec.algorithms:
                    if algorithm == "topk":
                        for k in spec.ks:
                            rows.append(_cell(spec, kind, n, ell, algorithm, k, None))
                    elif algorithm == "batched":
                        for batch in spec.batch_sizes:
                            rows.append(_cell(spec, kind, n, ell, algorithm, None, batch))
                    else:
                        rows.append(_cell(spec, kind, n, ell, algorithm, None, None))
    return rows


def _field(value) -> str:
    return "" if value is None else str(value)


def rows_to_csv(rows: list[BenchRow]) -> str:
    """Render rows as CSV, byte-stable for identical inputs."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.kind},{r.n},{_field(r.ell)},{_field(r.k)},{_field(r.batch)},"
            f"{r.algorithm},{r.comparisons:.2f},{r.inferences:.2f},"
            f"{r.batch_calls:.2f},{r.speedup:.3f},{r.seeds}"
        )
    return "\n".join(lines) + "\n"


def rows_to_table(rows: list[BenchRow]) -> str:
    """Aligned-text rendering of the same rows for terminal reading."""
    header = CSV_HEADER.split(",")
    cells = [header]
    for r in rows:
        cells.append([
            r.kind, str(r.n), _field(r.ell), _field(r.k), _field(r.batch),
            r.algorithm, f"{r.comparisons:.2f}", f"{r.inferences:.2f}",
            f"{r.batch_calls:.2f}", f"{r.speedup:.3f}", str(r.seeds),
        ])
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = []
    for row in cells:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines) + "\n"
