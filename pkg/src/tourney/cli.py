"""Command-line frontend.

One subcommand per algorithm (``champion``, ``topk``, ``prob``,
``batched``, ``brute``), plus ``gen`` to write instance files and ``bench``
to run counting suites.  Run subcommands emit a machine-readable run record
as JSON on stdout and a one-line summary on stderr (``--json-only``
suppresses the summary); ``bench`` emits CSV on stdout and an aligned table
on stderr, and can render figures with ``--plot-dir``.

The default seed comes from the ``TOURNEY_SEED`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algorithms import find_champions, top_k_champions
from .baseline import brute_force_champions, full_tournament_cost
from .batched import find_champions_batched
from .bench import ALGORITHMS, BENCH_KINDS, SuiteSpec, rows_to_csv, rows_to_table, run_suite
from .core import (
    InvalidSpecError,
    LookupStats,
    MatrixOracle,
    ProbabilisticTournament,
    TourneyError,
)
from .formats import (
    format_binary_matrix,
    format_probabilistic_matrix,
    instance_digest,
    parse_binary_matrix,
    parse_probabilistic_matrix,
)
from .generators import KINDS, GenSpec
from .probabilistic import ProbabilisticOracle, find_champions_probabilistic

FORMAT_VERSION = 1


def _env_seed() -> int:
    return int(os.environ.get("TOURNEY_SEED", "0"))


def _add_instance_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--in", dest="infile", metavar="FILE",
                     help="instance file to load")
    sub.add_argument("--gen", metavar="KIND", choices=KINDS,
                     help="generate the instance inline instead of loading")
    sub.add_argument("--n", type=int, help="size for --gen")
    sub.add_argument("--ell", type=int, default=0, help="planted champion losses")
    sub.add_argument("--gen-k", type=int, help="first block size for --gen anomalous")
    sub.add_argument("--gen-m", type=int, help="second block size for --gen anomalous")
    sub.add_argument("--seed", type=int, default=None,
                     help="generator seed (default: $TOURNEY_SEED or 0)")


def _add_run_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--order-preserving", action="store_true",
                     help="use the input-order (linked list) schedule")
    sub.add_argument("--memoize", action=argparse.BooleanOptionalAction,
                     default=True, help="share lookups across search rounds")
    sub.add_argument("--symmetric", action="store_true",
                     help="count one inference per comparison instead of two")
    sub.add_argument("--json-only", action="store_true",
                     help="suppress the stderr summary")


def _gen_spec(args) -> GenSpec:
    seed = args.seed if args.seed is not None else _env_seed()
    return GenSpec(
        kind=args.gen, n=args.n or 0, ell=args.ell,
        k=getattr(args, "gen_k", None) or 0,
        m=getattr(args, "gen_m", None) or 0, seed=seed,
    )


def _load_instance(args, probabilistic: bool = False):
    if args.infile and args.gen:
        raise InvalidSpecError("use either --in or --gen, not both")
    if args.infile:
        text = Path(args.infile).read_text()
        if probabilistic:
            return parse_probabilistic_matrix(text)
        return parse_binary_matrix(text)
    if args.gen:
        instance = _gen_spec(args).generate(check=True)
        if probabilistic and not isinstance(instance, ProbabilisticTournament):
            # 0/1-valued probabilistic twin of a binary instance.
            import numpy as np

            return ProbabilisticTournament(instance.wins.astype(np.float64))
        return instance
    raise InvalidSpecError("no instance given: use --in FILE or --gen KIND")


def _schedule(args) -> str:
    return "order_preserving" if args.order_preserving else "array_swap"


def _stats_payload(stats: LookupStats) -> dict:
    return {
        "comparisons": stats.comparisons,
        "inferences": stats.inferences,
        "cache_hits": stats.cache_hits,
        "batch_calls": stats.batch_calls,
        "asymmetric": stats.asymmetric,
        "per_alpha": [[alpha, count] for alpha, count in stats.per_alpha],
    }


def _emit_record(args, instance, report_payload: dict, inferences: int) -> None:
    n = instance.n
    base_comparisons, base_inferences = full_tournament_cost(
        n, asymmetric=not args.symmetric
    )
    speedup = None
    if inferences > 0 and base_inferences > 0:
        speedup = base_inferences / inferences
    record = {
        "format_version": FORMAT_VERSION,
        "command": " ".join(args.command_line),
        "instance_digest": instance_digest(instance),
        "report": report_payload,
        "baseline_cost": {
            "comparisons": base_comparisons,
            "inferences": base_inferences,
        },
        "speedup": speedup,
    }
    print(json.dumps(record, indent=2, sort_keys=True))


def _summary(args, text: str) -> None:
    if not args.json_only:
        print(text, file=sys.stderr)


def cmd_champion(args) -> int:
    instance = _load_instance(args)
    oracle = MatrixOracle(instance, memoize=args.memoize,
                          asymmetric=not args.symmetric)
    report = find_champions(oracle, schedule=_schedule(args))
    stats = report.stats
    _emit_record(args, instance, {
        "champions": list(report.champions),
        "losses": report.losses,
        "final_alpha": report.final_alpha,
        "stats": _stats_payload(stats),
    }, stats.inferences)
    _summary(args, f"champions {list(report.champions)} with {report.losses} "
                   f"losses; {stats.comparisons} comparisons "
                   f"({stats.inferences} inferences)")
    return 0


def cmd_topk(args) -> int:
    instance = _load_instance(args)
    oracle = MatrixOracle(instance, memoize=args.memoize,
                          asymmetric=not args.symmetric)
    report = top_k_champions(oracle, args.k, schedule=_schedule(args))
    stats = report.stats
    _emit_record(args, instance, {
        "players": list(report.players),
        "losses": list(report.losses),
        "stats": _stats_payload(stats),
    }, stats.inferences)
    _summary(args, f"top-{args.k} players {list(report.players)} with losses "
                   f"{list(report.losses)}; {stats.comparisons} comparisons")
    return 0


def cmd_prob(args) -> int:
    instance = _load_instance(args, probabilistic=True)
    oracle = ProbabilisticOracle(instance, memoize=args.memoize,
                                 asymmetric=not args.symmetric)
    report = find_champions_probabilistic(oracle, schedule=_schedule(args))
    stats = report.stats
    _emit_record(args, instance, {
        "champions": list(report.champions),
        "losses": report.losses,
        "final_alpha": report.final_alpha,
        "stats": _stats_payload(stats),
    }, stats.inferences)
    _summary(args, f"champions {list(report.champions)} with expected losses "
                   f"{report.losses:.6f}; {stats.comparisons} comparisons")
    return 0


def cmd_batched(args) -> int:
    instance = _load_instance(args)
    oracle = MatrixOracle(instance, memoize=args.memoize,
                          asymmetric=not args.symmetric)
    report = find_champions_batched(oracle, args.batch_size,
                                    batch_fill=args.batch_fill)
    stats = report.stats
    _emit_record(args, instance, {
        "champions": list(report.champions),
        "losses": report.losses,
        "final_alpha": report.final_alpha,
        "stats": _stats_payload(stats),
    }, stats.inferences)
    _summary(args, f"champions {list(report.champions)} with {report.losses} "
                   f"losses; {stats.batch_calls} parallel calls of size "
                   f"{args.batch_size}, {stats.comparisons} comparisons")
    return 0


def cmd_brute(args) -> int:
    instance = _load_instance(args)
    solution = brute_force_champions(instance)
    n = instance.n
    comparisons, inferences = full_tournament_cost(n, asymmetric=not args.symmetric)
    stats = LookupStats(comparisons=comparisons, cache_hits=0, batch_calls=0,
                        asymmetric=not args.symmetric)
    _emit_record(args, instance, {
        "champions": list(solution.champions),
        "losses": min(solution.losses),
        "full_losses": list(solution.losses),
        "ranking": list(solution.ranking),
        "stats": _stats_payload(stats),
    }, stats.inferences)
    _summary(args, f"champions {list(solution.champions)} with "
                   f"{min(solution.losses)} losses; full tournament costs "
                   f"{comparisons} comparisons ({stats.inferences} inferences)")
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    spec = GenSpec(kind=args.kind, n=args.n or 0, ell=args.ell,
                   k=args.k or 0, m=args.m or 0, seed=seed)
    instance = spec.generate(check=True)
    if isinstance(instance, ProbabilisticTournament):
        text = format_probabilistic_matrix(instance)
    else:
        text = format_binary_matrix(instance)
    if args.out:
        Path(args.out).write_text(text)
        if not args.json_only:
            print(f"wrote {instance.n}-player {args.kind} instance to {args.out}",
                  file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    spec = SuiteSpec(
        kinds=tuple(args.kinds),
        sizes=tuple(args.ns),
        ells=tuple(args.ells),
        ks=tuple(args.ks),
        batch_sizes=tuple(args.batch_sizes),
        algorithms=tuple(args.algorithms),
        seeds=args.seeds,
        base_seed=seed,
        asymmetric=not args.symmetric,
        memoize=args.memoize,
        schedule=_schedule(args),
    )
    rows = run_suite(spec)
    csv_text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if not args.json_only:
        sys.stderr.write(rows_to_table(rows))
    if args.plot_dir:
        from .plotting import render_bench_figures

        written = render_bench_figures(rows, args.plot_dir)
        if not args.json_only:
            for path in written:
                print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tourney",
        description="Find tournament champions with few pairwise probes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    champion = sub.add_parser("champion", help="find every minimum-loss player")
    _add_instance_args(champion)
    _add_run_args(champion)
    champion.set_defaults(func=cmd_champion)

    topk = sub.add_parser("topk", help="find the k best players")
    _add_instance_args(topk)
    _add_run_args(topk)
    topk.add_argument("--k", type=int, required=True, help="how many players")
    topk.set_defaults(func=cmd_topk)

    prob = sub.add_parser("prob", help="find expected-loss champions")
    _add_instance_args(prob)
    _add_run_args(prob)
    prob.set_defaults(func=cmd_prob)

    batched = sub.add_parser("batched", help="find champions with batched probes")
    _add_instance_args(batched)
    _add_run_args(batched)
    batched.add_argument("--batch-size", type=int, default=8,
                         help="arcs per parallel call (default 8)")
    batched.add_argument("--batch-fill", action=argparse.BooleanOptionalAction,
                         default=None,
                         help="pad short batches with prefetch arcs "
                              "(default: on when memoizing)")
    batched.set_defaults(func=cmd_batched)

    brute = sub.add_parser("brute", help="solve the whole tournament directly")
    _add_instance_args(brute)
    _add_run_args(brute)
    brute.set_defaults(func=cmd_brute)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--kind", required=True, choices=KINDS)
    gen.add_argument("--n", type=int, help="player count")
    gen.add_argument("--ell", type=int, default=0, help="planted champion losses")
    gen.add_argument("--k", type=int, help="first block size (anomalous)")
    gen.add_argument("--m", type=int, help="second block size (anomalous)")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", metavar="FILE", help="output path (default stdout)")
    gen.add_argument("--json-only", action="store_true",
                     help="suppress the stderr summary")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="run a counting benchmark suite")
    bench.add_argument("--kinds", nargs="+", default=["planted"],
                       choices=BENCH_KINDS)
    bench.add_argument("--ns", nargs="+", type=int, default=[30],
                       help="instance sizes")
    bench.add_argument("--ells", nargs="+", type=int, default=[0],
                       help="planted champion losses")
    bench.add_argument("--ks", nargs="+", type=int, default=[],
                       help="k values for the topk algorithm")
    bench.add_argument("--batch-sizes", nargs="+", type=int, default=[],
                       help="batch sizes for the batched algorithm")
    bench.add_argument("--algorithms", nargs="+", default=["champion"],
                       choices=ALGORITHMS)
    bench.add_argument("--seeds", type=int, default=10,
                       help="seeds per cell")
    bench.add_argument("--seed", type=int, default=None,
                       help="base seed (default: $TOURNEY_SEED or 0)")
    bench.add_argument("--out", metavar="FILE", help="CSV path (default stdout)")
    bench.add_argument("--plot-dir", metavar="DIR",
                       help="render figures into this directory")
    bench.add_argument("--order-preserving", action="store_true")
    bench.add_argument("--memoize", action=argparse.BooleanOptionalAction,
                       default=True)
    bench.add_argument("--symmetric", action="store_true")
    bench.add_argument("--json-only", action="store_true",
                       help="suppress the stderr table")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args.command_line = list(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename}: no such file", file=sys.stderr)
        return 2
    except TourneyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
