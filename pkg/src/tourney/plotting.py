"""Figure rendering for benchmark results.

The bench report path can write PNG figures next to its CSV: lookup counts
against k for the top-k sweep, parallel calls against batch size for the
batched sweep, and the speedup of every cell over the full all-pairs
tournament.  Figures with no matching rows are skipped.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import BenchRow

plt.rcParams.update({
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "font.size": 10,
})


def _config_label(row: BenchRow) -> str:
    label = f"{row.kind} n={row.n}"
    if row.ell is not None:
        label += f" ell={row.ell}"
    return label


def _group_by_config(rows: list[BenchRow]) -> dict[str, list[BenchRow]]:
    groups: dict[str, list[BenchRow]] = {}
    for row in rows:
        groups.setdefault(_config_label(row), []).append(row)
    return groups


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _plot_topk(rows: list[BenchRow], outdir: Path) -> Path | None:
    topk = [r for r in rows if r.algorithm == "topk"]
    if not topk:
        return None
    fig, ax = plt.subplots()
    for label, group in _group_by_config(topk).items():
        group = sorted(group, key=lambda r: r.k)
        ax.plot([r.k for r in group], [r.comparisons for r in group],
                marker="o", label=label)
    ax.set_xlabel("k")
    ax.set_ylabel("mean comparisons")
    ax.set_title("Top-k retrieval cost")
    ax.legend()
    return _save(fig, outdir / "comparisons_vs_k.png")


def _plot_batched(rows: list[BenchRow], outdir: Path) -> Path | None:
    batched = [r for r in rows if r.algorithm == "batched"]
    if not batched:
        return None
    fig, ax = plt.subplots()
    for label, group in _group_by_config(batched).items():
        group = sorted(group, key=lambda r: r.batch)
        ax.plot([r.batch for r in group], [r.batch_calls for r in group],
                marker="o", label=label)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("batch size B")
    ax.set_ylabel("mean parallel calls")
    ax.set_title("Batched search cost")
    ax.legend()
    return _save(fig, outdir / "batch_calls_vs_batch_size.png")


def _plot_speedup(rows: list[BenchRow], outdir: Path) -> Path | None:
    if not rows:
        return None
    fig, ax = plt.subplots(figsize=(6.4, max(2.0, 0.35 * len(rows))))
    labels = []
    for row in rows:
        suffix = ""
        if row.k is not None:
            suffix = f" k={row.k}"
        elif row.batch is not None:
            suffix = f" B={row.batch}"
        labels.append(f"{_config_label(row)} {row.algorithm}{suffix}")
    y = range(len(rows))
    ax.barh(y, [r.speedup for r in rows])
    ax.set_yticks(y, labels)
    ax.invert_yaxis()
    ax.axvline(1.0, color="k", linewidth=0.8)
    ax.set_xlabel("speedup over full tournament (inferences)")
    ax.set_title("Speedup per suite cell")
    return _save(fig, outdir / "speedup.png")


def render_bench_figures(rows: list[BenchRow], outdir: str | Path) -> list[Path]:
    """Write the applicable figures for ``rows`` into ``outdir``.

    Returns the paths written, in a fixed order.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for plot in (_plot_topk, _plot_batched, _plot_speedup):
        path = plot(rows, outdir)
        if path is not None:
            written.append(path)
    return written
