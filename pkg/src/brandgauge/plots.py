"""Figure rendering for the CLI report paths.

Each report command writes its delimited table and, next to it, a PNG
rendered here. Uses the Agg backend so headless runs work.
"""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .consistency import TemporalBin
from .corpus import PostingStats


def plot_iat_ccdf(stats: PostingStats, path: str, title: str = "Posting inter-arrival time") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    if stats.ccdf:
        xs = [d for d, _ in stats.ccdf]
        ys = [f for _, f in stats.ccdf]
        ax.step(xs, ys, where="post")
        ax.set_xscale("symlog")
        ax.set_yscale("log")
    ax.set_xlabel("inter-arrival time (days)")
    ax.set_ylabel("P(IAT ≥ x)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_temporal_bins(bins: Sequence[TemporalBin], path: str, company: str = "") -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = [b.start for b in bins]
    ys = [b.brand_cons_scr for b in bins]
    ax.plot(xs, ys, marker="o")
    ax.axhline(0.5, linestyle="--", linewidth=1, color="grey")
    ax.set_ylim(-0.05, 1.05)
    ax.set_ylabel("consistency score")
    ax.set_xlabel("bin start")
    title = "Temporal brand consistency"
    if company:
        title += f" — {company}"
    ax.set_title(title)
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_metric_bars(rows, path: str) -> None:
    """Grouped bars: one group per metric, one bar per ranking method."""
    metrics = ["rouge1", "rouge2", "rougeL", "prec1", "prec2", "prec3"]
    fig, ax = plt.subplots(figsize=(9, 4.5))
    n_methods = len(rows)
    width = 0.8 / max(n_methods, 1)
    for i, row in enumerate(rows):
        values = [getattr(row, m) for m in metrics]
        offsets = [j + i * width for j in range(len(metrics))]
        ax.bar(offsets, values, width=width, label=row.method)
    ax.set_xticks([j + 0.4 - width / 2 for j in range(len(metrics))])
    ax.set_xticklabels(metrics)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("mean score")
    ax.set_title("Ranking method comparison")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
