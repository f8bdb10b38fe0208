"""Figures for benchmark records."""

from __future__ import annotations

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_records(records, path, title=None):
    """One panel per refuter kind: measured length and bound against n."""
    series = defaultdict(list)
    for r in records:
        series[r.refuter].append(r)
    kinds = sorted(series)
    fig, axes = plt.subplots(1, len(kinds), figsize=(3.6 * len(kinds), 3.2), squeeze=False)
    for ax, kind in zip(axes[0], kinds):
        rows = sorted(series[kind], key=lambda r: r.n)
        ns = [r.n for r in rows]
        ax.plot(ns, [r.length for r in rows], "o-", label="length")
        ax.plot(ns, [r.bound for r in rows], "s--", label="bound")
        ax.set_title(kind)
        ax.set_xlabel("n")
        ax.set_xticks(ns)
        ax.grid(alpha=0.3)
    axes[0][0].set_ylabel("letters")
    axes[0][0].legend()
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
