"""Figures for pair reports: PSD and PAF profiles of a sequence pair."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .sequences import paf, psd  # noqa: E402

plt.rcParams.update({
    "axes.labelsize": 10,
    "font.size": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
})


def figsize(scale: float = 1.0) -> tuple[float, float]:
    width = 6.4 * scale
    return width, width * (np.sqrt(5.0) - 1.0) / 2.0


def plot_pair_profiles(a, b, path, title: str | None = None) -> None:
    """Stacked PSD bars with the 2v line, and PAF sums below, saved to ``path``."""
    a = np.asarray(a)
    b = np.asarray(b)
    v = len(a)
    s = np.arange(v)
    pa, pb = psd(a), psd(b)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=figsize(1.2), sharex=True)
    ax1.bar(s, pa, color="C0", label="PSD A")
    ax1.bar(s, pb, bottom=pa, color="C1", label="PSD B")
    ax1.axhline(2 * v, color="k", lw=0.8, ls="--", label=f"2v = {2 * v}")
    ax1.set_ylabel("PSD")
    ax1.legend(loc="upper right", ncol=3)
    total = paf(a) + paf(b)
    ax2.stem(s, total, basefmt="k-")
    ax2.set_xlabel("shift / frequency s")
    ax2.set_ylabel("PAF A + PAF B")
    if title:
        ax1.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_counts(table: dict[int, dict[int, int]], path) -> None:
    """Log-scale counts per n, one line per alphabet size."""
    fig, ax = plt.subplots(figsize=figsize())
    ns = sorted(table)
    ks = sorted({k for row in table.values() for k in row})
    for k in ks:
        ax.semilogy(ns, [table[n][k] for n in ns], marker="o", ms=3, label=f"k={k}")
    ax.set_xlabel("n")
    ax.set_ylabel("charm bracelets")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
