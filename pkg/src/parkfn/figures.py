"""Matplotlib rendering of the CLI's histogram and comparison reports.

Figures are a convenience layered on top of the CSV output, which remains
the authoritative artifact; rendering always targets files via the Agg
backend so headless runs behave.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def render_histogram(
    path: Path,
    values: Sequence[int],
    counts: Sequence[int],
    title: str,
    xlabel: str,
    plateau_end: int | None = None,
) -> None:
    """Bar rendering of a value,count table; optionally marks the flat region."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(values, counts, width=1.0, color="#4878cf", edgecolor="none")
    if plateau_end is not None:
        ax.axvline(plateau_end + 0.5, color="#d65f5f", linestyle="--", linewidth=1,
                   label=f"plateau edge ({plateau_end})")
        ax.legend(frameon=False)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("count")
    ax.set_title(title)
    ax.margins(x=0.01)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_comparison(
    path: Path,
    names: Sequence[str],
    rel_errors: Sequence[float],
    title: str,
) -> None:
    """Horizontal log-scale bars of |relative error| per compared statistic."""
    fig, ax = plt.subplots(figsize=(8, 0.5 * max(len(names), 4) + 1.5))
    shown = [max(abs(e), 1e-18) for e in rel_errors]
    ax.barh(range(len(names)), shown, color="#6acc65")
    ax.set_yticks(range(len(names)), names)
    ax.set_xscale("log")
    ax.set_xlabel("|relative error| (exact vs asymptotic)")
    ax.set_title(title)
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
