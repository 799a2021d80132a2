"""Figure rendering for dataset scatter views and count growth.

The absolute-invariant coordinates blow up quickly, so scatter plots use the
signed-log map s(x) = sign(x) * log(1 + |x|).  Figures are written as SVG.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .dataset import Dataset, record_class  # noqa: E402

CLASS_COLORS = {"L3": "tab:red", "L2": "tab:blue", "L5": "tab:green",
                "other": "tab:gray"}


def signed_log(x: float) -> float:
    return math.copysign(math.log1p(abs(x)), x)


def plot_dataset(dataset: Dataset, path, scheme: str = "3class",
                 max_points: int | None = None) -> int:
    """Pairwise scatter panels of the key triple in signed-log coordinates.

    Returns the number of records drawn.
    """
    coords: dict[str, list[tuple[float, float, float]]] = {}
    for rec in dataset:
        label = record_class(rec, scheme)
        if label is None:
            continue
        triple = tuple(signed_log(float(t)) for t in rec.key.as_tuple())
        coords.setdefault(label, []).append(triple)
        if max_points and sum(len(v) for v in coords.values()) >= max_points:
            break

    fig, axes = plt.subplots(1, 3, figsize=(13, 4.2))
    pairs = ((0, 1), (0, 2), (1, 2))
    names = ("t1", "t2", "t3")
    for ax, (i, j) in zip(axes, pairs):
        for label, pts in sorted(coords.items()):
            xs = [p[i] for p in pts]
            ys = [p[j] for p in pts]
            ax.scatter(xs, ys, s=4, alpha=0.5, label=label,
                       color=CLASS_COLORS.get(label, "black"))
        ax.set_xlabel(f"slog {names[i]}")
        ax.set_ylabel(f"slog {names[j]}")
    drawn = sum(len(v) for v in coords.values())
    if coords:
        axes[0].legend(loc="best", markerscale=3)
    fig.suptitle("moduli points in signed-log absolute-invariant coordinates")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return drawn


def plot_counts(counts: dict[int, int], path) -> None:
    """Log-scale growth of the point counts by height bound."""
    fig, ax = plt.subplots(figsize=(6, 4))
    hs = sorted(counts)
    ax.semilogy(hs, [counts[h] for h in hs], "o-")
    ax.set_xlabel("height bound")
    ax.set_ylabel("classes")
    ax.set_title("bounded-height point counts")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
