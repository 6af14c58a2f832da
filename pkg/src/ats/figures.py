"""Evaluation figures rendered alongside the delimited metric output.

The evaluate command can drop two PNGs next to its text/JSON report: a
confusion matrix over the label range and a predicted-vs-gold score
scatter. Rendering uses the Agg backend so it works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .core import LabelSpec, Prediction

_ANNOTATE_MAX_CLASSES = 15


def confusion_matrix_figure(golds: list[int], pred_labels: list[int], spec: LabelSpec):
    k = spec.num_labels
    counts = np.zeros((k, k), dtype=int)
    for g, p in zip(golds, pred_labels):
        counts[g - spec.lo, p - spec.lo] += 1

    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(counts, cmap="Blues")
    ticks = list(range(k))
    tick_labels = [str(spec.lo + i) for i in ticks]
    ax.set_xticks(ticks, tick_labels)
    ax.set_yticks(ticks, tick_labels)
    ax.set_xlabel("predicted label")
    ax.set_ylabel("gold label")
    ax.set_title("Confusion matrix")
    if k <= _ANNOTATE_MAX_CLASSES:
        threshold = counts.max() / 2 if counts.max() else 0
        for i in range(k):
            for j in range(k):
                color = "white" if counts[i, j] > threshold else "black"
                ax.text(j, i, str(counts[i, j]), ha="center", va="center", color=color)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    return fig


def score_scatter_figure(golds: list[int], scores: list[float], spec: LabelSpec):
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.scatter(golds, scores, alpha=0.5, edgecolors="none")
    lo, hi = spec.lo, spec.hi
    ax.plot([lo, hi], [lo, hi], linestyle="--", linewidth=1, color="gray")
    ax.set_xlabel("gold label")
    ax.set_ylabel("predicted score")
    ax.set_title("Predicted score vs gold label")
    fig.tight_layout()
    return fig


def save_evaluation_figures(
    preds: list[Prediction],
    golds: list[int],
    spec: LabelSpec,
    outdir: str | Path,
) -> list[Path]:
    """Render both evaluation figures into ``outdir``; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    fig = confusion_matrix_figure(golds, [p.label for p in preds], spec)
    path = outdir / "confusion_matrix.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig = score_scatter_figure(golds, [p.score for p in preds], spec)
    path = outdir / "score_scatter.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
