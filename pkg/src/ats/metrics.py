"""Evaluation metrics for ordinal prediction.

Regression and classification runs are scored with the same suite: raw
scores feed Pearson correlation, converted labels feed accuracy, averaged
precision/recall/F1, and quadratic weighted kappa.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .core import LabelSpec, Prediction, TaskKind, label_to_score
from .errors import AtsError

log = logging.getLogger(__name__)

METRIC_NAMES = (
    "accuracy",
    "precision_micro",
    "recall_micro",
    "f1_micro",
    "precision_macro",
    "recall_macro",
    "f1_macro",
    "pearson",
    "qwk",
)


@dataclass(frozen=True)
class MetricReport:
    values: dict[str, float]
    n: int

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def lines(self) -> list[str]:
        """Text rendering: ``name: value`` with 4 decimals, canonical order."""
        out = [f"{name}: {self.values[name]:.4f}" for name in METRIC_NAMES if name in self.values]
        out.append(f"n: {self.n}")
        return out


def _check_lengths(preds, golds) -> None:
    if len(preds) != len(golds):
        raise AtsError("LengthMismatch", f"{len(preds)} predictions vs {len(golds)} golds")
    if len(preds) == 0:
        raise AtsError("EmptyEval", "nothing to evaluate")


def accuracy(preds, golds) -> float:
    _check_lengths(preds, golds)
    return sum(1 for p, g in zip(preds, golds) if p == g) / len(preds)


def prf1(preds, golds, averaging: str = "macro") -> tuple[float, float, float]:
    """Precision, recall, F1 with micro or macro averaging.

    Macro averages per-class scores over classes present in golds or
    preds; per-class precision or recall with a zero denominator counts as
    0. Micro pools TP/FP/FN over all classes.
    """
    _check_lengths(preds, golds)
    if averaging not in ("micro", "macro"):
        raise AtsError("BadParam", f"averaging must be micro or macro, got {averaging!r}")
    classes = sorted(set(golds) | set(preds))
    tp = {c: 0 for c in classes}
    fp = {c: 0 for c in classes}
    fn = {c: 0 for c in classes}
    for p, g in zip(preds, golds):
        if p == g:
            tp[p] += 1
        else:
            fp[p] += 1
            fn[g] += 1

    def ratio(num: int, den: int) -> float:
        return num / den if den else 0.0

    def f_score(p: float, r: float) -> float:
        if p == r:  # harmonic mean of equals, kept exact in floats
            return p
        return 2 * p * r / (p + r) if p + r else 0.0

    if averaging == "micro":
        tp_sum = sum(tp.values())
        precision = ratio(tp_sum, tp_sum + sum(fp.values()))
        recall = ratio(tp_sum, tp_sum + sum(fn.values()))
        return precision, recall, f_score(precision, recall)

    per_p = [ratio(tp[c], tp[c] + fp[c]) for c in classes]
    per_r = [ratio(tp[c], tp[c] + fn[c]) for c in classes]
    per_f = [f_score(p, r) for p, r in zip(per_p, per_r)]
    k = len(classes)
    return sum(per_p) / k, sum(per_r) / k, sum(per_f) / k


def pearson(xs, ys) -> float:
    """Pearson's correlation; errors on constant input rather than NaN."""
    if len(xs) != len(ys):
        raise AtsError("LengthMismatch", f"{len(xs)} vs {len(ys)} values")
    if len(xs) < 2:
        raise AtsError("EmptyEval", "pearson needs at least two points")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    dxx = sum((x - mx) ** 2 for x in xs)
    dyy = sum((y - my) ** 2 for y in ys)
    if dxx == 0.0 or dyy == 0.0:
        raise AtsError("ZeroVariance", "pearson undefined for a constant sequence")
    dxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return dxy / math.sqrt(dxx * dyy)


def qwk(preds, golds, spec: LabelSpec) -> float:
    """Quadratic weighted kappa over the spec's K labels.

    Observed counts O are indexed (gold, pred); weights are
    ((i - j) / (K - 1))^2; expected counts come from the outer product of
    the marginals. When both sequences are one identical constant the
    expected disagreement is zero and kappa is defined as 1.
    """
    _check_lengths(preds, golds)
    k = spec.num_labels
    observed = [[0] * k for _ in range(k)]
    for p, g in zip(preds, golds):
        observed[spec.index_of(g)][spec.index_of(p)] += 1
    n = len(preds)
    gold_marginal = [sum(row) for row in observed]
    pred_marginal = [sum(observed[i][j] for i in range(k)) for j in range(k)]

    # The (K-1)^2 weight denominators cancel between numerator and
    # denominator, and scaling both sides by n leaves integer sums, so the
    # single division at the end is the only rounding step. This keeps
    # hand-checkable cases exact.
    num = 0
    den = 0
    for i in range(k):
        for j in range(k):
            w = (i - j) * (i - j)
            num += w * observed[i][j]
            den += w * gold_marginal[i] * pred_marginal[j]
    if den == 0:
        return 1.0
    return 1.0 - (n * num) / den


def evaluate_all(
    preds: list[Prediction],
    golds: list[int],
    task: TaskKind,
    spec: LabelSpec,
) -> MetricReport:
    """Full metric suite over predictions, via the score/label converter.

    Regression runs correlate raw scores with gold labels and score the
    converted labels with the classification metrics; classification runs
    correlate the label embeddings. An undefined Pearson (constant input)
    is logged and omitted rather than failing the evaluation.
    """
    _check_lengths(preds, golds)
    for g in golds:
        if not spec.contains(g):
            raise AtsError("LabelOutOfRange", f"gold label {g} outside [{spec.lo}, {spec.hi}]")
    pred_labels = [p.label for p in preds]
    if task is TaskKind.REGRESSION:
        xs = [p.score for p in preds]
    else:
        xs = [label_to_score(p.label, spec) for p in preds]
    ys = [label_to_score(g, spec) for g in golds]

    values: dict[str, float] = {}
    values["accuracy"] = accuracy(pred_labels, golds)
    p_mi, r_mi, f_mi = prf1(pred_labels, golds, "micro")
    p_ma, r_ma, f_ma = prf1(pred_labels, golds, "macro")
    values.update(
        precision_micro=p_mi,
        recall_micro=r_mi,
        f1_micro=f_mi,
        precision_macro=p_ma,
        recall_macro=r_ma,
        f1_macro=f_ma,
    )
    try:
        values["pearson"] = pearson(xs, ys)
    except AtsError as e:
        if e.code not in ("ZeroVariance", "EmptyEval"):
            raise
        log.warning("pearson omitted: %s", e)
    values["qwk"] = qwk(pred_labels, golds, spec)
    return MetricReport(values, len(golds))
