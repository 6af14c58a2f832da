"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately written from first principles with plain
Python loops and its own formulations (confusion matrices as proportion
tables, pseudo-inverse regression, central finite differences), so a bug
in the library cannot hide in a shared code path.
"""

from __future__ import annotations

import math

import numpy as np


def oracle_accuracy(preds, golds) -> float:
    hits = 0
    for p, g in zip(preds, golds):
        if p == g:
            hits += 1
    return hits / len(golds)


def oracle_prf1(preds, golds, averaging: str):
    classes = sorted(set(list(preds) + list(golds)))
    stats = {}
    for c in classes:
        tp = sum(1 for p, g in zip(preds, golds) if p == c and g == c)
        fp = sum(1 for p, g in zip(preds, golds) if p == c and g != c)
        fn = sum(1 for p, g in zip(preds, golds) if p != c and g == c)
        stats[c] = (tp, fp, fn)

    def safe_div(a, b):
        return a / b if b else 0.0

    if averaging == "micro":
        tp = sum(s[0] for s in stats.values())
        fp = sum(s[1] for s in stats.values())
        fn = sum(s[2] for s in stats.values())
        p = safe_div(tp, tp + fp)
        r = safe_div(tp, tp + fn)
        return p, r, safe_div(2 * p * r, p + r)

    ps, rs, fs = [], [], []
    for tp, fp, fn in stats.values():
        p = safe_div(tp, tp + fp)
        r = safe_div(tp, tp + fn)
        ps.append(p)
        rs.append(r)
        fs.append(safe_div(2 * p * r, p + r))
    return sum(ps) / len(ps), sum(rs) / len(rs), sum(fs) / len(fs)


def oracle_pearson(xs, ys) -> float:
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    var_x = sum((x - mean_x) ** 2 for x in xs)
    var_y = sum((y - mean_y) ** 2 for y in ys)
    return cov / math.sqrt(var_x * var_y)


def oracle_qwk(preds, golds, lo: int, hi: int) -> float:
    """Kappa from proportion tables (the count formulation cancels n)."""
    k = hi - lo + 1
    n = len(golds)
    observed = [[0.0] * k for _ in range(k)]
    for p, g in zip(preds, golds):
        observed[g - lo][p - lo] += 1.0 / n
    gold_hist = [sum(observed[i][j] for j in range(k)) for i in range(k)]
    pred_hist = [sum(observed[i][j] for i in range(k)) for j in range(k)]
    num = 0.0
    den = 0.0
    for i in range(k):
        for j in range(k):
            w = ((i - j) ** 2) / ((k - 1) ** 2)
            num += w * observed[i][j]
            den += w * gold_hist[i] * pred_hist[j]
    if den == 0.0:
        return 1.0
    return 1.0 - num / den


def oracle_least_squares(X, y):
    """Unregularized least squares via pseudo-inverse on [X | 1]."""
    X = np.asarray(X, dtype=float)
    aug = np.hstack([X, np.ones((X.shape[0], 1))])
    coef = np.linalg.pinv(aug) @ np.asarray(y, dtype=float)
    return coef[:-1], float(coef[-1])


def finite_diff_grad(f, params: np.ndarray, eps: float = 1e-5) -> np.ndarray:
    """Central finite differences of a scalar function of a flat vector."""
    grad = np.zeros_like(params)
    for i in range(params.size):
        bumped = params.copy()
        bumped[i] += eps
        hi = f(bumped)
        bumped[i] -= 2 * eps
        lo = f(bumped)
        grad[i] = (hi - lo) / (2 * eps)
    return grad


def oracle_laplace_table(tokens: list[str]) -> tuple[dict[str, float], float]:
    """Add-one smoothing computed by direct counting."""
    counts: dict[str, int] = {}
    for t in tokens:
        counts[t] = counts.get(t, 0) + 1
    denom = len(tokens) + len(counts) + 1
    return {t: (c + 1) / denom for t, c in counts.items()}, 1.0 / denom
