"""Random forest built on greedy CART trees, regression and classification.

Determinism is a hard contract here: every tree draws its bootstrap sample
and per-node feature subsets from its own SplitMix64 stream seeded with
``seed + tree_index``, so building trees in parallel yields bit-identical
forests to a sequential build.

Split search at a node:
  * candidate thresholds are midpoints between consecutive sorted unique
    values of a feature,
  * the split score is the size-weighted child impurity (sum of squared
    errors for regression, Gini for classification),
  * ties break to the lowest feature index, then the lowest threshold,
    which the ascending scan order gives for free.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import AtsError
from ..prng import SplitMix64

REGRESSION = "regression"
CLASSIFICATION = "classification"


@dataclass(frozen=True)
class TreeNode:
    """Internal node (feature, threshold, children) or leaf (payload).

    Leaves carry the mean target in regression mode and per-class counts
    in classification mode. Rows with value <= threshold go left.
    """

    feature: int = -1
    threshold: float = 0.0
    left: int = -1
    right: int = -1
    value: float = 0.0
    counts: tuple[int, ...] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.feature < 0


@dataclass(frozen=True)
class Tree:
    nodes: tuple[TreeNode, ...]

    def leaf_for(self, x: np.ndarray) -> TreeNode:
        node = self.nodes[0]
        while not node.is_leaf:
            node = self.nodes[node.left if x[node.feature] <= node.threshold else node.right]
        return node


@dataclass(frozen=True)
class ForestConfig:
    n_estimators: int = 100
    max_depth: int = 5
    mode: str = REGRESSION
    seed: int = 42
    min_samples_split: int = 2
    features_per_split: int | None = None  # None: d/3 regression, sqrt(d) classification
    n_jobs: int = 1

    def __post_init__(self):
        if self.mode not in (REGRESSION, CLASSIFICATION):
            raise AtsError("BadParam", f"mode must be regression or classification, got {self.mode!r}")
        if self.n_estimators < 1:
            raise AtsError("BadParam", "n_estimators must be >= 1")
        if self.max_depth < 0:
            raise AtsError("BadParam", "max_depth must be >= 0")
        if self.min_samples_split < 2:
            raise AtsError("BadParam", "min_samples_split must be >= 2")

    def resolved_features_per_split(self, d: int) -> int:
        if self.features_per_split is not None:
            return max(1, min(self.features_per_split, d))
        if self.mode == REGRESSION:
            return max(1, d // 3)
        return max(1, int(math.isqrt(d)))


@dataclass(frozen=True)
class Forest:
    trees: tuple[Tree, ...]
    mode: str
    config: ForestConfig
    num_classes: int = 0  # classification only
    dim: int = 0


def _best_split_regression(vals: np.ndarray, y: np.ndarray):
    """Best (threshold, score) for one feature, or None if unsplittable."""
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    sy = y[order]
    # positions where the sorted value changes: split between i-1 and i
    change = np.nonzero(sv[1:] != sv[:-1])[0] + 1
    if change.size == 0:
        return None
    csum = np.cumsum(sy)
    csq = np.cumsum(sy * sy)
    n = sy.size
    total_sum, total_sq = csum[-1], csq[-1]
    n_left = change.astype(float)
    sum_left = csum[change - 1]
    sq_left = csq[change - 1]
    sse_left = sq_left - sum_left * sum_left / n_left
    n_right = n - n_left
    sum_right = total_sum - sum_left
    sq_right = total_sq - sq_left
    sse_right = sq_right - sum_right * sum_right / n_right
    scores = sse_left + sse_right
    best = int(np.argmin(scores))  # first minimum = lowest threshold on ties
    pos = change[best]
    threshold = (sv[pos - 1] + sv[pos]) / 2.0
    return float(threshold), float(scores[best])


def _best_split_classification(vals: np.ndarray, y: np.ndarray, num_classes: int):
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    sy = y[order]
    change = np.nonzero(sv[1:] != sv[:-1])[0] + 1
    if change.size == 0:
        return None
    onehot = np.zeros((sy.size, num_classes))
    onehot[np.arange(sy.size), sy] = 1.0
    ccounts = np.cumsum(onehot, axis=0)
    total = ccounts[-1]
    n = sy.size
    left = ccounts[change - 1]  # (n_splits, K)
    right = total - left
    n_left = change.astype(float)
    n_right = n - n_left
    # weighted Gini: n_side * (1 - sum(p^2)) = n_side - sum(count^2)/n_side
    gini_left = n_left - (left * left).sum(axis=1) / n_left
    gini_right = n_right - (right * right).sum(axis=1) / n_right
    scores = gini_left + gini_right
    best = int(np.argmin(scores))
    pos = change[best]
    threshold = (sv[pos - 1] + sv[pos]) / 2.0
    return float(threshold), float(scores[best])


def _grow_tree(X: np.ndarray, y: np.ndarray, cfg: ForestConfig, num_classes: int, rng: SplitMix64) -> Tree:
    """Depth-first CART growth over a bootstrap sample already in X, y."""
    d = X.shape[1]
    m = cfg.resolved_features_per_split(d)
    nodes: list[TreeNode] = []

    def make_leaf(rows: np.ndarray) -> int:
        if cfg.mode == REGRESSION:
            nodes.append(TreeNode(value=float(y[rows].mean())))
        else:
            counts = np.bincount(y[rows], minlength=num_classes)
            nodes.append(TreeNode(counts=tuple(int(c) for c in counts)))
        return len(nodes) - 1

    def is_pure(rows: np.ndarray) -> bool:
        col = y[rows]
        return bool((col == col[0]).all())

    def build(rows: np.ndarray, depth: int) -> int:
        if depth >= cfg.max_depth or rows.size < cfg.min_samples_split or is_pure(rows):
            return make_leaf(rows)
        best = None  # (score, feature, threshold)
        for f in rng.sample_indices(d, m):
            vals = X[rows, f]
            found = (
                _best_split_regression(vals, y[rows])
                if cfg.mode == REGRESSION
                else _best_split_classification(vals, y[rows], num_classes)
            )
            if found is None:
                continue
            threshold, score = found
            if best is None or score < best[0]:
                best = (score, f, threshold)
        if best is None:  # all candidate features constant on these rows
            return make_leaf(rows)
        _, feature, threshold = best
        mask = X[rows, feature] <= threshold
        left_rows = rows[mask]
        right_rows = rows[~mask]
        index = len(nodes)
        nodes.append(TreeNode())  # placeholder, replaced below
        left = build(left_rows, depth + 1)
        right = build(right_rows, depth + 1)
        nodes[index] = TreeNode(feature=feature, threshold=threshold, left=left, right=right)
        return index

    build(np.arange(X.shape[0]), 0)
    return Tree(tuple(nodes))


def _fit_one_tree(t: int, X: np.ndarray, y: np.ndarray, cfg: ForestConfig, num_classes: int) -> Tree:
    rng = SplitMix64(cfg.seed + t)
    idx = np.asarray(rng.bootstrap_indices(X.shape[0]), dtype=int)
    return _grow_tree(X[idx], y[idx], cfg, num_classes, rng)


def forest_fit(X, targets, cfg: ForestConfig, num_classes: int | None = None) -> Forest:
    """Fit ``cfg.n_estimators`` CART trees on bootstrap samples.

    Regression targets are floats; classification targets are class
    indices in [0, K), with ``num_classes`` overriding the inferred K so
    probabilities keep their full length when a class is absent from the
    training sample. ``cfg.n_jobs`` > 1 parallelizes across trees with no
    effect on the result.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1:
        raise AtsError("EmptyTrainingSet", "forest_fit needs at least one row")
    if cfg.mode == REGRESSION:
        y = np.asarray(targets, dtype=float)
        num_classes = 0
    else:
        y = np.asarray(targets, dtype=int)
        if y.size and y.min() < 0:
            raise AtsError("LabelOutOfRange", "class indices must be >= 0")
        inferred = int(y.max()) + 1 if y.size else 0
        if num_classes is None:
            num_classes = inferred
        elif num_classes < inferred:
            raise AtsError("LabelOutOfRange", f"targets need {inferred} classes, got {num_classes}")
    if y.shape[0] != X.shape[0]:
        raise AtsError("DimMismatch", f"X has {X.shape[0]} rows, targets {y.shape[0]}")

    if cfg.n_jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.n_jobs) as pool:
            trees = list(pool.map(lambda t: _fit_one_tree(t, X, y, cfg, num_classes), range(cfg.n_estimators)))
    else:
        trees = [_fit_one_tree(t, X, y, cfg, num_classes) for t in range(cfg.n_estimators)]
    return Forest(tuple(trees), cfg.mode, cfg, num_classes=num_classes, dim=X.shape[1])


def _check_dim(f: Forest, x: np.ndarray) -> None:
    if x.shape != (f.dim,):
        raise AtsError("DimMismatch", f"expected {f.dim} features, got {x.shape}")


def forest_predict(f: Forest, x) -> float:
    """Regression: mean of per-tree leaf values."""
    if f.mode != REGRESSION:
        raise AtsError("TaskModelMismatch", "forest_predict is for regression forests")
    x = np.asarray(x, dtype=float)
    _check_dim(f, x)
    return float(sum(t.leaf_for(x).value for t in f.trees) / len(f.trees))


def forest_predict_proba(f: Forest, x) -> list[float]:
    """Classification: mean of per-tree normalized leaf class counts."""
    if f.mode != CLASSIFICATION:
        raise AtsError("TaskModelMismatch", "forest_predict_proba is for classification forests")
    x = np.asarray(x, dtype=float)
    _check_dim(f, x)
    acc = np.zeros(f.num_classes)
    for t in f.trees:
        counts = np.asarray(t.leaf_for(x).counts, dtype=float)
        acc += counts / counts.sum()
    probs = acc / len(f.trees)
    return [float(p) for p in probs]
