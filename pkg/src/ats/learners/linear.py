"""Ridge linear regression and multinomial logistic regression.

Ridge is solved exactly by normal equations on centered data (bias left
unpenalized); logistic is trained by deterministic full-batch gradient
descent from zero initialization, so identical inputs give identical
models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AtsError


@dataclass(frozen=True)
class LinearModel:
    weights: tuple[float, ...]
    bias: float
    l2: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.weights)


def ridge_fit(X, y, l2: float = 0.0) -> LinearModel:
    """Minimize sum((y - Xw - b)^2) + l2 * ||w||^2, bias unpenalized.

    Centering X and y makes the bias drop out of the normal equations:
    (Xc'Xc + l2*I) w = Xc'yc, then b = mean(y) - mean(X) . w. The system
    matrix is symmetric positive definite whenever l2 > 0 or X has full
    column rank; a failed Cholesky factorization therefore signals a
    singular unregularized system.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise AtsError("DimMismatch", f"X {X.shape} incompatible with y {y.shape}")
    if X.shape[0] < 1:
        raise AtsError("EmptyTrainingSet", "ridge_fit needs at least one row")
    if not (np.isfinite(X).all() and np.isfinite(y).all()):
        raise AtsError("NonFiniteScore", "training data contains non-finite values")
    if l2 < 0:
        raise AtsError("BadParam", f"l2 must be >= 0, got {l2}")

    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    Xc = X - x_mean
    yc = y - y_mean
    A = Xc.T @ Xc + l2 * np.eye(X.shape[1])
    rhs = Xc.T @ yc
    singular = AtsError(
        "SingularSystem",
        "normal equations are singular; set l2 > 0 or drop collinear features",
    )
    try:
        np.linalg.cholesky(A)  # PD check; fails on rank-deficient X with l2=0
        w = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError:
        raise singular
    scale = max(1.0, float(np.abs(rhs).max(initial=0.0)))
    if not np.allclose(A @ w, rhs, rtol=1e-6, atol=1e-8 * scale):
        raise singular
    b = y_mean - float(x_mean @ w)
    return LinearModel(tuple(float(v) for v in w), b, l2)


def ridge_predict(m: LinearModel, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (m.dim,):
        raise AtsError("DimMismatch", f"expected {m.dim} features, got {x.shape}")
    return float(np.dot(m.weights, x) + m.bias)


@dataclass(frozen=True)
class LogisticModel:
    """K-class softmax classifier: P(k | x) = softmax(Wx + b)_k."""

    weight_matrix: tuple[tuple[float, ...], ...]  # K x d
    biases: tuple[float, ...]  # K

    @property
    def num_classes(self) -> int:
        return len(self.biases)

    @property
    def dim(self) -> int:
        return len(self.weight_matrix[0])


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def logistic_loss_grad(W: np.ndarray, b: np.ndarray, X: np.ndarray, labels: np.ndarray, l2: float):
    """Mean cross-entropy + (l2/2)*||W||^2 with analytic gradients.

    Returns (loss, grad_W, grad_b). Exposed separately so the gradient can
    be checked against finite differences.
    """
    n = X.shape[0]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        probs = _softmax(X @ W.T + b)
        p_true = probs[np.arange(n), labels]  # fancy indexing copies
        # log(0) -> -inf on purpose: the trainer reports that as divergence
        loss = -np.log(p_true).mean() + 0.5 * l2 * float((W**2).sum())
    delta = probs
    delta[np.arange(n), labels] -= 1.0
    grad_W = delta.T @ X / n + l2 * W
    grad_b = delta.mean(axis=0)
    return float(loss), grad_W, grad_b


def logistic_fit(
    X,
    labels,
    num_classes: int,
    lr: float = 0.1,
    epochs: int = 2000,
    l2: float = 1e-4,
) -> LogisticModel:
    """Full-batch gradient descent from zero-initialized parameters.

    Emits a model even if some class never appears in the labels (its row
    just trends negative); diverging loss raises instead of returning junk.
    """
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if X.ndim != 2 or labels.ndim != 1 or X.shape[0] != labels.shape[0]:
        raise AtsError("DimMismatch", f"X {X.shape} incompatible with labels {labels.shape}")
    if X.shape[0] < 1:
        raise AtsError("EmptyTrainingSet", "logistic_fit needs at least one row")
    if num_classes < 2:
        raise AtsError("BadParam", f"num_classes must be >= 2, got {num_classes}")
    if labels.min() < 0 or labels.max() >= num_classes:
        raise AtsError("LabelOutOfRange", "labels must lie in [0, num_classes)")

    W = np.zeros((num_classes, X.shape[1]))
    b = np.zeros(num_classes)
    for _ in range(epochs):
        loss, grad_W, grad_b = logistic_loss_grad(W, b, X, labels, l2)
        if not np.isfinite(loss):
            raise AtsError("Diverged", f"loss became non-finite; lower lr (was {lr})")
        W -= lr * grad_W
        b -= lr * grad_b
    return LogisticModel(
        tuple(tuple(float(v) for v in row) for row in W),
        tuple(float(v) for v in b),
    )


def logistic_predict_proba(m: LogisticModel, x) -> list[float]:
    """Class probabilities, numerically stabilized by max-subtraction."""
    x = np.asarray(x, dtype=float)
    if x.shape != (m.dim,):
        raise AtsError("DimMismatch", f"expected {m.dim} features, got {x.shape}")
    logits = np.asarray(m.weight_matrix) @ x + np.asarray(m.biases)
    return [float(p) for p in _softmax(logits)]
