"""Token and feature attribution for trained profilers.

Token importance is measured by occlusion: remove one token from the
token list (no string re-parse, so each delta stays attributable to a
single token) and record how much the prediction drops. This works for
any model, differentiable or not. For classification the tracked scalar
is the probability of the class predicted on the full text; for
regression it is the score.

Feature attribution uses exact weight*value contributions for linear
models and mean-ablation (replace one feature with its training mean)
for forests and logistic models.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import TaskKind
from .errors import AtsError
from .learners import LinearModel, ridge_predict
from .profiler import Profiler

MAX_OCCLUSION_TOKENS = 2000


@dataclass(frozen=True)
class TokenAttribution:
    tokens: tuple[str, ...]
    deltas: tuple[float, ...]
    base_score: float


@dataclass(frozen=True)
class FeatureAttribution:
    names: tuple[str, ...]
    contributions: tuple[float, ...]
    base_score: float
    bias: float = 0.0


def _tracked_scalar(p: Profiler, tokens: list[str], class_index: int | None) -> float:
    pred = p.predict_tokens(tokens)
    if class_index is None:
        return pred.score
    return pred.probs[class_index]


def attribute_tokens(p: Profiler, text: str) -> TokenAttribution:
    """Leave-one-token-out deltas: positive means the token pushed the
    prediction up."""
    tokens = p.pipeline.tokenizer.tokenize(text)
    if not tokens:
        raise AtsError("NoTokens", "text has no tokens to attribute")
    if len(tokens) > MAX_OCCLUSION_TOKENS:
        raise AtsError(
            "TooManyTokens",
            f"occlusion needs one prediction per token; {len(tokens)} exceeds the "
            f"{MAX_OCCLUSION_TOKENS}-token cap",
        )
    base_pred = p.predict_tokens(tokens)
    class_index = None
    if p.task is TaskKind.CLASSIFICATION:
        class_index = p.label_spec.index_of(base_pred.label)
        base = base_pred.probs[class_index]
    else:
        base = base_pred.score
    deltas = []
    for i in range(len(tokens)):
        reduced = tokens[:i] + tokens[i + 1 :]
        deltas.append(base - _tracked_scalar(p, reduced, class_index))
    return TokenAttribution(tuple(tokens), tuple(deltas), base)


def attribute_features(p: Profiler, text: str) -> FeatureAttribution:
    """Per-feature contributions to the prediction on ``text``.

    Linear models decompose exactly: contribution_j = w_j * x_j (scaled
    into label space when the model was trained on normalized targets),
    and contributions + bias reconstruct the base score. Other models are
    attributed by replacing one feature at a time with its training mean.
    """
    names = tuple(p.pipeline.feature_names())
    tokens = p.pipeline.tokenizer.tokenize(text)
    x = p.pipeline.extract_tokens(tokens)

    if isinstance(p.model, LinearModel):
        scale = (p.label_spec.hi - p.label_spec.lo) if p.output_normalized else 1.0
        offset = p.label_spec.lo if p.output_normalized else 0.0
        contributions = tuple(w * v * scale for w, v in zip(p.model.weights, x))
        bias = p.model.bias * scale + offset
        base = ridge_predict(p.model, x) * scale + offset
        return FeatureAttribution(names, contributions, base, bias)

    base_pred = p.predict_tokens(tokens)
    class_index = None
    base = base_pred.score
    if p.task is TaskKind.CLASSIFICATION:
        class_index = p.label_spec.index_of(base_pred.label)
        base = base_pred.probs[class_index]

    std = p.pipeline.standardizer
    if std is None:
        raise AtsError("BadParam", "feature ablation needs a fitted standardizer for training means")
    contributions = []
    for j in range(len(x)):
        ablated = list(x)
        # Standardized pipelines feed the model centered values, so the
        # training mean is 0 in model space; raw pipelines use the stored mean.
        ablated[j] = 0.0 if p.pipeline.apply_standardizer else std.means[j]
        contributions.append(base - _scalar_for_features(p, ablated, class_index))
    return FeatureAttribution(names, tuple(contributions), base)


def _scalar_for_features(p: Profiler, x: list[float], class_index: int | None) -> float:
    pred = p._predict_features(x)
    if class_index is None:
        return pred.score
    return pred.probs[class_index]
