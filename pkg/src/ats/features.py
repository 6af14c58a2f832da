"""Feature extractors over token lists, composed into a pipeline.

A pipeline owns the tokenizer, an ordered list of extractors, and an
optional standardizer fitted on training data. Extraction is pure: the
same fitted pipeline and text always produce the same vector, and feature
order/names are stable across save/load so attributions stay aligned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AtsError
from .lingproc import Tokenizer, UnigramTable, VectorTable


@dataclass(frozen=True)
class FeatureVector:
    """Extracted numeric features with their aligned names."""

    values: tuple[float, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.values) != len(self.names):
            raise AtsError("DimMismatch", "feature values and names lengths differ")
        for name, v in zip(self.names, self.values):
            if not math.isfinite(v):
                raise AtsError("NonFiniteScore", f"feature {name!r} is not finite: {v!r}")


def token_count(tokens: list[str]) -> float:
    return float(len(tokens))


def avg_token_length(tokens: list[str]) -> float:
    """Mean per-token character count (Unicode scalar values); 0.0 if empty."""
    if not tokens:
        return 0.0
    return sum(len(t) for t in tokens) / len(tokens)


def avg_unigram_loglik(tokens: list[str], table: UnigramTable) -> float:
    """Mean natural-log probability of the tokens; ln(unk) if empty."""
    if not tokens:
        return math.log(table.unk_prob)
    return sum(math.log(table.prob(t)) for t in tokens) / len(tokens)


def doc_embedding(tokens: list[str], vt: VectorTable) -> list[float]:
    """Mean vector of in-vocabulary tokens; zero vector if none are known."""
    acc = [0.0] * vt.dim
    n = 0
    for t in tokens:
        vec = vt.vectors.get(t)
        if vec is None:
            continue
        for i, v in enumerate(vec):
            acc[i] += v
        n += 1
    if n == 0:
        return acc
    return [a / n for a in acc]


@dataclass(frozen=True)
class Extractor:
    """One configured extractor: a type name plus its loaded resource."""

    type: str
    table: UnigramTable | None = None
    vectors: VectorTable | None = None

    def __post_init__(self):
        if self.type not in EXTRACTOR_TYPES:
            raise AtsError(
                "UnknownType",
                f"unknown feature type {self.type!r}; valid: {', '.join(sorted(EXTRACTOR_TYPES))}",
            )
        if self.type == "unigram_likelihood" and self.table is None:
            raise AtsError("BadParam", "unigram_likelihood needs a unigram table")
        if self.type == "doc_embedding" and self.vectors is None:
            raise AtsError("BadParam", "doc_embedding needs a vector table")

    @property
    def dim(self) -> int:
        return self.vectors.dim if self.type == "doc_embedding" else 1

    def names(self) -> list[str]:
        if self.type == "doc_embedding":
            return [f"doc_embedding_{i}" for i in range(self.vectors.dim)]
        return [self.type]

    def values(self, tokens: list[str]) -> list[float]:
        if self.type == "token_count":
            return [token_count(tokens)]
        if self.type == "avg_token_length":
            return [avg_token_length(tokens)]
        if self.type == "unigram_likelihood":
            return [avg_unigram_loglik(tokens, self.table)]
        return doc_embedding(tokens, self.vectors)


EXTRACTOR_TYPES = ("token_count", "avg_token_length", "unigram_likelihood", "doc_embedding")


@dataclass(frozen=True)
class Standardizer:
    """Per-dimension means and population standard deviations.

    Constant features are stored with std 0 and divided by 1 at apply time.
    Population (not sample) deviation, so saved artifacts reproduce exactly.
    """

    means: tuple[float, ...]
    stds: tuple[float, ...]

    def __post_init__(self):
        if len(self.means) != len(self.stds):
            raise AtsError("DimMismatch", "means and stds lengths differ")

    def apply(self, values: list[float]) -> list[float]:
        if len(values) != len(self.means):
            raise AtsError("DimMismatch", f"expected {len(self.means)} features, got {len(values)}")
        return [
            (v - m) / (s if s > 0.0 else 1.0)
            for v, m, s in zip(values, self.means, self.stds)
        ]


def fit_standardizer(matrix: list[list[float]]) -> Standardizer:
    """Column means and population stds of a feature matrix."""
    if not matrix:
        raise AtsError("EmptyTrainingSet", "cannot standardize zero rows")
    arr = np.asarray(matrix, dtype=float)
    means = arr.mean(axis=0)
    stds = np.sqrt(((arr - means) ** 2).mean(axis=0))
    # A column constant up to float noise must take the std=0 path, or
    # "standardizing" would divide rounding error by rounding error.
    cutoff = 1e-12 * np.maximum(1.0, np.abs(means))
    stds = np.where(stds <= cutoff, 0.0, stds)
    return Standardizer(tuple(float(m) for m in means), tuple(float(s) for s in stds))


@dataclass
class FeaturePipeline:
    """Tokenizer + ordered extractors + optional fitted standardizer.

    ``apply_standardizer`` records whether standardized values feed the
    model (linear and logistic learners) or raw values do (forests, which
    are scale-invariant). The standardizer itself is fitted either way so
    feature ablation has training means available.
    """

    tokenizer: Tokenizer
    extractors: list[Extractor]
    standardizer: Standardizer | None = None
    apply_standardizer: bool = True

    def __post_init__(self):
        if not self.extractors:
            raise AtsError("BadParam", "pipeline needs at least one extractor")
        names = self.feature_names()
        if len(names) != len(set(names)):
            raise AtsError("BadParam", f"duplicate feature names: {names}")

    def feature_names(self) -> list[str]:
        names: list[str] = []
        seen: dict[str, int] = {}
        for ex in self.extractors:
            for name in ex.names():
                # A repeated extractor type gets a numeric suffix.
                if name in seen:
                    seen[name] += 1
                    name = f"{name}_{seen[name]}"
                else:
                    seen[name] = 1
                names.append(name)
        return names

    @property
    def dim(self) -> int:
        return sum(ex.dim for ex in self.extractors)

    def raw_values(self, tokens: list[str]) -> list[float]:
        values: list[float] = []
        for ex in self.extractors:
            values.extend(ex.values(tokens))
        return values

    def extract_tokens(self, tokens: list[str]) -> list[float]:
        """Feature vector for an already tokenized text."""
        values = self.raw_values(tokens)
        if self.standardizer is not None and self.apply_standardizer:
            values = self.standardizer.apply(values)
        return values

    def extract(self, text: str) -> FeatureVector:
        """Tokenize once, run extractors in order, standardize if fitted."""
        values = self.extract_tokens(self.tokenizer.tokenize(text))
        return FeatureVector(tuple(values), tuple(self.feature_names()))

    def fit(self, texts: list[str]) -> np.ndarray:
        """Fit the standardizer on training texts and return the matrix
        actually fed to the learner (standardized or raw)."""
        raw = [self.raw_values(self.tokenizer.tokenize(t)) for t in texts]
        self.standardizer = fit_standardizer(raw)
        if self.apply_standardizer:
            return np.asarray([self.standardizer.apply(r) for r in raw], dtype=float)
        return np.asarray(raw, dtype=float)
