"""The trainable unit: tokenizer + feature pipeline + learner.

``train`` assembles everything from a validated experiment config;
``Profiler.predict`` maps raw text to a Prediction. Regression targets
can be normalized to [0, 1] for training and are denormalized back at
predict time, so evaluation always happens in label space.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .config import ExperimentConfig, FeatureConfig
from .core import (
    Dataset,
    LabelSpec,
    Prediction,
    TaskKind,
    denormalize_score,
    label_to_score,
    normalize_score,
    score_to_label,
)
from .data import read_asap, read_tsv
from .errors import AtsError
from .features import Extractor, FeaturePipeline
from .learners import (
    Forest,
    ForestConfig,
    LinearModel,
    LogisticModel,
    forest_fit,
    forest_predict,
    forest_predict_proba,
    logistic_fit,
    logistic_predict_proba,
    ridge_fit,
    ridge_predict,
)
from .lingproc import Tokenizer, load_unigram_table, load_word_vectors

log = logging.getLogger(__name__)

_TOKENIZER_KINDS = {"whitespace": "space_punct", "char": "char"}


@dataclass
class Profiler:
    """A trained scorer: task, fitted pipeline, model, label universe."""

    task: TaskKind
    pipeline: FeaturePipeline
    model: LinearModel | LogisticModel | Forest
    label_spec: LabelSpec
    output_normalized: bool = False
    config_text: str | None = None

    def __post_init__(self):
        if self.task is TaskKind.REGRESSION:
            ok = isinstance(self.model, LinearModel) or (
                isinstance(self.model, Forest) and self.model.mode == "regression"
            )
        else:
            ok = isinstance(self.model, LogisticModel) or (
                isinstance(self.model, Forest) and self.model.mode == "classification"
            )
        if not ok:
            raise AtsError(
                "TaskModelMismatch",
                f"{type(self.model).__name__} cannot serve a {self.task.value} task",
            )

    def predict_tokens(self, tokens: list[str]) -> Prediction:
        """Prediction from an already tokenized text (used by occlusion)."""
        x = self.pipeline.extract_tokens(tokens)
        return self._predict_features(x)

    def predict(self, text: str) -> Prediction:
        return self.predict_tokens(self.pipeline.tokenizer.tokenize(text))

    def _predict_features(self, x: list[float]) -> Prediction:
        spec = self.label_spec
        if self.task is TaskKind.REGRESSION:
            if isinstance(self.model, LinearModel):
                raw = ridge_predict(self.model, x)
            else:
                raw = forest_predict(self.model, x)
            score = denormalize_score(raw, spec) if self.output_normalized else raw
            return Prediction(score=score, label=score_to_label(score, spec))
        if isinstance(self.model, LogisticModel):
            probs = logistic_predict_proba(self.model, x)
        else:
            probs = forest_predict_proba(self.model, x)
        index = max(range(len(probs)), key=probs.__getitem__)  # first max wins ties
        label = spec.lo + index
        return Prediction(score=label_to_score(label, spec), label=label, probs=tuple(probs))


def _load_resource_extractor(fc: FeatureConfig, cfg: ExperimentConfig) -> Extractor:
    if fc.type == "unigram_likelihood":
        return Extractor(fc.type, table=load_unigram_table(cfg.resolve_path(fc.params["table_path"])))
    if fc.type == "doc_embedding":
        return Extractor(fc.type, vectors=load_word_vectors(cfg.resolve_path(fc.params["vectors_path"])))
    return Extractor(fc.type)


def load_dataset(cfg: ExperimentConfig) -> Dataset:
    ds_cfg = cfg.dataset
    path = cfg.resolve_path(ds_cfg.path)
    if ds_cfg.type == "asap-aes":
        score_range = None
        if ds_cfg.lo is not None and ds_cfg.hi is not None:
            score_range = (ds_cfg.lo, ds_cfg.hi)
        return read_asap(path, ds_cfg.prompt, score_range=score_range)
    spec = None
    if ds_cfg.lo is not None and ds_cfg.hi is not None:
        spec = LabelSpec(ds_cfg.lo, ds_cfg.hi)
    return read_tsv(path, spec=spec)


def train(cfg: ExperimentConfig) -> Profiler:
    """Load data, build the pipeline, fit the learner."""
    prof = cfg.profiler
    learner = prof.learner

    expected_type = "FeatureRegressor" if cfg.task is TaskKind.REGRESSION else "FeatureClassifier"
    if prof.type != expected_type:
        raise AtsError(
            "TaskModelMismatch", f"profiler {prof.type} cannot serve a {cfg.task.value} task"
        )
    if cfg.task is TaskKind.REGRESSION and learner.type == "logistic":
        raise AtsError("TaskModelMismatch", "logistic learner cannot serve a regression task")
    if cfg.task is TaskKind.CLASSIFICATION and learner.type == "ridge":
        raise AtsError("TaskModelMismatch", "ridge learner cannot serve a classification task")
    if prof.output_normalized and cfg.task is not TaskKind.REGRESSION:
        raise AtsError("BadParam", "output_normalized requires a regression task")

    ds = load_dataset(cfg)
    spec = ds.label_spec
    labels = ds.labels()
    texts = [inst.text for inst in ds]

    # Trees are scale-invariant, so forests default to raw features.
    apply_std = prof.standardize if prof.standardize is not None else learner.type != "random_forest"
    pipeline = FeaturePipeline(
        tokenizer=Tokenizer(_TOKENIZER_KINDS[prof.tokenizer_type], prof.tokenizer_lowercase),
        extractors=[_load_resource_extractor(fc, cfg) for fc in prof.features],
        apply_standardizer=apply_std,
    )
    X = pipeline.fit(texts)
    log.info("extracted %d x %d feature matrix from %s", X.shape[0], X.shape[1], ds.name)

    if cfg.task is TaskKind.REGRESSION:
        targets = [label_to_score(l, spec) for l in labels]
        if prof.output_normalized:
            targets = [normalize_score(t, spec) for t in targets]
        if learner.type == "ridge":
            model = ridge_fit(X, targets, l2=learner.params["l2"])
        else:
            model = forest_fit(X, targets, _forest_config(learner.params, "regression", prof.seed))
    else:
        indices = [spec.index_of(l) for l in labels]
        if len(set(indices)) < spec.num_labels:
            log.warning("not every label in [%d, %d] appears in %s", spec.lo, spec.hi, ds.name)
        if learner.type == "logistic":
            model = logistic_fit(
                X,
                indices,
                num_classes=spec.num_labels,
                lr=learner.params["lr"],
                epochs=learner.params["epochs"],
                l2=learner.params["l2"],
            )
        else:
            model = forest_fit(
                X,
                indices,
                _forest_config(learner.params, "classification", prof.seed),
                num_classes=spec.num_labels,
            )

    return Profiler(
        task=cfg.task,
        pipeline=pipeline,
        model=model,
        label_spec=spec,
        output_normalized=prof.output_normalized,
        config_text=cfg.source_text,
    )


def _forest_config(params: dict, mode: str, seed: int) -> ForestConfig:
    return ForestConfig(
        n_estimators=params["n_estimators"],
        max_depth=params["max_depth"],
        mode=mode,
        seed=seed,
        min_samples_split=params["min_samples_split"],
        features_per_split=params["features_per_split"],
        n_jobs=params["n_jobs"],
    )
