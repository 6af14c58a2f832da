"""Artifact serialization: a self-contained, relocatable model directory.

Layout (format version "1"):

    config.yaml     verbatim training config
    pipeline.json   tokenizer, extractors, standardizer, feature names
    model.json      task, label range, trained model parameters
    resources/      unigram tables / vector files the pipeline needs
    manifest.json   format version, creation time, sha256 per file

Resources are re-serialized from memory into the artifact, so loading
never needs the original training files. All paths inside the artifact
are relative, making the directory safe to move or copy. Numbers are
written as shortest round-trip decimals, so a load/save cycle preserves
predictions bit for bit.
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path

from .core import LabelSpec, TaskKind
from .errors import AtsError
from .features import Extractor, FeaturePipeline, Standardizer
from .learners import Forest, ForestConfig, LinearModel, LogisticModel, Tree, TreeNode
from .lingproc import (
    Tokenizer,
    UnigramTable,
    VectorTable,
    load_unigram_table,
    load_word_vectors,
    save_unigram_table,
    save_word_vectors,
)
from .profiler import Profiler

FORMAT_VERSION = "1"


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _model_to_json(model) -> dict:
    if isinstance(model, LinearModel):
        return {"kind": "ridge", "weights": list(model.weights), "bias": model.bias, "l2": model.l2}
    if isinstance(model, LogisticModel):
        return {
            "kind": "logistic",
            "weight_matrix": [list(row) for row in model.weight_matrix],
            "biases": list(model.biases),
        }
    if isinstance(model, Forest):
        cfg = model.config
        return {
            "kind": "forest",
            "mode": model.mode,
            "num_classes": model.num_classes,
            "dim": model.dim,
            # n_jobs is a runtime knob, not model state: parallel and
            # sequential builds must serialize identically.
            "params": {
                "n_estimators": cfg.n_estimators,
                "max_depth": cfg.max_depth,
                "seed": cfg.seed,
                "min_samples_split": cfg.min_samples_split,
                "features_per_split": cfg.features_per_split,
            },
            "trees": [
                [
                    [n.feature, n.threshold, n.left, n.right, n.value,
                     list(n.counts) if n.counts is not None else None]
                    for n in tree.nodes
                ]
                for tree in model.trees
            ],
        }
    raise AtsError("BadParam", f"cannot serialize model {type(model).__name__}")


def _model_from_json(doc: dict):
    kind = doc["kind"]
    if kind == "ridge":
        return LinearModel(tuple(doc["weights"]), doc["bias"], doc["l2"])
    if kind == "logistic":
        return LogisticModel(
            tuple(tuple(row) for row in doc["weight_matrix"]),
            tuple(doc["biases"]),
        )
    if kind == "forest":
        p = doc["params"]
        cfg = ForestConfig(
            n_estimators=p["n_estimators"],
            max_depth=p["max_depth"],
            mode=doc["mode"],
            seed=p["seed"],
            min_samples_split=p["min_samples_split"],
            features_per_split=p["features_per_split"],
        )
        trees = tuple(
            Tree(
                tuple(
                    TreeNode(
                        feature=n[0],
                        threshold=n[1],
                        left=n[2],
                        right=n[3],
                        value=n[4],
                        counts=tuple(n[5]) if n[5] is not None else None,
                    )
                    for n in nodes
                )
            )
            for nodes in doc["trees"]
        )
        return Forest(trees, doc["mode"], cfg, num_classes=doc["num_classes"], dim=doc["dim"])
    raise AtsError("CorruptArtifact", f"unknown model kind {kind!r}")


def save_artifact(p: Profiler, directory: str | Path) -> Path:
    """Write a profiler to ``directory``, returning the manifest path."""
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    (root / "resources").mkdir(exist_ok=True)

    (root / "config.yaml").write_text(p.config_text or "", encoding="utf-8")

    extractors_doc = []
    for i, ex in enumerate(p.pipeline.extractors):
        entry: dict = {"type": ex.type}
        if ex.table is not None:
            rel = f"resources/unigram_{i}.tsv"
            save_unigram_table(ex.table, root / rel)
            entry["resource"] = rel
        if ex.vectors is not None:
            rel = f"resources/vectors_{i}.txt"
            save_word_vectors(ex.vectors, root / rel)
            entry["resource"] = rel
        extractors_doc.append(entry)

    std = p.pipeline.standardizer
    _dump_json(
        {
            "tokenizer": {
                "kind": p.pipeline.tokenizer.kind,
                "lowercase": p.pipeline.tokenizer.lowercase,
            },
            "extractors": extractors_doc,
            "standardizer": {"means": list(std.means), "stds": list(std.stds)} if std else None,
            "apply_standardizer": p.pipeline.apply_standardizer,
            "feature_names": p.pipeline.feature_names(),
        },
        root / "pipeline.json",
    )

    _dump_json(
        {
            "task": p.task.value,
            "label_spec": {"lo": p.label_spec.lo, "hi": p.label_spec.hi},
            "output_normalized": p.output_normalized,
            "model": _model_to_json(p.model),
        },
        root / "model.json",
    )

    files = ["config.yaml", "pipeline.json", "model.json"] + [
        e["resource"] for e in extractors_doc if "resource" in e
    ]
    manifest = {
        "format_version": FORMAT_VERSION,
        "created": datetime.now(timezone.utc).isoformat(),
        "files": {rel: _sha256(root / rel) for rel in sorted(files)},
    }
    _dump_json(manifest, root / "manifest.json")
    return root / "manifest.json"


def load_artifact(directory: str | Path) -> Profiler:
    """Load a profiler, verifying the manifest first."""
    root = Path(directory)
    manifest_path = root / "manifest.json"
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        version = manifest["format_version"]
        files = manifest["files"]
    except FileNotFoundError:
        raise AtsError("CorruptArtifact", f"no manifest.json in {root}")
    except (json.JSONDecodeError, KeyError, TypeError):
        raise AtsError("CorruptArtifact", f"unreadable manifest in {root}")
    if version != FORMAT_VERSION:
        raise AtsError("UnsupportedVersion", f"artifact format {version!r}, expected {FORMAT_VERSION!r}")
    for rel, expected in files.items():
        target = root / rel
        if not target.is_file():
            raise AtsError("CorruptArtifact", f"missing artifact file {rel}")
        if _sha256(target) != expected:
            raise AtsError("CorruptArtifact", f"checksum mismatch for {rel}")

    try:
        pipeline_doc = json.loads((root / "pipeline.json").read_text(encoding="utf-8"))
        model_doc = json.loads((root / "model.json").read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        raise AtsError("CorruptArtifact", f"unreadable JSON in {root}")

    extractors = []
    for entry in pipeline_doc["extractors"]:
        ftype = entry["type"]
        table: UnigramTable | None = None
        vectors: VectorTable | None = None
        if ftype == "unigram_likelihood":
            table = load_unigram_table(root / entry["resource"])
        elif ftype == "doc_embedding":
            vectors = load_word_vectors(root / entry["resource"])
        extractors.append(Extractor(ftype, table=table, vectors=vectors))

    std_doc = pipeline_doc["standardizer"]
    pipeline = FeaturePipeline(
        tokenizer=Tokenizer(
            pipeline_doc["tokenizer"]["kind"], pipeline_doc["tokenizer"]["lowercase"]
        ),
        extractors=extractors,
        standardizer=Standardizer(tuple(std_doc["means"]), tuple(std_doc["stds"])) if std_doc else None,
        apply_standardizer=pipeline_doc["apply_standardizer"],
    )

    config_text = (root / "config.yaml").read_text(encoding="utf-8") or None
    return Profiler(
        task=TaskKind(model_doc["task"]),
        pipeline=pipeline,
        model=_model_from_json(model_doc["model"]),
        label_spec=LabelSpec(model_doc["label_spec"]["lo"], model_doc["label_spec"]["hi"]),
        output_normalized=model_doc["output_normalized"],
        config_text=config_text,
    )
