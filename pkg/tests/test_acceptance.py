"""Acceptance suite: one test per release criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines. The
final (optional) check needs the public essay-corpus download and skips
itself when the file is absent.
"""

import json
import os
import random
import subprocess
import sys
import time
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import pytest

from ats.artifact import _model_to_json, load_artifact, save_artifact
from ats.config import parse_config
from ats.core import Dataset, Instance, LabelSpec, label_to_score, score_to_label
from ats.data import read_asap, split
from ats.errors import AtsError
from ats.features import Extractor, FeaturePipeline
from ats.learners import (
    ForestConfig,
    forest_fit,
    forest_predict,
    logistic_loss_grad,
    ridge_fit,
)
from ats.lingproc import Tokenizer, build_unigram_table
from ats.metrics import accuracy, pearson, prf1, qwk
from ats.server import InterpretApp, InterpretServer

from conftest import DATA_DIR
from oracles import (
    finite_diff_grad,
    oracle_accuracy,
    oracle_pearson,
    oracle_prf1,
    oracle_qwk,
)
from test_profiler import random_texts, token_count_identity_profiler

ASAP_PATH = Path(os.environ.get("ATS_ASAP_PATH", DATA_DIR / "asap" / "training_set_rel3.tsv"))


def test_metric_oracle_suite():
    """All metrics match the brute-force oracles within 1e-12 on 1000 cases."""
    rng = random.Random(991)
    started = time.monotonic()
    pearson_checked = 0
    for _ in range(1000):
        n = rng.randint(1, 50)
        k = rng.randint(2, 6)
        spec = LabelSpec(0, k - 1)
        golds = [rng.randrange(k) for _ in range(n)]
        preds = [rng.randrange(k) for _ in range(n)]

        assert abs(accuracy(preds, golds) - oracle_accuracy(preds, golds)) <= 1e-12
        for mode in ("micro", "macro"):
            for got, want in zip(prf1(preds, golds, mode), oracle_prf1(preds, golds, mode)):
                assert abs(got - want) <= 1e-12
        assert abs(qwk(preds, golds, spec) - oracle_qwk(preds, golds, 0, k - 1)) <= 1e-12
        if n >= 2 and len(set(golds)) > 1 and len(set(preds)) > 1:
            assert abs(pearson(preds, golds) - oracle_pearson(preds, golds)) <= 1e-12
            pearson_checked += 1
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"oracle suite took {elapsed:.2f}s"
    assert pearson_checked > 500
    print(f"\nPASS metric-oracle-suite (1000 cases, {elapsed:.2f}s)")


def test_qwk_hand_cases():
    assert qwk([0, 1, 2, 3], [0, 1, 2, 3], LabelSpec(0, 3)) == 1.0
    assert qwk([0, 2, 1], [0, 1, 2], LabelSpec(0, 2)) == 0.5
    assert qwk([1, 1, 1], [1, 1, 1], LabelSpec(0, 2)) == 1.0
    print("\nPASS qwk-hand-cases")


def test_micro_f1_equals_accuracy():
    rng = random.Random(117)
    for _ in range(100):
        n = rng.randint(1, 60)
        k = rng.randint(2, 7)
        golds = [rng.randrange(k) for _ in range(n)]
        preds = [rng.randrange(k) for _ in range(n)]
        p, r, f = prf1(preds, golds, "micro")
        acc = accuracy(preds, golds)
        assert p == acc and r == acc and f == acc
    print("\nPASS micro-f1-equals-accuracy (100 cases)")


def test_ridge_recovery_and_optimality():
    m = ridge_fit([[1.0], [2.0], [3.0]], [2.0, 4.0, 6.0], l2=0.0)
    assert abs(m.weights[0] - 2.0) < 1e-6
    assert abs(m.bias) < 1e-6

    rng = np.random.default_rng(553)
    for _ in range(50):
        d = int(rng.integers(1, 6))
        n = int(rng.integers(d + 2, 21))
        X = rng.normal(size=(n, d))
        y = rng.normal(size=n)
        l2 = float(rng.choice([0.0, 0.01, 1.0]))
        fitted = ridge_fit(X, y, l2=l2)
        w = np.asarray(fitted.weights)
        resid = X @ w + fitted.bias - y
        grad = 2 * X.T @ resid + 2 * l2 * w
        assert np.linalg.norm(grad) < 1e-6
    print("\nPASS ridge-recovery-and-optimality (50 problems)")


def test_logistic_gradient_check():
    rng = np.random.default_rng(779)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 11))
        d = int(rng.integers(1, 5))
        k = int(rng.integers(2, 4))
        X = rng.normal(size=(n, d))
        labels = rng.integers(0, k, size=n)
        l2 = float(rng.choice([0.0, 0.01]))
        W = rng.normal(size=(k, d)) * 0.5
        b = rng.normal(size=k) * 0.5
        _, grad_W, grad_b = logistic_loss_grad(W.copy(), b.copy(), X, labels, l2)
        analytic = np.concatenate([grad_W.ravel(), grad_b])

        def loss_at(flat, k=k, d=d, X=X, labels=labels, l2=l2):
            return logistic_loss_grad(flat[: k * d].reshape(k, d), flat[k * d :], X, labels, l2)[0]

        numeric = finite_diff_grad(loss_at, np.concatenate([W.ravel(), b]), eps=1e-5)
        rel = np.abs(analytic - numeric) / np.maximum(np.abs(numeric), 1e-8)
        worst = max(worst, float(rel.max()))
    assert worst < 1e-4, f"max relative gradient error {worst:.2e}"
    print(f"\nPASS logistic-gradient-check (20 problems, worst rel err {worst:.2e})")


def test_forest_determinism():
    rng = np.random.default_rng(31)
    X = rng.normal(size=(80, 4))
    y = X[:, 0] - 0.5 * X[:, 2] + rng.normal(scale=0.2, size=80)
    runs = [
        forest_fit(X, y, ForestConfig(n_estimators=16, seed=5, n_jobs=jobs))
        for jobs in (1, 1, 4, 8)
    ]
    blobs = [json.dumps(_model_to_json(f), sort_keys=True) for f in runs]
    assert len(set(blobs)) == 1
    print("\nPASS forest-determinism (sequential and parallel builds bit-identical)")


def _synthetic_monotone_corpus(n=300, seed=8):
    """Docs whose 0..4 level is a monotone function of token count + noise."""
    rng = random.Random(seed)
    vocab = ["data", "model", "train", "score", "text", "level", "word", "line"]
    instances = []
    for i in range(n):
        count = rng.randint(5, 104)
        base = min(4, (count - 5) // 20)
        noise = rng.choice([-1, 0, 0, 0, 1]) if rng.random() < 0.5 else 0
        label = min(4, max(0, base + noise))
        text = " ".join(rng.choice(vocab) for _ in range(count))
        instances.append(Instance(str(i), text, label))
    return Dataset(tuple(instances), LabelSpec(0, 4), name="synthetic")


def test_forest_sanity_monotone_corpus():
    started = time.monotonic()
    ds = _synthetic_monotone_corpus()
    train_ds, test_ds = split(ds, 0.75, seed=4)

    pipeline = FeaturePipeline(
        Tokenizer("space_punct"),
        [Extractor("token_count"), Extractor("avg_token_length")],
        apply_standardizer=False,
    )
    X = pipeline.fit([i.text for i in train_ds])
    targets = [label_to_score(i.label, ds.label_spec) for i in train_ds]
    forest = forest_fit(X, targets, ForestConfig(n_estimators=100, max_depth=5, seed=42))

    spec = ds.label_spec
    preds = []
    for inst in test_ds:
        score = forest_predict(forest, pipeline.extract_tokens(pipeline.tokenizer.tokenize(inst.text)))
        preds.append(score_to_label(score, spec))
    kappa = qwk(preds, [i.label for i in test_ds], spec)
    elapsed = time.monotonic() - started
    assert kappa >= 0.8, f"held-out QWK {kappa:.3f}"
    assert elapsed < 30.0, f"forest sanity took {elapsed:.1f}s"
    print(f"\nPASS forest-sanity (held-out QWK {kappa:.3f}, {elapsed:.1f}s)")


def test_converter_round_trip_and_monotone():
    for lo, hi in [(0, 3), (2, 12), (0, 60)]:
        spec = LabelSpec(lo, hi)
        for label in spec.labels():
            assert score_to_label(label_to_score(label, spec), spec) == label
    spec = LabelSpec(0, 4)
    grid = [-2.0 + i * (8.0 / 999) for i in range(1000)]
    labels = [score_to_label(s, spec) for s in grid]
    assert all(a <= b for a, b in zip(labels, labels[1:]))
    print("\nPASS converter-round-trip-and-monotone")


def test_config_golden():
    from test_config import GOLDEN_CONFIG

    tree = parse_config(GOLDEN_CONFIG)
    network = tree["profiler"]["params"]["network"]
    assert network["lr"] == 4e-5 and isinstance(network["lr"], float)
    assert tree["profiler"]["params"]["data_loader"]["batch_size"] == 8
    assert isinstance(tree["profiler"]["params"]["data_loader"]["batch_size"], int)
    assert network["output_normalized"] is True
    assert tree["task"] == "regression"
    assert tree["dataset"]["params"]["path"] == "/path/to/training_tsv_file"

    with pytest.raises(AtsError) as e:
        parse_config("a:\n\tb: 1\n")
    assert e.value.code == "TabIndent" and e.value.line == 2
    print("\nPASS config-golden")


def test_artifact_round_trip(toy_profiler, tmp_path):
    texts = random_texts(100, seed=77)
    before = [toy_profiler.predict(t) for t in texts]
    save_artifact(toy_profiler, tmp_path / "art")
    loaded = load_artifact(tmp_path / "art")
    after = [loaded.predict(t) for t in texts]
    assert before == after

    manifest = tmp_path / "art" / "manifest.json"
    doc = json.loads(manifest.read_text())
    first_file = sorted(doc["files"])[0]
    doc["files"][first_file] = "f" * 64
    manifest.write_text(json.dumps(doc))
    with pytest.raises(AtsError) as e:
        load_artifact(tmp_path / "art")
    assert e.value.code == "CorruptArtifact"
    print("\nPASS artifact-round-trip (100 texts bit-identical; tamper detected)")


def test_end_to_end_cli(tmp_path):
    art = tmp_path / "artifact"
    proc = subprocess.run(
        [sys.executable, "-m", "ats", "train", str(DATA_DIR / "toy.yaml"), str(art)],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert (art / "manifest.json").is_file()

    proc = subprocess.run(
        [sys.executable, "-m", "ats", "evaluate", str(art), "--input", str(DATA_DIR / "toy.tsv")],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    report = dict(line.split(": ") for line in proc.stdout.strip().splitlines())
    for key in (
        "accuracy",
        "precision_micro",
        "recall_micro",
        "f1_micro",
        "precision_macro",
        "recall_macro",
        "f1_macro",
        "pearson",
        "qwk",
    ):
        assert key in report, f"missing metric {key}"
    assert float(report["accuracy"]) >= 0.8

    stdin = "a short one\n" + "the teacher explains the lesson " * 3 + "\nx y z\n"
    proc = subprocess.run(
        [sys.executable, "-m", "ats", "predict", str(art)],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 3
    for line in lines:
        label_str, score_str = line.split("\t")
        int(label_str)
        float(score_str)
    print(f"\nPASS end-to-end-cli (train accuracy {report['accuracy']})")


def test_interpret_server_contract(toy_profiler, toy_tsv_path):
    from ats.data import read_tsv

    dataset = read_tsv(toy_tsv_path, spec=toy_profiler.label_spec)
    server = InterpretServer(InterpretApp(toy_profiler, dataset), port=0)
    server.start_background()
    try:
        def get(path):
            with urllib.request.urlopen(server.url + path, timeout=5) as resp:
                assert resp.headers["Content-Type"].startswith("application/json")
                return json.loads(resp.read())

        def post(path, body):
            req = urllib.request.Request(
                server.url + path,
                data=json.dumps(body).encode(),
                headers={"Content-Type": "application/json"},
                method="POST",
            )
            with urllib.request.urlopen(req, timeout=5) as resp:
                return json.loads(resp.read())

        meta = get("/api/metadata")
        assert set(meta) == {"task", "label_spec", "feature_names", "dataset_size"}
        assert set(meta["label_spec"]) == {"lo", "hi"}

        pred = post("/api/predict", {"text": "the cat sat on the mat"})
        assert set(pred) >= {"score", "label"}

        attr = post("/api/attribute/tokens", {"text": "the cat sat"})
        assert set(attr) == {"tokens", "deltas", "base_score"}
        assert len(attr["tokens"]) == len(attr["deltas"])

        texts = [f"words repeated {'again ' * (i % 7)}" for i in range(16)]
        serial = [post("/api/predict", {"text": t}) for t in texts]
        with ThreadPoolExecutor(max_workers=16) as pool:
            concurrent = list(pool.map(lambda t: post("/api/predict", {"text": t}), texts))
        assert concurrent == serial
    finally:
        server.shutdown()
        server.server_close()

    # occlusion on the token-count identity model: every delta equals the weight
    identity = token_count_identity_profiler()
    id_server = InterpretServer(InterpretApp(identity), port=0)
    id_server.start_background()
    try:
        req = urllib.request.Request(
            id_server.url + "/api/attribute/tokens",
            data=json.dumps({"text": "alpha beta gamma delta"}).encode(),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        with urllib.request.urlopen(req, timeout=5) as resp:
            attr = json.loads(resp.read())
        assert attr["deltas"] == [1.0, 1.0, 1.0, 1.0]
    finally:
        id_server.shutdown()
        id_server.server_close()
    print("\nPASS interpret-server-contract (schemas, identity deltas, 16-way concurrency)")


@pytest.mark.skipif(not ASAP_PATH.is_file(), reason="public essay corpus not downloaded")
def test_asap_prompt1_qwk():
    """Optional: prompt-1 forest lands within +/-0.10 of the 0.552 reference."""
    started = time.monotonic()
    ds = read_asap(ASAP_PATH, prompt_id=1)
    train_ds, test_ds = split(ds, 0.8, seed=42)

    table = build_unigram_table([i.text for i in train_ds], Tokenizer("space_punct"))
    pipeline = FeaturePipeline(
        Tokenizer("space_punct"),
        [
            Extractor("token_count"),
            Extractor("avg_token_length"),
            Extractor("unigram_likelihood", table=table),
        ],
        apply_standardizer=False,
    )
    X = pipeline.fit([i.text for i in train_ds])
    targets = [label_to_score(i.label, ds.label_spec) for i in train_ds]
    forest = forest_fit(X, targets, ForestConfig(n_estimators=100, max_depth=5, seed=42))

    preds = []
    for inst in test_ds:
        x = pipeline.extract_tokens(pipeline.tokenizer.tokenize(inst.text))
        preds.append(score_to_label(forest_predict(forest, x), ds.label_spec))
    kappa = qwk(preds, [i.label for i in test_ds], ds.label_spec)
    elapsed = time.monotonic() - started
    assert abs(kappa - 0.552) <= 0.10, f"prompt-1 QWK {kappa:.3f} not within 0.552 +/- 0.10"
    assert elapsed < 300.0
    print(f"\nPASS asap-prompt1-qwk (QWK {kappa:.3f}, {elapsed:.0f}s)")
