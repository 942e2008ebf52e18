"""Acceptance suite: one test per release criterion, tolerances pinned inline.

Each test prints a single ``[ACCEPTANCE] <criterion>: PASS`` line when it
succeeds, so ``pytest -s tests/test_acceptance.py`` reads as a checklist.
The golden numbers for the imbalanced fixture were derived by running the
committed pipeline on the committed CSV (seed 42) and frozen here; the
pipeline is fully deterministic, so they must reproduce exactly.
"""

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
import requests

from conftest import random_sparse_vector
from sentimen.cli import main
from sentimen.corpus import CLASS_NAMES, class_counts, clean_corpus, load_csv, stratified_split
from sentimen.features import FeatureConfig, fit_vocabulary, transform_corpus
from sentimen.metrics import compute_report, confusion_matrix
from sentimen.models import (
    TrainConfig,
    compute_class_weights,
    predict_logreg,
    predict_nb,
    predict_svm,
    softmax_ce_objective,
    squared_hinge_objective,
    train_logreg,
    train_nb,
    train_svm_ovr,
)
from sentimen.persistence import load_model, save_model
from sentimen.service import predict_document, start_service
from test_features import oracle_fit, oracle_transform, random_config, random_corpus
from test_metrics import oracle_metrics
from test_models import finite_difference, gradient_fixture, relative_error

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(REPO_ROOT, "tests", "fixtures")
GOLDEN = os.path.join(REPO_ROOT, "docs", "examples")
SEPARABLE_CSV = os.path.join(FIXTURES, "separable_300.csv")
IMBALANCED_CSV = os.path.join(FIXTURES, "imbalanced_1000.csv")
ENVELOPES = [os.path.join(GOLDEN, f"envelope-{kind}.json") for kind in ("logreg", "svm", "nb")]

# Frozen goldens for the 95/4/1 fixture (derived: seed-42 benchmark of the
# committed pipeline on the committed CSV).
GOLD_NB = {"accuracy": 0.95, "macro_f1": 0.3247863247863248, "weighted_f1": 0.9256410256410257}
GOLD_SVM = {"accuracy": 0.995, "macro_f1": 0.8880139982502188, "weighted_f1": 0.9941732283464567}
GOLD_LOGREG = {"accuracy": 0.995, "macro_f1": 0.8880139982502188, "weighted_f1": 0.9941732283464567}
GOLD_MINORITY_RECALL_BALANCED = 0.5
GOLD_MINORITY_RECALL_UNIFORM = 0.0

GOLD_TOL = 1e-9


def done(name):
    print(f"[ACCEPTANCE] {name}: PASS")


def run_benchmark(csv_path, out_dir, seed=42):
    code = main(["benchmark", csv_path, "--out", str(out_dir), "--seed", str(seed)])
    assert code == 0
    return {
        kind: json.loads(open(os.path.join(out_dir, "reports", f"{kind}_report.json"), encoding="utf-8").read())
        for kind in ("logreg", "svm", "nb")
    }


def test_c01_class_weight_formula_exactness():
    rng = random.Random(10)
    for _ in range(1000):
        counts = [rng.randrange(1, 100000) for _ in range(3)]
        cw = compute_class_weights(counts, "balanced")
        total = sum(counts)
        for c in range(3):
            assert abs(cw.w[c] - total / (3 * counts[c])) <= 1e-12
        assert abs(float(np.dot(cw.w, counts)) - total) <= 1e-12 * total
    done("class-weight formula exact on 1000 random count triples")


def test_c02_feature_pipeline_matches_dense_oracle():
    rng = random.Random(777)
    corpora = 0
    while corpora < 200:
        config = random_config(rng)
        docs = random_corpus(rng)
        try:
            vocab = fit_vocabulary(docs, config)
        except Exception:
            continue
        kept, _, idf = oracle_fit(docs, config)
        assert list(vocab.terms) == kept
        for doc in docs:
            dense = np.array(oracle_transform(doc, kept, idf, config))
            got = transform_corpus([doc], vocab, config)[0].to_dense(len(kept))
            assert np.max(np.abs(got - dense), initial=0.0) < 1e-9
        corpora += 1
    done("TF-IDF pipeline equals dense brute force on 200 random corpora")


def test_c03_gradient_checks_within_budget():
    started = time.perf_counter()
    for seed in range(10):
        Xc, y, sw, lam, n_feat, n_classes = gradient_fixture(seed)
        rng = np.random.default_rng(seed)
        W = rng.normal(size=(n_classes, n_feat))
        b = rng.normal(size=n_classes)
        theta = np.concatenate([W.ravel(), b])

        def ce_value(t):
            Wt = t[: n_classes * n_feat].reshape(n_classes, n_feat)
            return softmax_ce_objective(Wt, t[n_classes * n_feat:], Xc, y, sw, lam)[0]

        _, gW, gb = softmax_ce_objective(W, b, Xc, y, sw, lam)
        assert relative_error(np.concatenate([gW.ravel(), gb]), finite_difference(ce_value, theta)) < 1e-5

        targets = np.where(y == seed % n_classes, 1.0, -1.0)
        w = rng.normal(size=n_feat)
        bias = float(rng.normal())
        flat = np.concatenate([w, [bias]])

        def hinge_value(t):
            return squared_hinge_objective(t[:-1], t[-1], Xc, targets, sw, lam)[0]

        _, gw, gbias = squared_hinge_objective(w, bias, Xc, targets, sw, lam)
        assert relative_error(np.concatenate([gw, [gbias]]), finite_difference(hinge_value, flat)) < 1e-5
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    done(f"gradient checks (rel err < 1e-5) in {elapsed:.2f}s")


def test_c04_metrics_match_brute_force_and_worked_example():
    rng = random.Random(2025)
    for _ in range(1000):
        n = rng.randrange(1, 51)
        y_true = [rng.randrange(3) for _ in range(n)]
        y_pred = [rng.randrange(3) for _ in range(n)]
        report = compute_report(confusion_matrix(y_true, y_pred, 3))
        acc, macro, weighted, per_class = oracle_metrics(y_true, y_pred, 3)
        assert abs(report.accuracy - acc) <= 1e-12
        assert abs(report.macro_f1 - macro) <= 1e-12
        assert abs(report.weighted_f1 - weighted) <= 1e-12
        for c in range(3):
            assert abs(report.f1[c] - per_class[c][2]) <= 1e-12

    from sentimen.metrics import ConfusionMatrix

    worked = compute_report(ConfusionMatrix(np.array([[8, 2, 0], [1, 3, 1], [0, 1, 14]]), CLASS_NAMES))
    assert abs(worked.accuracy - 0.8333) < 5e-5
    assert abs(worked.macro_f1 - 0.7736) < 5e-5
    assert abs(worked.weighted_f1 - 0.8383) < 5e-5
    done("metrics equal brute-force recomputation on 1000 random pairs + worked example")


def test_c05_benchmark_separable_fixture(tmp_path):
    started = time.perf_counter()
    reports = run_benchmark(SEPARABLE_CSV, tmp_path / "bench")
    elapsed = time.perf_counter() - started
    for kind in ("logreg", "svm"):
        assert reports[kind]["accuracy"] >= 0.95, kind
        assert reports[kind]["macro_f1"] >= 0.95, kind
    assert elapsed < 60.0
    done(f"separable-corpus benchmark: logreg/svm accuracy+macroF1 >= 0.95 in {elapsed:.1f}s")


def test_c06_imbalanced_fixture_reproduces_nb_pattern(tmp_path):
    reports = run_benchmark(IMBALANCED_CSV, tmp_path / "imb")
    nb, svm, logreg = reports["nb"], reports["svm"], reports["logreg"]
    # qualitative pattern: NB keeps headline accuracy but collapses on macro F1
    assert nb["macro_f1"] < svm["macro_f1"]
    assert nb["accuracy"] - nb["macro_f1"] > 0.2
    # frozen goldens (deterministic pipeline -> exact reproduction)
    for got, gold in ((nb, GOLD_NB), (svm, GOLD_SVM), (logreg, GOLD_LOGREG)):
        for key, value in gold.items():
            assert abs(got[key] - value) < GOLD_TOL, (got["model"], key)
    done("imbalanced fixture: NB macro collapse reproduced against frozen goldens")


def imbalanced_split_features():
    reviews, _ = clean_corpus(load_csv(IMBALANCED_CSV))
    split = stratified_split(reviews, 0.2, 42)
    config = FeatureConfig()
    texts = [r.text for r in split.train]
    vocab = fit_vocabulary(texts, config)
    X = transform_corpus(texts, vocab, config)
    y = [int(r.label) for r in split.train]
    test_X = transform_corpus([r.text for r in split.test], vocab, config)
    y_true = [int(r.label) for r in split.test]
    return X, y, test_X, y_true, vocab, class_counts(split.train)


def test_c07_balanced_weights_lift_minority_recall():
    X, y, test_X, y_true, vocab, counts = imbalanced_split_features()
    tcfg = TrainConfig()
    recalls = {}
    for mode, gold in (("balanced", GOLD_MINORITY_RECALL_BALANCED),
                       ("uniform", GOLD_MINORITY_RECALL_UNIFORM)):
        model = train_logreg(X, y, compute_class_weights(counts, mode), tcfg, n_features=len(vocab))
        y_pred = [predict_logreg(model, x)[0] for x in test_X]
        report = compute_report(confusion_matrix(y_true, y_pred, 3, CLASS_NAMES))
        recalls[mode] = float(report.recall[0])  # ordinal 0 is the 1% class
        assert abs(recalls[mode] - gold) < GOLD_TOL
    assert recalls["balanced"] >= recalls["uniform"]
    done(f"balanced logreg minority recall {recalls['balanced']} >= uniform {recalls['uniform']}")


def test_c08_benchmark_determinism(tmp_path):
    for run in ("one", "two"):
        run_benchmark(SEPARABLE_CSV, tmp_path / run)
    compared = 0
    for rel in (
        "comparison.txt",
        "comparison.json",
        "benchmark.json",
        "data/split_manifest.tsv",
        "data/train.csv",
        "data/test.csv",
        "data/summary.json",
        "reports/logreg_report.json",
        "reports/svm_report.json",
        "reports/nb_report.json",
        "reports/logreg_confusion.csv",
        "reports/svm_confusion.csv",
        "reports/nb_confusion.csv",
    ):
        a = open(os.path.join(tmp_path, "one", rel), "rb").read()
        b = open(os.path.join(tmp_path, "two", rel), "rb").read()
        assert a == b, rel
        compared += 1
    bench = json.loads(open(os.path.join(tmp_path, "one", "benchmark.json"), encoding="utf-8").read())
    assert len(set(bench["manifest_sha256"].values())) == 1  # same split for all three models
    done(f"benchmark byte-identical across reruns ({compared} artifacts)")


def test_c09_persistence_differential(tmp_path):
    reviews, _ = clean_corpus(load_csv(os.path.join(FIXTURES, "mini_60.csv")))
    config = FeatureConfig()
    texts = [r.text for r in reviews]
    vocab = fit_vocabulary(texts, config)
    X = transform_corpus(texts, vocab, config)
    y = [int(r.label) for r in reviews]
    counts = class_counts(reviews)
    weights = compute_class_weights(counts, "balanced")
    tcfg = TrainConfig(max_iter=200)
    trained = {
        "logreg": (train_logreg(X, y, weights, tcfg, n_features=len(vocab)), predict_logreg),
        "svm": (train_svm_ovr(X, y, weights, tcfg, n_features=len(vocab)), predict_svm),
        "nb": (train_nb(X, y, 1.0, n_features=len(vocab), n_classes=3), predict_nb),
    }
    rng = random.Random(606)
    for kind, (model, predict) in trained.items():
        path = tmp_path / f"{kind}.json"
        save_model(model, vocab, config, path)
        loaded, _, _ = load_model(path)
        for _ in range(100):
            x = random_sparse_vector(rng, len(vocab))
            label_a, scores_a = predict(model, x)
            label_b, scores_b = predict(loaded, x)
            assert label_a == label_b
            assert scores_a.tolist() == scores_b.tolist()
    done("save->load->predict bit-identical for 100 random vectors x 3 model types")


def test_c10_service_equivalence():
    svc = start_service(ENVELOPES, ("127.0.0.1", 0), log_sink=lambda line: None)
    svc.start_background()
    host, port = svc.address
    base = f"http://{host}:{port}"
    try:
        session = requests.Session()
        registry = svc.registry
        rng = random.Random(505)
        words = ["bagus", "jelek", "biasa", "barang", "mantap", "rusak", "standar", "kirim", "paket"]

        def random_text():
            if rng.random() < 0.1:
                return "".join(chr(rng.randrange(32, 1000)) for _ in range(rng.randrange(0, 30)))
            return " ".join(rng.choice(words) for _ in range(rng.randrange(0, 9)))

        ids = registry.ids()
        texts = [random_text() for _ in range(1000)]
        for i, text in enumerate(texts):
            model_id = ids[i % len(ids)]
            entry = registry.get(model_id)
            expected = predict_document(entry.model, entry.vocab, entry.config, text)
            expected["model"] = model_id
            expected = json.loads(json.dumps(expected, ensure_ascii=False))
            r = session.post(f"{base}/predict", json={"text": text, "model": model_id})
            assert r.status_code == 200
            got = {k: v for k, v in r.json().items() if k != "latency_ms"}
            assert got == expected

        burst_texts = texts[:100]
        sequential = []
        for text in burst_texts:
            r = session.post(f"{base}/predict", json={"text": text})
            sequential.append({k: v for k, v in r.json().items() if k != "latency_ms"})

        def fetch(text):
            resp = requests.post(f"{base}/predict", json={"text": text})
            return {k: v for k, v in resp.json().items() if k != "latency_ms"}

        with ThreadPoolExecutor(max_workers=100) as pool:
            concurrent = list(pool.map(fetch, burst_texts))
        assert concurrent == sequential
    finally:
        svc.stop()
    done("service == library for 1000 random strings; 100-way burst == sequential")


TOKOPEDIA_ENV = "SENTIMEN_TOKOPEDIA_CSV"


@pytest.mark.skipif(TOKOPEDIA_ENV not in os.environ,
                    reason=f"optional paper-scale run; set {TOKOPEDIA_ENV} to the dataset CSV")
def test_c11_optional_full_dataset_benchmark(tmp_path):
    started = time.perf_counter()
    reports = run_benchmark(os.environ[TOKOPEDIA_ENV], tmp_path / "full")
    elapsed = time.perf_counter() - started
    targets = {"logreg": 0.9436, "svm": 0.9760, "nb": 0.9750}
    for kind, target in targets.items():
        assert abs(reports[kind]["accuracy"] - target) <= 0.02, kind
    assert reports["svm"]["accuracy"] >= reports["nb"]["accuracy"] > reports["logreg"]["accuracy"]
    assert reports["svm"]["macro_f1"] > reports["logreg"]["macro_f1"] > reports["nb"]["macro_f1"]
    assert elapsed < 1800.0
    done(f"full-dataset benchmark within tolerance in {elapsed:.0f}s")
