#!/usr/bin/env python3
"""Regenerate the committed test corpora and the golden envelope examples.

Everything here is deterministic (fixed seeds, pinned timestamps), so rerunning
the script reproduces the committed artifacts byte for byte:

* tests/fixtures/separable_300.csv    three classes with disjoint keywords
* tests/fixtures/imbalanced_1000.csv  95/4/1 skew with overlapping vocabularies
* tests/fixtures/mini_60.csv          tiny corpus behind the golden envelopes
* docs/examples/envelope-<kind>.json  one committed envelope per model type
* docs/examples/golden-report-<kind>.json  frozen evaluation of each envelope
"""

import csv
import json
import os
import random
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from sentimen.cli import _evaluate_model  # noqa: E402
from sentimen.corpus import clean_corpus, load_csv, stratified_split  # noqa: E402
from sentimen.features import FeatureConfig, fit_vocabulary, transform_corpus  # noqa: E402
from sentimen.metrics import report_to_dict  # noqa: E402
from sentimen.models import (  # noqa: E402
    TrainConfig,
    compute_class_weights,
    train_logreg,
    train_nb,
    train_svm_ovr,
)
from sentimen.persistence import save_model  # noqa: E402

FIXTURES = os.path.join(ROOT, "tests", "fixtures")
GOLDEN_DIR = os.path.join(ROOT, "docs", "examples")

NEGATIVE = ["jelek", "rusak", "kecewa", "buruk", "parah", "lambat", "penyok", "bau", "sobek", "retak"]
NEUTRAL = ["biasa", "standar", "cukup", "lumayan", "sedang", "normal", "rata", "wajar"]
POSITIVE = ["bagus", "mantap", "puas", "keren", "cepat", "amanah", "rapi", "murah", "awet", "ramah"]
FILLER = ["barang", "toko", "kirim", "beli", "sampai", "sesuai", "pesan", "paket", "harga", "banget"]

LABEL_SPELLINGS = {
    0: ["negatif", "negative", "neg", "Negatif"],
    1: ["netral", "neutral", "neu", "Netral"],
    2: ["positif", "positive", "pos", "POSITIF"],
}

NOISE_TAILS = ["!!!", "...", " :)", " \U0001F44D", "", "", "", " cek https://toko.id/x", "!?"]


def noisy(rng, words):
    """Assemble a raw review: random casing, punctuation, optional URL/emoji."""
    text = " ".join(words)
    if rng.random() < 0.3:
        text = text.capitalize()
    if rng.random() < 0.15:
        text = text.upper()
    if rng.random() < 0.4:
        text = text.replace(" ", ", ", 1)
    return text + rng.choice(NOISE_TAILS)


def write_csv(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["review_text", "label"])
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def separable_corpus(rng, n_per_class):
    pools = (NEGATIVE, NEUTRAL, POSITIVE)
    rows = []
    for ordinal, pool in enumerate(pools):
        for _ in range(n_per_class):
            words = [rng.choice(pool) for _ in range(rng.randrange(3, 7))]
            words += [rng.choice(FILLER) for _ in range(rng.randrange(1, 4))]
            rng.shuffle(words)
            rows.append([noisy(rng, words), rng.choice(LABEL_SPELLINGS[ordinal])])
    rng.shuffle(rows)
    return rows


def imbalanced_corpus(rng, n_pos=950, n_neu=40, n_neg=10):
    """Skewed corpus with overlapping vocabularies across the classes."""

    def doc(own_pool, cross_pool, cross_p):
        words = [rng.choice(FILLER) for _ in range(rng.randrange(3, 6))]
        words += [rng.choice(own_pool) for _ in range(rng.randrange(2, 5))]
        if rng.random() < cross_p:
            words.append(rng.choice(cross_pool))
        rng.shuffle(words)
        return noisy(rng, words)

    rows = []
    for _ in range(n_pos):
        # majority overlaps into the neutral pool only; the shared fillers plus
        # minority docs borrowing positive words keep vocabularies overlapping
        # without drowning the tiny negative class's keywords
        rows.append([doc(POSITIVE, NEUTRAL, 0.10), rng.choice(LABEL_SPELLINGS[2])])
    for _ in range(n_neu):
        rows.append([doc(NEUTRAL, POSITIVE, 0.25), rng.choice(LABEL_SPELLINGS[1])])
    for _ in range(n_neg):
        rows.append([doc(NEGATIVE, POSITIVE, 0.30), rng.choice(LABEL_SPELLINGS[0])])
    rng.shuffle(rows)
    return rows


def make_goldens():
    """Train the three model types on mini_60 and freeze envelopes + reports."""
    reviews, _ = clean_corpus(load_csv(os.path.join(FIXTURES, "mini_60.csv")))
    split = stratified_split(reviews, 0.25, seed=42)
    config = FeatureConfig()
    texts = [r.text for r in split.train]
    vocab = fit_vocabulary(texts, config)
    X = transform_corpus(texts, vocab, config)
    y = [int(r.label) for r in split.train]
    counts = [y.count(c) for c in range(3)]
    weights = compute_class_weights(counts, "balanced")
    tcfg = TrainConfig()

    trained = {
        "logreg": train_logreg(X, y, weights, tcfg, n_features=len(vocab)),
        "svm": train_svm_ovr(X, y, weights, tcfg, n_features=len(vocab)),
        "nb": train_nb(X, y, 1.0, n_features=len(vocab), n_classes=3),
    }
    os.makedirs(GOLDEN_DIR, exist_ok=True)
    for kind, model in trained.items():
        model.meta.update({
            "seed": 42,
            "weight_mode": "balanced",
            "lambda": tcfg.lam,
            "created_at": "2026-08-08T00:00:00Z",
        })
        if kind == "nb":
            model.meta["alpha"] = 1.0
        envelope_path = os.path.join(GOLDEN_DIR, f"envelope-{kind}.json")
        save_model(model, vocab, config, envelope_path)
        report = _evaluate_model(model, vocab, config, split.test, kind)
        report_path = os.path.join(GOLDEN_DIR, f"golden-report-{kind}.json")
        with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n")
        print(f"wrote {envelope_path} and {report_path}")


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    write_csv(os.path.join(FIXTURES, "separable_300.csv"), separable_corpus(random.Random(42), 100))
    write_csv(os.path.join(FIXTURES, "imbalanced_1000.csv"), imbalanced_corpus(random.Random(4242)))
    write_csv(os.path.join(FIXTURES, "mini_60.csv"), separable_corpus(random.Random(7), 20))
    make_goldens()


if __name__ == "__main__":
    main()
