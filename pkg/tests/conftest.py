"""Shared corpus builders for the model, persistence and pipeline tests."""

import random

import numpy as np

from sentimen.corpus import Review, SentimentLabel
from sentimen.features import FeatureConfig, SparseVector, fit_vocabulary, transform_corpus

# Disjoint keyword pools per class keep the synthetic corpus linearly separable.
NEGATIVE_WORDS = ["jelek", "rusak", "kecewa", "buruk", "parah", "lambat"]
NEUTRAL_WORDS = ["biasa", "standar", "cukup", "lumayan", "sedang", "normal"]
POSITIVE_WORDS = ["bagus", "mantap", "puas", "keren", "cepat", "amanah"]
FILLER_WORDS = ["barang", "toko", "kirim", "beli", "sampai", "sesuai"]

CLASS_WORDS = (NEGATIVE_WORDS, NEUTRAL_WORDS, POSITIVE_WORDS)


def make_separable_reviews(n_per_class=20, seed=7):
    """Synthetic reviews whose class keywords never overlap."""
    rng = random.Random(seed)
    reviews = []
    for ordinal, words in enumerate(CLASS_WORDS):
        for _ in range(n_per_class):
            picks = [rng.choice(words) for _ in range(rng.randrange(2, 5))]
            picks += [rng.choice(FILLER_WORDS) for _ in range(rng.randrange(0, 3))]
            rng.shuffle(picks)
            reviews.append(Review(" ".join(picks), SentimentLabel(ordinal)))
    rng.shuffle(reviews)
    return reviews


def vectorize(reviews, config=None):
    """Fit-and-transform helper returning (X, y, vocab, config)."""
    if config is None:
        config = FeatureConfig(min_df=1)
    texts = [r.text for r in reviews]
    vocab = fit_vocabulary(texts, config)
    X = transform_corpus(texts, vocab, config)
    y = np.array([int(r.label) for r in reviews])
    return X, y, vocab, config


def random_sparse_vector(rng, n_features, max_nnz=5):
    """Random positive sparse vector (not normalized; generality on purpose)."""
    nnz = rng.randrange(0, min(max_nnz, n_features) + 1)
    idx = sorted(rng.sample(range(n_features), nnz)) if nnz else []
    vals = [rng.uniform(0.1, 2.0) for _ in idx]
    return SparseVector(np.array(idx, dtype=np.int64), np.array(vals))
