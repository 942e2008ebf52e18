"""Uni+bigram TF-IDF features over a capped, document-frequency-filtered vocabulary.

Fitting counts document frequency and total corpus frequency for every
n-gram, drops terms seen in fewer than ``min_df`` documents, keeps the
``max_features`` most frequent survivors (ties broken lexicographically) and
assigns column indices in lexicographic term order.  IDF uses the smoothed
form ``ln((1 + n_docs) / (1 + df)) + 1`` so every kept term gets positive
weight; transformed rows are L2-normalized.

Because normalization replaces punctuation with spaces upstream, bigrams can
span positions where punctuation used to be ("bagus!murah" yields the bigram
"bagus murah").
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpusError, EmptyVocabularyError


@dataclass(frozen=True)
class FeatureConfig:
    """Featurization knobs; the defaults are the toolkit's reference setup."""

    ngram_min: int = 1
    ngram_max: int = 2
    max_features: int = 50000
    min_df: int = 2
    sublinear_tf: bool = True

    def __post_init__(self):
        if self.ngram_min < 1:
            raise ValueError("ngram_min must be >= 1")
        if self.ngram_max < self.ngram_min:
            raise ValueError("ngram_max must be >= ngram_min")
        if self.max_features < 1:
            raise ValueError("max_features must be >= 1")
        if self.min_df < 1:
            raise ValueError("min_df must be >= 1")


@dataclass
class Vocabulary:
    """Fitted feature space: term -> dense column index plus df/idf statistics.

    ``terms`` iterates in index order (lexicographic).  ``doc_freq`` and
    ``idf`` are aligned arrays indexed by column.
    """

    terms: dict[str, int]
    doc_freq: np.ndarray
    idf: np.ndarray
    n_docs: int

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def term_list(self) -> list[str]:
        return list(self.terms)


@dataclass(eq=False)
class SparseVector:
    """One document as strictly-ascending (index, value) pairs, L2-normalized."""

    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=np.int64)
        self.values = np.asarray(self.values, dtype=np.float64)

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def to_dense(self, n_features: int) -> np.ndarray:
        dense = np.zeros(n_features)
        dense[self.indices] = self.values
        return dense


_TOKEN_RE = re.compile(r"\w\w+")


def tokenize(text: str) -> list[str]:
    """Split normalized text into runs of >= 2 word characters, in order."""
    return _TOKEN_RE.findall(text)


def extract_ngrams(tokens, nmin: int, nmax: int) -> list[str]:
    """All contiguous n-grams, space-joined, unigrams first then longer n."""
    grams = []
    for n in range(nmin, nmax + 1):
        for at in range(len(tokens) - n + 1):
            grams.append(" ".join(tokens[at : at + n]))
    return grams


def _document_terms(text: str, config: FeatureConfig) -> list[str]:
    return extract_ngrams(tokenize(text), config.ngram_min, config.ngram_max)


def fit_vocabulary(texts, config: FeatureConfig = FeatureConfig()) -> Vocabulary:
    """Fit the capped vocabulary with df filtering and smoothed IDF.

    Raises :class:`EmptyCorpusError` for an empty corpus and
    :class:`EmptyVocabularyError` when the min_df filter removes every term.
    """
    texts = list(texts)
    if not texts:
        raise EmptyCorpusError("cannot fit a vocabulary on an empty corpus")

    doc_freq: Counter = Counter()
    corpus_freq: Counter = Counter()
    for text in texts:
        grams = _document_terms(text, config)
        corpus_freq.update(grams)
        doc_freq.update(set(grams))

    survivors = [t for t, df in doc_freq.items() if df >= config.min_df]
    if not survivors:
        raise EmptyVocabularyError(
            f"no term appears in at least min_df={config.min_df} documents"
        )
    if len(survivors) > config.max_features:
        # Rank by total corpus frequency, lexicographic ascending on ties.
        survivors.sort(key=lambda t: (-corpus_freq[t], t))
        survivors = survivors[: config.max_features]

    ordered = sorted(survivors)
    terms = {t: i for i, t in enumerate(ordered)}
    df = np.array([doc_freq[t] for t in ordered], dtype=np.int64)
    n_docs = len(texts)
    idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
    return Vocabulary(terms=terms, doc_freq=df, idf=idf, n_docs=n_docs)


def transform(text: str, vocab: Vocabulary, config: FeatureConfig = FeatureConfig()) -> SparseVector:
    """Map one normalized text to its L2-normalized (sublinear) TF-IDF vector.

    Terms outside the vocabulary are ignored; a document with no known terms
    yields the empty vector.
    """
    counts: Counter = Counter()
    for gram in _document_terms(text, config):
        col = vocab.terms.get(gram)
        if col is not None:
            counts[col] += 1
    if not counts:
        return SparseVector(np.empty(0, dtype=np.int64), np.empty(0))

    indices = np.array(sorted(counts), dtype=np.int64)
    tf = np.array([counts[i] for i in indices], dtype=np.float64)
    if config.sublinear_tf:
        tf = 1.0 + np.log(tf)
    weighted = tf * vocab.idf[indices]
    norm = math.sqrt(float(np.dot(weighted, weighted)))
    return SparseVector(indices, weighted / norm)


def transform_corpus(texts, vocab: Vocabulary, config: FeatureConfig = FeatureConfig()) -> list[SparseVector]:
    """Transform every text against a fixed vocabulary."""
    return [transform(t, vocab, config) for t in texts]
