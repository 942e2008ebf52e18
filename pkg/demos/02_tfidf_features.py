"""Fit a TF-IDF vocabulary and inspect the sparse document vectors.

Run from the repository root:  python demos/02_tfidf_features.py
"""

import numpy as np

from sentimen.features import FeatureConfig, fit_vocabulary, tokenize, transform

corpus = [
    "barang bagus murah",
    "barang jelek mahal",
    "bagus banget pengiriman cepat",
    "jelek banget pengiriman lambat",
    "barang bagus pengiriman cepat",
]

# min_df=2 keeps terms seen in at least two documents; unigrams + bigrams.
config = FeatureConfig(ngram_min=1, ngram_max=2, min_df=2, max_features=50000)
vocab = fit_vocabulary(corpus, config)

print(f"fitted {len(vocab)} terms over {vocab.n_docs} documents")
print(f"{'term':22} {'index':>5} {'df':>3} {'idf':>7}")
for term, idx in vocab.terms.items():
    print(f"{term:22} {idx:>5} {int(vocab.doc_freq[idx]):>3} {vocab.idf[idx]:7.4f}")

# Sublinear TF (1 + ln tf) damps repeats; rows are L2-normalized.
doc = "barang bagus bagus murah murah murah"
print(f"\ntokens of {doc!r}: {tokenize(doc)}")
vec = transform(doc, vocab, config)
terms = vocab.term_list
print("sparse vector (term -> weight):")
for idx, value in zip(vec.indices, vec.values):
    print(f"  {terms[idx]:22} {value:8.4f}")
print("euclidean norm:", float(np.linalg.norm(vec.values)))

print("\nout-of-vocabulary text maps to the empty vector:",
      transform("zzz qqq", vocab, config).nnz == 0)
