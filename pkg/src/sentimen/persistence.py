"""Versioned model envelopes: one self-contained JSON document per model.

The document is canonical (sorted keys, two-space indent, repr-precision
floats) so that load -> save reproduces the file byte for byte.  Weight rows
are stored as sparse ``[index, value]`` pairs: for the linear models a missing
index means 0.0, for Naive Bayes log-likelihoods it means -inf (which lets
zero-smoothing models round-trip; any non-finite value actually present in
the file is rejected on load).

See docs/model-envelope.md for the full schema and committed examples.
"""

from __future__ import annotations

import datetime
import json
import math

import numpy as np

from .corpus import CLASS_NAMES, N_CLASSES
from .errors import CorruptEnvelopeError, UnsupportedVersionError
from .features import FeatureConfig, Vocabulary
from .models import LogRegModel, NbModel, SvmModel

FORMAT_VERSION = 1

_MODEL_TYPES = {LogRegModel: "logreg", SvmModel: "svm", NbModel: "nb"}


def _utcnow_iso() -> str:
    return datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _sparse_rows(matrix, keep) -> list:
    rows = []
    for row in matrix:
        rows.append([[int(i), float(v)] for i, v in enumerate(row) if keep(v)])
    return rows


def _envelope_parameters(model) -> dict:
    if isinstance(model, (LogRegModel, SvmModel)):
        return {
            "weights": _sparse_rows(model.W, keep=lambda v: v != 0.0),
            "bias": [float(v) for v in model.b],
            "lambda": float(model.lam),
        }
    return {
        "log_prior": [float(v) for v in model.log_prior],
        "log_likelihood": _sparse_rows(model.log_likelihood, keep=math.isfinite),
        "alpha": float(model.alpha),
    }


def build_envelope(model, vocab: Vocabulary, config: FeatureConfig) -> dict:
    """Assemble the envelope document for a trained 3-class model."""
    model_type = _MODEL_TYPES.get(type(model))
    if model_type is None:
        raise TypeError(f"cannot serialize model of type {type(model).__name__}")
    metadata = dict(model.meta)
    metadata.setdefault("created_at", _utcnow_iso())
    return {
        "format_version": FORMAT_VERSION,
        "model_type": model_type,
        "class_names": list(CLASS_NAMES),
        "feature_config": {
            "ngram_min": config.ngram_min,
            "ngram_max": config.ngram_max,
            "max_features": config.max_features,
            "min_df": config.min_df,
            "sublinear_tf": config.sublinear_tf,
        },
        "vocabulary": {
            "n_docs": vocab.n_docs,
            "terms": [
                [term, int(vocab.doc_freq[i]), float(vocab.idf[i])]
                for term, i in vocab.terms.items()
            ],
        },
        "parameters": _envelope_parameters(model),
        "training_metadata": metadata,
    }


def dumps_envelope(envelope: dict) -> str:
    """Canonical text rendering of an envelope document."""
    return json.dumps(envelope, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_model(model, vocab: Vocabulary, config: FeatureConfig, path) -> None:
    """Write the model envelope; plain I/O errors propagate as OSError."""
    text = dumps_envelope(build_envelope(model, vocab, config))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _expect(condition, message):
    if not condition:
        raise CorruptEnvelopeError(message)


def _dense_rows(raw_rows, n_rows, n_cols, fill, what) -> np.ndarray:
    _expect(isinstance(raw_rows, list) and len(raw_rows) == n_rows,
            f"{what} must have {n_rows} rows")
    dense = np.full((n_rows, n_cols), fill, dtype=np.float64)
    for r, row in enumerate(raw_rows):
        _expect(isinstance(row, list), f"{what} row {r} is not a list")
        previous = -1
        for pair in row:
            _expect(isinstance(pair, list) and len(pair) == 2, f"{what} row {r} has a malformed pair")
            idx, val = pair
            _expect(isinstance(idx, int) and 0 <= idx < n_cols,
                    f"{what} row {r} index {idx!r} outside [0, {n_cols})")
            _expect(idx > previous, f"{what} row {r} indices not strictly ascending")
            _expect(isinstance(val, (int, float)) and math.isfinite(val),
                    f"{what} row {r} contains a non-finite value")
            dense[r, idx] = float(val)
            previous = idx
    return dense


def _finite_vector(raw, length, what) -> np.ndarray:
    _expect(isinstance(raw, list) and len(raw) == length, f"{what} must have {length} entries")
    _expect(all(isinstance(v, (int, float)) and math.isfinite(v) for v in raw),
            f"{what} contains a non-finite value")
    return np.array(raw, dtype=np.float64)


def _load_vocabulary(raw) -> Vocabulary:
    _expect(isinstance(raw, dict), "vocabulary must be an object")
    n_docs = raw.get("n_docs")
    term_rows = raw.get("terms")
    _expect(isinstance(n_docs, int) and n_docs >= 1, "vocabulary.n_docs must be a positive integer")
    _expect(isinstance(term_rows, list) and term_rows, "vocabulary.terms must be a non-empty list")
    terms: dict[str, int] = {}
    df = np.zeros(len(term_rows), dtype=np.int64)
    idf = np.zeros(len(term_rows))
    for i, row in enumerate(term_rows):
        _expect(isinstance(row, list) and len(row) == 3, f"vocabulary term {i} is malformed")
        term, term_df, term_idf = row
        _expect(isinstance(term, str) and term, f"vocabulary term {i} has an empty name")
        _expect(term not in terms, f"duplicate vocabulary term {term!r}")
        _expect(isinstance(term_df, int) and term_df >= 1, f"vocabulary term {term!r} has invalid doc_freq")
        _expect(isinstance(term_idf, (int, float)) and math.isfinite(term_idf) and term_idf > 0,
                f"vocabulary term {term!r} has invalid idf")
        terms[term] = i
        df[i] = term_df
        idf[i] = float(term_idf)
    return Vocabulary(terms=terms, doc_freq=df, idf=idf, n_docs=n_docs)


def _load_feature_config(raw) -> FeatureConfig:
    _expect(isinstance(raw, dict), "feature_config must be an object")
    try:
        return FeatureConfig(
            ngram_min=raw["ngram_min"],
            ngram_max=raw["ngram_max"],
            max_features=raw["max_features"],
            min_df=raw["min_df"],
            sublinear_tf=raw["sublinear_tf"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptEnvelopeError(f"invalid feature_config: {exc}") from exc


def load_model(path):
    """Read an envelope back into ``(model, vocab, config)``.

    Raises :class:`UnsupportedVersionError` for unknown format versions and
    :class:`CorruptEnvelopeError` for structural damage; missing files raise
    OSError as usual.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CorruptEnvelopeError(f"envelope is not valid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "envelope root must be an object")

    version = doc.get("format_version")
    _expect(isinstance(version, int), "format_version missing or not an integer")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(version)
    _expect(doc.get("class_names") == list(CLASS_NAMES),
            f"class_names must be {list(CLASS_NAMES)}")

    vocab = _load_vocabulary(doc.get("vocabulary"))
    config = _load_feature_config(doc.get("feature_config"))
    n_features = len(vocab)
    params = doc.get("parameters")
    _expect(isinstance(params, dict), "parameters must be an object")
    metadata = doc.get("training_metadata")
    _expect(isinstance(metadata, dict), "training_metadata must be an object")

    model_type = doc.get("model_type")
    if model_type in ("logreg", "svm"):
        W = _dense_rows(params.get("weights"), N_CLASSES, n_features, 0.0, "weights")
        b = _finite_vector(params.get("bias"), N_CLASSES, "bias")
        lam = params.get("lambda")
        _expect(isinstance(lam, (int, float)) and math.isfinite(lam) and lam >= 0,
                "lambda must be a non-negative finite number")
        cls = LogRegModel if model_type == "logreg" else SvmModel
        model = cls(W=W, b=b, lam=float(lam), vocab_ref=vocab, meta=dict(metadata))
    elif model_type == "nb":
        log_prior = _finite_vector(params.get("log_prior"), N_CLASSES, "log_prior")
        ll = _dense_rows(params.get("log_likelihood"), N_CLASSES, n_features, -np.inf, "log_likelihood")
        alpha = params.get("alpha")
        _expect(isinstance(alpha, (int, float)) and math.isfinite(alpha) and alpha >= 0,
                "alpha must be a non-negative finite number")
        model = NbModel(log_prior=log_prior, log_likelihood=ll, alpha=float(alpha),
                        vocab_ref=vocab, meta=dict(metadata))
    else:
        raise CorruptEnvelopeError(f"unknown model_type: {model_type!r}")
    return model, vocab, config
