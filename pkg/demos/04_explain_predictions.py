"""Inspect which n-grams drive a linear model's prediction.

Run from the repository root:  python demos/04_explain_predictions.py
"""

import os

from sentimen.persistence import load_model
from sentimen.service import predict_document

HERE = os.path.dirname(os.path.abspath(__file__))
ENVELOPE = os.path.join(HERE, "..", "docs", "examples", "envelope-logreg.json")

model, vocab, config = load_model(ENVELOPE)
print(f"loaded logistic regression over {len(vocab)} features")

texts = [
    "Barang BAGUS, mantap dan puas!",
    "kirim lambat, barang rusak, kecewa",
    "standar lumayan biasa saja",
    "!!!",  # cleans to nothing: prior-only prediction plus a warning
]
for text in texts:
    payload = predict_document(model, vocab, config, text)
    print(f"\ninput:   {text!r}")
    print(f"cleaned: {payload['cleaned_text']!r}")
    print(f"label:   {payload['label']}  "
          + " ".join(f"{k}={v:.3f}" for k, v in payload["scores"].items()))
    if payload["top_features"]:
        print("drivers: " + ", ".join(f"{term} ({value:+.3f})" for term, value in payload["top_features"]))
    if "warning" in payload:
        print("warning:", payload["warning"])
