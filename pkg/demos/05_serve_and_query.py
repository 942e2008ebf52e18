"""Spin the HTTP service up in-process and exercise every endpoint.

Run from the repository root:  python demos/05_serve_and_query.py
(The CLI equivalent: `sentimen serve --models docs/examples/envelope-*.json`.)
"""

import json
import os
import urllib.request

from sentimen.service import start_service

HERE = os.path.dirname(os.path.abspath(__file__))
GOLDEN = os.path.join(HERE, "..", "docs", "examples")
ENVELOPES = [os.path.join(GOLDEN, f"envelope-{kind}.json") for kind in ("logreg", "svm", "nb")]


def get(url):
    with urllib.request.urlopen(url) as resp:
        return json.loads(resp.read())


def post(url, payload):
    req = urllib.request.Request(
        url, json.dumps(payload).encode("utf-8"),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


service = start_service(ENVELOPES, ("127.0.0.1", 0), log_sink=lambda line: None)
service.start_background()
host, port = service.address
base = f"http://{host}:{port}"
print(f"service listening on {base}")

print("\nGET /health  ->", get(f"{base}/health"))
print("\nGET /models  ->")
print(json.dumps(get(f"{base}/models"), indent=2))

print("\nPOST /predict (per model) ->")
for model_id in ("envelope-logreg", "envelope-svm", "envelope-nb"):
    body = post(f"{base}/predict", {"text": "BAGUS banget, puas!", "model": model_id})
    scores = " ".join(f"{k}={v:.3f}" for k, v in body["scores"].items())
    print(f"  {model_id:16} {body['label']:8} [{body['score_kind']}] {scores}")

print("\nempty-after-cleaning input keeps HTTP 200 and sets a warning:")
body = post(f"{base}/predict", {"text": "!!!"})
print(" ", body["label"], "| warning:", body.get("warning"))

service.stop()
print("\nservice stopped")
