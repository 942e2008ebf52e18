"""HTTP service behavior: routes, guards, CORS, concurrency, library parity."""

import json
import os
import random
import string
from concurrent.futures import ThreadPoolExecutor

import pytest
import requests

from sentimen.errors import CorruptEnvelopeError
from sentimen.persistence import load_model
from sentimen.service import (
    MAX_TEXT_CHARS,
    ModelRegistry,
    parse_bind,
    predict_document,
    start_service,
)

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GOLDEN = os.path.join(REPO_ROOT, "docs", "examples")
ENVELOPES = [os.path.join(GOLDEN, f"envelope-{kind}.json") for kind in ("logreg", "svm", "nb")]


@pytest.fixture(scope="module")
def service():
    svc = start_service(ENVELOPES, ("127.0.0.1", 0), log_sink=lambda line: None)
    svc.start_background()
    host, port = svc.address
    yield f"http://{host}:{port}"
    svc.stop()


def strip_latency(payload):
    return {k: v for k, v in payload.items() if k != "latency_ms"}


def test_health(service):
    r = requests.get(f"{service}/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "models": 3}


def test_models_listing(service):
    r = requests.get(f"{service}/models")
    assert r.status_code == 200
    body = r.json()
    assert body["default"] == "envelope-logreg"
    listed = {m["id"]: m for m in body["models"]}
    assert set(listed) == {"envelope-logreg", "envelope-svm", "envelope-nb"}
    assert listed["envelope-svm"]["model_type"] == "svm"
    assert listed["envelope-nb"]["vocab_size"] > 0
    assert listed["envelope-logreg"]["classes"] == ["Negatif", "Netral", "Positif"]


def test_predict_basic_fields(service):
    r = requests.post(f"{service}/predict", json={"text": "BAGUS mantap, puas!!!", "model": "envelope-logreg"})
    assert r.status_code == 200
    body = r.json()
    assert body["label"] == "Positif"
    assert body["score_kind"] == "probability"
    assert abs(sum(body["scores"].values()) - 1.0) < 1e-6
    assert body["cleaned_text"] == "bagus mantap puas"
    assert body["model"] == "envelope-logreg"
    assert body["latency_ms"] >= 0
    assert max(body["scores"], key=body["scores"].get) == body["label"]
    assert body["top_features"]


def test_predict_is_deterministic_minus_latency(service):
    payloads = []
    for _ in range(2):
        r = requests.post(f"{service}/predict", json={"text": "kirim lambat jelek", "model": "envelope-svm"})
        payloads.append(strip_latency(r.json()))
    assert payloads[0] == payloads[1]
    assert payloads[0]["score_kind"] == "margin"


def test_predict_empty_after_cleaning_warns_not_errors(service):
    r = requests.post(f"{service}/predict", json={"text": "!!!", "model": "envelope-nb"})
    assert r.status_code == 200
    body = r.json()
    assert "warning" in body
    assert body["cleaned_text"] == ""
    assert body["top_features"] == []


def test_predict_unknown_model_id(service):
    r = requests.post(f"{service}/predict", json={"text": "bagus", "model": "tidak-ada"})
    assert r.status_code == 400
    assert "tidak-ada" in r.json()["error"]


def test_predict_oversized_text(service):
    r = requests.post(f"{service}/predict", json={"text": "a" * (MAX_TEXT_CHARS + 1)})
    assert r.status_code == 400
    assert "too long" in r.json()["error"]


def test_predict_rejects_bad_bodies(service):
    r = requests.post(f"{service}/predict", data=b"{not json",
                      headers={"Content-Type": "application/json"})
    assert r.status_code == 400
    r = requests.post(f"{service}/predict", json={"no_text": 1})
    assert r.status_code == 400
    r = requests.post(f"{service}/predict", json={"text": 42})
    assert r.status_code == 400


def test_unknown_paths_are_404(service):
    assert requests.get(f"{service}/nope").status_code == 404
    assert requests.post(f"{service}/nope", json={}).status_code == 404


def test_default_model_used_when_unspecified(service):
    r = requests.post(f"{service}/predict", json={"text": "bagus"})
    assert r.status_code == 200
    assert r.json()["model"] == "envelope-logreg"


def test_cors_wildcard_by_default(service):
    r = requests.get(f"{service}/models", headers={"Origin": "http://example.com"})
    assert r.headers.get("Access-Control-Allow-Origin") == "*"
    r = requests.options(f"{service}/predict", headers={"Origin": "http://example.com"})
    assert r.status_code == 204
    assert r.headers.get("Access-Control-Allow-Origin") == "*"


def test_cors_allowlist_restricts_origins():
    svc = start_service(ENVELOPES[:1], ("127.0.0.1", 0),
                        cors_allowlist=("http://playground.local",),
                        log_sink=lambda line: None)
    svc.start_background()
    host, port = svc.address
    try:
        base = f"http://{host}:{port}"
        allowed = requests.get(f"{base}/health", headers={"Origin": "http://playground.local"})
        assert allowed.headers.get("Access-Control-Allow-Origin") == "http://playground.local"
        denied = requests.get(f"{base}/health", headers={"Origin": "http://evil.example"})
        assert "Access-Control-Allow-Origin" not in denied.headers
    finally:
        svc.stop()


def test_start_service_fails_fast_on_corrupt_envelope(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}", encoding="utf-8")
    with pytest.raises(CorruptEnvelopeError):
        start_service([str(bad)], ("127.0.0.1", 0))


def random_texts(n, seed):
    rng = random.Random(seed)
    alphabet = string.ascii_letters + string.digits + " .!?:/😀"
    words = ["bagus", "jelek", "biasa", "barang", "kirim", "mantap", "rusak", "standar"]
    texts = []
    for _ in range(n):
        if rng.random() < 0.5:
            texts.append(" ".join(rng.choice(words) for _ in range(rng.randrange(1, 8))))
        else:
            texts.append("".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 40))))
    return texts


def test_service_matches_library_path(service):
    registry = ModelRegistry.from_paths(ENVELOPES)
    session = requests.Session()
    for text in random_texts(60, seed=303):
        for model_id in registry.ids():
            entry = registry.get(model_id)
            expected = predict_document(entry.model, entry.vocab, entry.config, text)
            expected["model"] = model_id
            r = session.post(f"{service}/predict", json={"text": text, "model": model_id})
            assert strip_latency(r.json()) == json.loads(json.dumps(expected, ensure_ascii=False))


def test_concurrent_burst_equals_sequential(service):
    texts = random_texts(40, seed=99)
    session = requests.Session()
    sequential = [
        strip_latency(session.post(f"{service}/predict", json={"text": t}).json()) for t in texts
    ]

    def fetch(t):
        return strip_latency(requests.post(f"{service}/predict", json={"text": t}).json())

    with ThreadPoolExecutor(max_workers=16) as pool:
        concurrent = list(pool.map(fetch, texts))
    assert concurrent == sequential


def test_parse_bind():
    assert parse_bind("0.0.0.0:9000") == ("0.0.0.0", 9000)
    assert parse_bind(":0") == ("127.0.0.1", 0)
    with pytest.raises(ValueError):
        parse_bind("9000")
