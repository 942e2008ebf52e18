"""HTTP inference service and the shared text -> prediction composition.

Endpoints (JSON over HTTP, documented with transcripts in docs/http-api.md):

* ``GET /health``   liveness probe.
* ``GET /models``   registry listing (id, model type, vocabulary size).
* ``POST /predict`` body ``{"text": ..., "model": optional id}``.

Models are loaded once at startup into an immutable registry (fail-fast on a
bad envelope) and shared read-only across request threads, so concurrent
responses are identical to sequential ones.  Responses inline the top
contributing terms for the linear models; a text that cleans to nothing is
answered from the class priors/biases with a warning field rather than an
error.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from .corpus import CLASS_NAMES, preprocess_text
from .features import transform
from .models import (
    LogRegModel,
    NbModel,
    SvmModel,
    explain_linear,
    predict_logreg,
    predict_nb,
    predict_svm,
)
from .persistence import load_model

MAX_TEXT_CHARS = 10000
TOP_FEATURES = 5

ENV_BIND = "SENTIMEN_BIND"
ENV_MODEL_DIR = "SENTIMEN_MODEL_DIR"
ENV_CORS = "SENTIMEN_CORS"


@dataclass(eq=False)
class ModelEntry:
    model_id: str
    model: object
    vocab: object
    config: object
    model_type: str


class ModelRegistry:
    """Immutable id -> model mapping, populated once at startup."""

    def __init__(self, entries):
        self._entries = {e.model_id: e for e in entries}
        if not self._entries:
            raise ValueError("registry needs at least one model")
        self._default_id = next(iter(self._entries))

    @classmethod
    def from_paths(cls, paths) -> "ModelRegistry":
        entries = []
        for path in paths:
            model, vocab, config = load_model(path)
            model_id = os.path.splitext(os.path.basename(path))[0]
            model_type = {LogRegModel: "logreg", SvmModel: "svm", NbModel: "nb"}[type(model)]
            entries.append(ModelEntry(model_id, model, vocab, config, model_type))
        return cls(entries)

    @property
    def default_id(self) -> str:
        return self._default_id

    def ids(self) -> list[str]:
        return list(self._entries)

    def get(self, model_id: str) -> ModelEntry:
        return self._entries[model_id]

    def listing(self) -> list[dict]:
        return [
            {
                "id": e.model_id,
                "model_type": e.model_type,
                "vocab_size": len(e.vocab),
                "classes": list(CLASS_NAMES),
            }
            for e in self._entries.values()
        ]


def predict_document(model, vocab, config, text: str, k: int = TOP_FEATURES) -> dict:
    """Run the full inference composition for one raw text.

    preprocess -> transform -> model predict (+ top-k term contributions for
    the linear models).  Returns the response payload minus service-only
    fields; ``warning`` appears when no known feature survives cleaning.
    """
    cleaned = preprocess_text(text)
    x = transform(cleaned, vocab, config)

    if isinstance(model, LogRegModel):
        label, scores = predict_logreg(model, x)
        score_kind = "probability"
    elif isinstance(model, SvmModel):
        label, scores = predict_svm(model, x)
        score_kind = "margin"
    elif isinstance(model, NbModel):
        label, log_post = predict_nb(model, x)
        shifted = log_post - log_post.max()
        scores = np.exp(shifted)
        scores /= scores.sum()
        score_kind = "probability"
    else:
        raise TypeError(f"unsupported model type: {type(model).__name__}")

    payload = {
        "label": CLASS_NAMES[label],
        "score_kind": score_kind,
        "scores": {CLASS_NAMES[i]: float(s) for i, s in enumerate(scores)},
        "top_features": [
            [term, value]
            for term, value in (
                explain_linear(model, x, vocab, k) if isinstance(model, (LogRegModel, SvmModel)) else []
            )
        ],
        "cleaned_text": cleaned,
    }
    if x.nnz == 0:
        payload["warning"] = "no known features after preprocessing; prediction uses class priors/biases only"
    return payload


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "sentimen"
    # Fully buffer each response; handle_one_request() flushes per request.
    # Combined with TCP_NODELAY below this sends header+body in one segment
    # instead of triggering Nagle/delayed-ACK stalls on keep-alive clients.
    wbufsize = -1

    # --- plumbing -------------------------------------------------------
    def _cors_origin(self):
        allowlist = self.server.cors_allowlist
        origin = self.headers.get("Origin")
        if "*" in allowlist:
            return "*"
        if origin and origin in allowlist:
            return origin
        return None

    def _send_json(self, status: int, payload: dict):
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        origin = self._cors_origin()
        if origin:
            self.send_header("Access-Control-Allow-Origin", origin)
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):  # structured one-line request log
        record = {"ts": round(time.time(), 3), "client": self.client_address[0], "msg": fmt % args}
        self.server.log_sink(json.dumps(record))

    # --- routes ---------------------------------------------------------
    def do_OPTIONS(self):
        self.send_response(204)
        origin = self._cors_origin()
        if origin:
            self.send_header("Access-Control-Allow-Origin", origin)
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        registry = self.server.registry
        if self.path == "/health":
            self._send_json(200, {"status": "ok", "models": len(registry.ids())})
        elif self.path == "/models":
            self._send_json(200, {"models": registry.listing(), "default": registry.default_id})
        else:
            self._send_json(404, {"error": f"no such path: {self.path}"})

    def do_POST(self):
        if self.path != "/predict":
            self._send_json(404, {"error": f"no such path: {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            body = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            self._send_json(400, {"error": "request body must be a JSON object"})
            return
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            self._send_json(400, {"error": "request must carry a string 'text' field"})
            return
        text = body["text"]
        if len(text) > MAX_TEXT_CHARS:
            self._send_json(400, {"error": f"text too long: {len(text)} > {MAX_TEXT_CHARS} characters"})
            return
        registry = self.server.registry
        model_id = body.get("model") or registry.default_id
        try:
            entry = registry.get(model_id)
        except KeyError:
            self._send_json(400, {"error": f"unknown model id: {model_id}"})
            return

        started = time.perf_counter()
        payload = predict_document(entry.model, entry.vocab, entry.config, text)
        payload["model"] = entry.model_id
        payload["latency_ms"] = (time.perf_counter() - started) * 1000.0
        self._send_json(200, payload)


class _Server(ThreadingHTTPServer):
    daemon_threads = True
    disable_nagle_algorithm = True
    request_queue_size = 128  # survive bursts of fresh connections
    # Registry is attached before serving and never mutated afterwards.


class SentimentService:
    """A running (or startable) inference service bound to an address."""

    def __init__(self, registry: ModelRegistry, bind_address=("127.0.0.1", 8000),
                 cors_allowlist=("*",), log_sink=None):
        self.registry = registry
        self._server = _Server(tuple(bind_address), _Handler)
        self._server.registry = registry
        self._server.cors_allowlist = tuple(cors_allowlist)
        self._server.log_sink = log_sink if log_sink is not None else (lambda line: print(line, flush=True))
        self._thread = None

    @property
    def address(self) -> tuple[str, int]:
        host, port = self._server.server_address[:2]
        return host, port

    def start_background(self):
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def serve_forever(self):
        self._server.serve_forever()

    def stop(self):
        self._server.shutdown()
        self._server.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None


def start_service(model_paths, bind_address=("127.0.0.1", 8000), cors_allowlist=("*",),
                  log_sink=None) -> SentimentService:
    """Load every envelope (fail-fast), bind, and return the service object.

    The caller picks ``serve_forever()`` (blocking) or ``start_background()``.
    """
    registry = ModelRegistry.from_paths(model_paths)
    return SentimentService(registry, bind_address, cors_allowlist, log_sink)


def parse_bind(text: str) -> tuple[str, int]:
    """Parse ``host:port`` (port may be 0 for an ephemeral choice)."""
    host, sep, port = text.rpartition(":")
    if not sep:
        raise ValueError(f"bind address must look like host:port, got {text!r}")
    return host or "127.0.0.1", int(port)
