"""Command-line pipeline: prepare | train | evaluate | predict | benchmark | serve.

Exit codes: 0 success, 2 usage or data error, 3 numeric failure (diverged
training).  Option precedence is flags > --config file (a flat JSON object
keyed by long option names, see docs/cli.md) > built-in defaults.  Every
command is deterministic given its inputs, flags and seed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys

from .corpus import (
    CLASS_NAMES,
    class_counts,
    clean_corpus,
    load_csv,
    split_manifest_lines,
    stratified_split,
)
from .errors import NonFiniteError, SentimenError
from .features import FeatureConfig, fit_vocabulary, transform_corpus
from .metrics import (
    comparison_rows,
    compute_report,
    confusion_matrix,
    confusion_to_csv,
    format_comparison,
    format_report,
    report_to_dict,
)
from .models import (
    LogRegModel,
    NbModel,
    SvmModel,
    TrainConfig,
    compute_class_weights,
    predict_logreg,
    predict_nb,
    predict_svm,
    train_logreg,
    train_nb,
    train_svm_ovr,
)
from .persistence import load_model, save_model
from .service import (
    ENV_BIND,
    ENV_CORS,
    ENV_MODEL_DIR,
    parse_bind,
    predict_document,
    start_service,
)

MODEL_KINDS = ("logreg", "svm", "nb")

DEFAULTS = {
    "seed": 42,
    "test_fraction": 0.2,
    "out": "out",
    "format": "text",
    "model": "logreg",
    "weight_mode": "balanced",
    "lam": 1e-4,
    "max_iter": 1000,
    "tol": 1e-6,
    "alpha": 1.0,
    "ngram_min": 1,
    "ngram_max": 2,
    "max_features": 50000,
    "min_df": 2,
    "sublinear_tf": True,
    "topk": 5,
    "bind": None,
    "cors": None,
    "models": None,
    "file": None,
    "text": None,
    "out_model": None,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="global random seed (default 42)")
    common.add_argument("--out", help="output directory (default ./out)")
    common.add_argument("--format", choices=("text", "machine"), help="output style for predict")
    common.add_argument("--config", help="JSON config file; flags override it")

    features = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    features.add_argument("--ngram-min", dest="ngram_min", type=int)
    features.add_argument("--ngram-max", dest="ngram_max", type=int)
    features.add_argument("--max-features", dest="max_features", type=int)
    features.add_argument("--min-df", dest="min_df", type=int)
    features.add_argument("--no-sublinear-tf", dest="sublinear_tf", action="store_false")

    training = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    training.add_argument("--weight-mode", dest="weight_mode", choices=("balanced", "uniform"))
    training.add_argument("--lambda", dest="lam", type=float, help="L2 strength (default 1e-4)")
    training.add_argument("--max-iter", dest="max_iter", type=int)
    training.add_argument("--tol", dest="tol", type=float)
    training.add_argument("--alpha", dest="alpha", type=float, help="naive Bayes smoothing (default 1.0)")

    parser = argparse.ArgumentParser(
        prog="sentimen",
        description="Three-class sentiment pipeline for marketplace review CSVs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", parents=[common], argument_default=argparse.SUPPRESS,
                       help="clean a raw CSV and write a stratified train/test split")
    p.add_argument("csv_in")
    p.add_argument("--test-fraction", dest="test_fraction", type=float)

    p = sub.add_parser("train", parents=[common, features, training], argument_default=argparse.SUPPRESS,
                       help="fit a vocabulary and one model on a prepared train CSV")
    p.add_argument("train_csv")
    p.add_argument("--model", choices=MODEL_KINDS)
    p.add_argument("--out-model", dest="out_model", help="envelope path (default model_<kind>.json)")

    p = sub.add_parser("evaluate", parents=[common], argument_default=argparse.SUPPRESS,
                       help="score a saved model against a labeled test CSV")
    p.add_argument("model_path")
    p.add_argument("test_csv")

    p = sub.add_parser("predict", parents=[common], argument_default=argparse.SUPPRESS,
                       help="predict labels for ad-hoc text, a file of lines, or stdin")
    p.add_argument("model_path")
    p.add_argument("text", nargs="?")
    p.add_argument("--file", dest="file", help="read one document per line")
    p.add_argument("--topk", dest="topk", type=int, help="contributing terms to show (default 5)")

    p = sub.add_parser("benchmark", parents=[common, features, training], argument_default=argparse.SUPPRESS,
                       help="prepare once, train and evaluate all three models on that split")
    p.add_argument("csv_in")
    p.add_argument("--test-fraction", dest="test_fraction", type=float)

    p = sub.add_parser("serve", parents=[common], argument_default=argparse.SUPPRESS,
                       help="serve loaded models over HTTP (see docs/http-api.md)")
    p.add_argument("--models", nargs="+", help="envelope files or a directory of them")
    p.add_argument("--bind", help="host:port (default 127.0.0.1:8000)")
    p.add_argument("--cors", help="comma-separated Origin allowlist (default *)")

    return parser


def _resolve_options(namespace) -> dict:
    """Merge flags over the optional config file over DEFAULTS."""
    provided = {k: v for k, v in vars(namespace).items() if k not in ("command",)}
    merged = dict(DEFAULTS)
    config_path = provided.pop("config", None)
    if config_path:
        with open(config_path, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise SentimenError("config file must hold a JSON object")
        unknown = sorted(set(loaded) - set(DEFAULTS))
        if unknown:
            raise SentimenError(f"unknown config keys: {', '.join(unknown)}")
        merged.update(loaded)
    merged.update(provided)
    return merged


def _feature_config(opts) -> FeatureConfig:
    return FeatureConfig(
        ngram_min=opts["ngram_min"],
        ngram_max=opts["ngram_max"],
        max_features=opts["max_features"],
        min_df=opts["min_df"],
        sublinear_tf=opts["sublinear_tf"],
    )


def _train_config(opts) -> TrainConfig:
    return TrainConfig(
        max_iter=opts["max_iter"],
        tol=opts["tol"],
        lam=opts["lam"],
        weight_mode=opts["weight_mode"],
    )


def _write_text(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_reviews_csv(path, reviews):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["review_text", "label"])
        for r in reviews:
            writer.writerow([r.text, CLASS_NAMES[int(r.label)]])


def _read_reviews(path):
    """Load and clean a labeled CSV (idempotent on already-prepared files)."""
    reviews, dropped = clean_corpus(load_csv(path))
    return reviews, dropped


def _counts_str(counts) -> str:
    return " ".join(f"{CLASS_NAMES[i]}={c}" for i, c in enumerate(counts))


def _weights_str(weights) -> str:
    return " ".join(f"{CLASS_NAMES[i]}={w:.6f}" for i, w in enumerate(weights.w))


def _predict_ordinal(model, x) -> int:
    if isinstance(model, LogRegModel):
        return predict_logreg(model, x)[0]
    if isinstance(model, SvmModel):
        return predict_svm(model, x)[0]
    return predict_nb(model, x)[0]


def _prepare_split(opts, out_dir):
    """Shared by prepare and benchmark: clean, split, write data artifacts."""
    records = load_csv(opts["csv_in"])
    reviews, dropped = clean_corpus(records)
    split = stratified_split(reviews, opts["test_fraction"], opts["seed"])

    data_dir = os.path.join(out_dir, "data")
    os.makedirs(data_dir, exist_ok=True)
    train_csv = os.path.join(data_dir, "train.csv")
    test_csv = os.path.join(data_dir, "test.csv")
    manifest = os.path.join(data_dir, "split_manifest.tsv")
    _write_reviews_csv(train_csv, split.train)
    _write_reviews_csv(test_csv, split.test)
    _write_text(manifest, "\n".join(split_manifest_lines(split)) + "\n")

    summary = {
        "input": os.path.basename(opts["csv_in"]),
        "rows_read": len(records),
        "dropped_empty": dropped,
        "kept": len(reviews),
        "seed": opts["seed"],
        "test_fraction": opts["test_fraction"],
        "class_counts": dict(zip(CLASS_NAMES, class_counts(reviews))),
        "train_counts": dict(zip(CLASS_NAMES, class_counts(split.train))),
        "test_counts": dict(zip(CLASS_NAMES, class_counts(split.test))),
    }
    _write_text(os.path.join(data_dir, "summary.json"),
                json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return split, summary, {"train_csv": train_csv, "test_csv": test_csv, "manifest": manifest}


def cmd_prepare(opts) -> int:
    out_dir = opts["out"]
    split, summary, paths = _prepare_split(opts, out_dir)
    print(f"read {summary['rows_read']} rows, dropped {summary['dropped_empty']} empty after cleaning")
    print(f"class counts: {_counts_str(class_counts(split.train + split.test))}")
    print(f"train {len(split.train)} / test {len(split.test)} (fraction {opts['test_fraction']}, seed {opts['seed']})")
    print(f"wrote {paths['train_csv']}, {paths['test_csv']}, {paths['manifest']}")
    return 0


def _train_one(kind, X, y, counts, opts, n_features):
    weights = compute_class_weights(counts, opts["weight_mode"])
    tcfg = _train_config(opts)
    if kind == "logreg":
        model = train_logreg(X, y, weights, tcfg, n_features=n_features)
    elif kind == "svm":
        model = train_svm_ovr(X, y, weights, tcfg, n_features=n_features)
    else:
        model = train_nb(X, y, opts["alpha"], n_features=n_features, n_classes=len(CLASS_NAMES))
    meta = {"seed": opts["seed"], "weight_mode": opts["weight_mode"], "lambda": opts["lam"]}
    if kind == "nb":
        meta["alpha"] = opts["alpha"]
    model.meta.update(meta)
    return model, weights


def cmd_train(opts) -> int:
    reviews, _ = _read_reviews(opts["train_csv"])
    config = _feature_config(opts)
    texts = [r.text for r in reviews]
    vocab = fit_vocabulary(texts, config)
    X = transform_corpus(texts, vocab, config)
    y = [int(r.label) for r in reviews]
    counts = class_counts(reviews)

    kind = opts["model"]
    model, weights = _train_one(kind, X, y, counts, opts, len(vocab))
    out_model = opts["out_model"] or f"model_{kind}.json"
    save_model(model, vocab, config, out_model)

    print(f"class counts: {_counts_str(counts)}")
    print(f"class weights ({opts['weight_mode']}): {_weights_str(weights)}"
          + (" (naive Bayes trains unweighted)" if kind == "nb" else ""))
    print(f"vocabulary: {len(vocab)} terms over {vocab.n_docs} documents")
    print(f"saved {kind} envelope to {out_model}")
    return 0


def _evaluate_model(model, vocab, config, reviews, model_name):
    texts = [r.text for r in reviews]
    X = transform_corpus(texts, vocab, config)
    y_true = [int(r.label) for r in reviews]
    y_pred = [_predict_ordinal(model, x) for x in X]
    cm = confusion_matrix(y_true, y_pred, len(CLASS_NAMES), CLASS_NAMES)
    return compute_report(cm, model_name)


def _write_report_files(report, out_dir, stem):
    os.makedirs(out_dir, exist_ok=True)
    _write_text(os.path.join(out_dir, f"{stem}_report.json"),
                json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n")
    _write_text(os.path.join(out_dir, f"{stem}_confusion.csv"), confusion_to_csv(report.cm))
    _write_text(os.path.join(out_dir, f"{stem}_report.txt"), format_report(report))


def cmd_evaluate(opts) -> int:
    model, vocab, config = load_model(opts["model_path"])
    reviews, _ = _read_reviews(opts["test_csv"])
    stem = os.path.splitext(os.path.basename(opts["model_path"]))[0]
    report = _evaluate_model(model, vocab, config, reviews, stem)
    _write_report_files(report, opts["out"], stem)
    print(format_report(report), end="")
    print(f"wrote report artifacts to {opts['out']}")
    return 0


def _format_predict_line(payload) -> str:
    scores = " ".join(f"{name}={value:.6f}" for name, value in payload["scores"].items())
    tops = ", ".join(f"{term}={value:+.4f}" for term, value in payload["top_features"])
    line = f"{payload['label']}\t{payload['score_kind']}\t{scores}"
    if tops:
        line += f"\ttop: {tops}"
    if "warning" in payload:
        line += "\t[warning: no known features]"
    return line


def cmd_predict(opts) -> int:
    model, vocab, config = load_model(opts["model_path"])
    if opts["text"] is not None:
        documents = [opts["text"]]
    elif opts["file"] is not None:
        with open(opts["file"], "r", encoding="utf-8") as fh:
            documents = [line.rstrip("\n") for line in fh]
    else:
        documents = [line.rstrip("\n") for line in sys.stdin]

    for doc in documents:
        payload = predict_document(model, vocab, config, doc, k=opts["topk"])
        if opts["format"] == "machine":
            print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
        else:
            print(_format_predict_line(payload))
    return 0


def _sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        digest.update(fh.read())
    return digest.hexdigest()


def cmd_benchmark(opts) -> int:
    out_dir = opts["out"]
    split, _, paths = _prepare_split(opts, out_dir)

    config = _feature_config(opts)
    train_texts = [r.text for r in split.train]
    vocab = fit_vocabulary(train_texts, config)
    X = transform_corpus(train_texts, vocab, config)
    y = [int(r.label) for r in split.train]
    counts = class_counts(split.train)

    models_dir = os.path.join(out_dir, "models")
    reports_dir = os.path.join(out_dir, "reports")
    os.makedirs(models_dir, exist_ok=True)

    reports = []
    manifest_hashes = {}
    for kind in MODEL_KINDS:
        manifest_hashes[kind] = _sha256_file(paths["manifest"])
        model, _ = _train_one(kind, X, y, counts, opts, len(vocab))
        save_model(model, vocab, config, os.path.join(models_dir, f"{kind}.json"))
        report = _evaluate_model(model, vocab, config, split.test, kind)
        _write_report_files(report, reports_dir, kind)
        reports.append(report)

    if len(set(manifest_hashes.values())) != 1:
        raise SentimenError("models saw different split manifests; benchmark aborted")

    table = format_comparison(reports)
    _write_text(os.path.join(out_dir, "comparison.txt"), table)
    _write_text(os.path.join(out_dir, "comparison.json"),
                json.dumps(comparison_rows(reports), indent=2, sort_keys=True) + "\n")
    _write_text(os.path.join(out_dir, "benchmark.json"),
                json.dumps({"seed": opts["seed"], "test_fraction": opts["test_fraction"],
                            "manifest_sha256": manifest_hashes}, indent=2, sort_keys=True) + "\n")
    print(table, end="")
    print(f"wrote benchmark artifacts to {out_dir}")
    return 0


def _collect_model_paths(opts) -> list[str]:
    entries = opts["models"]
    if entries is None:
        model_dir = os.environ.get(ENV_MODEL_DIR)
        if not model_dir:
            raise SentimenError(f"serve needs --models or {ENV_MODEL_DIR}")
        entries = [model_dir]
    paths = []
    for entry in entries:
        if os.path.isdir(entry):
            paths.extend(sorted(
                os.path.join(entry, name) for name in os.listdir(entry) if name.endswith(".json")
            ))
        else:
            paths.append(entry)
    if not paths:
        raise SentimenError("no model envelopes found to serve")
    return paths


def cmd_serve(opts) -> int:
    bind_text = opts["bind"] or os.environ.get(ENV_BIND) or "127.0.0.1:8000"
    cors_text = opts["cors"] or os.environ.get(ENV_CORS) or "*"
    cors = tuple(part.strip() for part in cors_text.split(",") if part.strip())
    service = start_service(_collect_model_paths(opts), parse_bind(bind_text), cors)
    host, port = service.address
    print(f"serving {len(service.registry.ids())} model(s) on http://{host}:{port}", flush=True)
    try:
        service.serve_forever()
    except KeyboardInterrupt:
        service.stop()
    return 0


_COMMANDS = {
    "prepare": cmd_prepare,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
    "benchmark": cmd_benchmark,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = _resolve_options(namespace)
        return _COMMANDS[namespace.command](opts)
    except NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SentimenError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
