"""Evaluation suite: confusion matrix, per-class P/R/F1, macro and weighted F1.

Zero-division convention: a precision, recall or F1 whose denominator is zero
is reported as 0, and macro F1 still averages over all classes (a zero-support
class therefore pulls the macro mean down).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyMatrixError, LengthMismatchError, OrdinalOutOfRangeError


@dataclass(eq=False)
class ConfusionMatrix:
    """Counts with rows = true class ordinal, columns = predicted ordinal."""

    m: np.ndarray
    class_names: tuple[str, ...]

    @property
    def n_classes(self) -> int:
        return self.m.shape[0]

    @property
    def total(self) -> int:
        return int(self.m.sum())


@dataclass(eq=False)
class EvalReport:
    """All derived metrics for one model on one test slice."""

    accuracy: float
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    macro_f1: float
    weighted_f1: float
    support: np.ndarray
    cm: ConfusionMatrix
    model_name: str = ""


def confusion_matrix(y_true, y_pred, n_classes: int, class_names=None) -> ConfusionMatrix:
    """Tally (true, predicted) ordinal pairs into an ``n_classes^2`` matrix."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if len(y_true) != len(y_pred):
        raise LengthMismatchError(f"y_true has {len(y_true)} items, y_pred has {len(y_pred)}")
    if len(y_true) == 0:
        raise EmptyMatrixError("no samples to tally")
    for arr, name in ((y_true, "y_true"), (y_pred, "y_pred")):
        if arr.min() < 0 or arr.max() >= n_classes:
            raise OrdinalOutOfRangeError(f"{name} contains ordinals outside [0, {n_classes})")
    m = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(m, (y_true, y_pred), 1)
    if class_names is None:
        class_names = tuple(str(c) for c in range(n_classes))
    return ConfusionMatrix(m=m, class_names=tuple(class_names))


def compute_report(cm: ConfusionMatrix, model_name: str = "") -> EvalReport:
    """Derive accuracy, per-class P/R/F1, macro F1 and support-weighted F1."""
    m = cm.m.astype(np.float64)
    total = m.sum()
    if total == 0:
        raise EmptyMatrixError("confusion matrix has zero total count")
    diag = np.diag(m)
    col_sums = m.sum(axis=0)
    row_sums = m.sum(axis=1)

    with np.errstate(divide="ignore", invalid="ignore"):
        precision = np.where(col_sums > 0, diag / col_sums, 0.0)
        recall = np.where(row_sums > 0, diag / row_sums, 0.0)
        pr_sum = precision + recall
        f1 = np.where(pr_sum > 0, 2.0 * precision * recall / np.where(pr_sum > 0, pr_sum, 1.0), 0.0)

    accuracy = float(diag.sum() / total)
    macro_f1 = float(f1.mean())
    weighted_f1 = float(np.dot(row_sums, f1) / total)
    return EvalReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        macro_f1=macro_f1,
        weighted_f1=weighted_f1,
        support=row_sums.astype(np.int64),
        cm=cm,
        model_name=model_name,
    )


def format_comparison(reports) -> str:
    """Render one aligned table row per report, metrics to 4 decimals.

    Accepts any objects carrying ``model_name``, ``accuracy``, ``macro_f1``
    and ``weighted_f1``; rows keep input order.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("need at least one report")
    headers = ("Model", "Accuracy", "Macro F1", "Weighted F1")
    rows = [
        (r.model_name, f"{r.accuracy:.4f}", f"{r.macro_f1:.4f}", f"{r.weighted_f1:.4f}")
        for r in reports
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) if i == 0 else h.rjust(widths[i]) for i, h in enumerate(headers))
    ]
    for row in rows:
        lines.append(
            "  ".join(cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i]) for i, cell in enumerate(row))
        )
    return "\n".join(lines) + "\n"


def comparison_rows(reports) -> list[dict]:
    """Machine-readable companion of :func:`format_comparison`."""
    return [
        {
            "model": r.model_name,
            "accuracy": r.accuracy,
            "macro_f1": r.macro_f1,
            "weighted_f1": r.weighted_f1,
        }
        for r in reports
    ]


def report_to_dict(report: EvalReport) -> dict:
    """Serialize a report (confusion matrix included) to plain JSON types."""
    return {
        "model": report.model_name,
        "accuracy": report.accuracy,
        "macro_f1": report.macro_f1,
        "weighted_f1": report.weighted_f1,
        "per_class": [
            {
                "class": name,
                "precision": float(report.precision[i]),
                "recall": float(report.recall[i]),
                "f1": float(report.f1[i]),
                "support": int(report.support[i]),
            }
            for i, name in enumerate(report.cm.class_names)
        ],
        "confusion_matrix": report.cm.m.tolist(),
        "class_names": list(report.cm.class_names),
    }


def confusion_to_csv(cm: ConfusionMatrix) -> str:
    """CSV rendering: rows = true class, columns = predicted class."""
    header = "true\\pred," + ",".join(cm.class_names)
    lines = [header]
    for i, name in enumerate(cm.class_names):
        lines.append(name + "," + ",".join(str(int(v)) for v in cm.m[i]))
    return "\n".join(lines) + "\n"


def format_report(report: EvalReport) -> str:
    """Human-readable per-class breakdown plus the three headline metrics."""
    lines = []
    name_w = max(len(n) for n in report.cm.class_names)
    lines.append(f"model: {report.model_name}" if report.model_name else "model: (unnamed)")
    lines.append(f"{'class'.ljust(name_w)}  precision  recall      f1  support")
    for i, cls in enumerate(report.cm.class_names):
        lines.append(
            f"{cls.ljust(name_w)}  {report.precision[i]:9.4f}  {report.recall[i]:6.4f}  {report.f1[i]:6.4f}  {int(report.support[i]):7d}"
        )
    lines.append(f"accuracy    {report.accuracy:.4f}")
    lines.append(f"macro F1    {report.macro_f1:.4f}")
    lines.append(f"weighted F1 {report.weighted_f1:.4f}")
    return "\n".join(lines) + "\n"
