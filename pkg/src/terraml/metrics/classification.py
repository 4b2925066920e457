"""Confusion-count-based evaluation measures for both task kinds.

All averaging follows the pinned conventions: 0/0 divisions yield 0, and
macro-F1 averages the per-class F1 values (not the F1 of averaged precision
and recall).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import LengthMismatch, NonBinaryInput, ShapeMismatch

MULTI_CLASS = "multi_class"
MULTI_LABEL = "multi_label"


@dataclass(frozen=True)
class ConfusionCounts:
    """Per-class true/false positive/negative counts."""

    tp: np.ndarray
    fp: np.ndarray
    fn: np.ndarray
    tn: np.ndarray

    @property
    def n_classes(self) -> int:
        return len(self.tp)

    @property
    def n_samples(self) -> int:
        return int(self.tp[0] + self.fp[0] + self.fn[0] + self.tn[0]) if self.n_classes else 0


def _as_binary_matrix(a, name: str) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2:
        raise ShapeMismatch(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.isin(a, (0, 1)).all():
        raise NonBinaryInput(f"{name} contains entries other than 0 and 1")
    return a.astype(np.int64)


def one_hot(indices, num_classes: int) -> np.ndarray:
    indices = np.asarray(indices, dtype=np.int64)
    out = np.zeros((len(indices), num_classes), dtype=np.int64)
    out[np.arange(len(indices)), indices] = 1
    return out


def confusion_counts(y_true, y_pred) -> ConfusionCounts:
    """Per-class counts from binary N×K matrices.

    Multi-class inputs must be one-hot encoded first (see :func:`one_hot`).
    """
    yt = _as_binary_matrix(y_true, "y_true")
    yp = _as_binary_matrix(y_pred, "y_pred")
    if yt.shape != yp.shape:
        raise ShapeMismatch(f"y_true {yt.shape} vs y_pred {yp.shape}")
    tp = ((yt == 1) & (yp == 1)).sum(axis=0)
    fp = ((yt == 0) & (yp == 1)).sum(axis=0)
    fn = ((yt == 1) & (yp == 0)).sum(axis=0)
    tn = ((yt == 0) & (yp == 0)).sum(axis=0)
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def _safe_div(num, den):
    num = np.asarray(num, dtype=np.float64)
    den = np.asarray(den, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return out


def _prf(tp, fp, fn):
    precision = _safe_div(tp, tp + fp)
    recall = _safe_div(tp, tp + fn)
    f1 = _safe_div(2.0 * precision * recall, precision + recall)
    return precision, recall, f1


def precision_recall_f1(counts: ConfusionCounts, averaging: str = "per-class"):
    """Precision, recall and F1 under the requested averaging.

    "per-class" returns three length-K arrays; "micro" pools counts across
    classes first; "macro" averages the per-class values.
    """
    if averaging == "per-class":
        return _prf(counts.tp, counts.fp, counts.fn)
    if averaging == "micro":
        p, r, f1 = _prf(counts.tp.sum(), counts.fp.sum(), counts.fn.sum())
        return float(p), float(r), float(f1)
    if averaging == "macro":
        p, r, f1 = _prf(counts.tp, counts.fp, counts.fn)
        return float(p.mean()), float(r.mean()), float(f1.mean())
    raise ValueError(f"unknown averaging {averaging!r}")


def accuracy(y_true, y_pred, task_kind: str) -> float:
    """Argmax accuracy (multi-class) or subset accuracy (multi-label)."""
    if task_kind == MULTI_CLASS:
        yt = np.asarray(y_true)
        yp = np.asarray(y_pred)
        if yt.ndim == 2:
            yt = yt.argmax(axis=1)
        if yp.ndim == 2:
            yp = yp.argmax(axis=1)
        if yt.shape != yp.shape:
            raise ShapeMismatch(f"y_true {yt.shape} vs y_pred {yp.shape}")
        return float((yt == yp).mean())
    if task_kind == MULTI_LABEL:
        yt = _as_binary_matrix(y_true, "y_true")
        yp = _as_binary_matrix(y_pred, "y_pred")
        if yt.shape != yp.shape:
            raise ShapeMismatch(f"y_true {yt.shape} vs y_pred {yp.shape}")
        return float((yt == yp).all(axis=1).mean())
    raise ValueError(f"unknown task kind {task_kind!r}")


@dataclass(frozen=True)
class MetricReport:
    """Full evaluation summary for one model/dataset pair."""

    task_kind: str
    class_names: tuple[str, ...]
    accuracy: float  # argmax accuracy or subset accuracy, per task_kind
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    micro_precision: float
    micro_recall: float
    micro_f1: float
    macro_precision: float
    macro_recall: float
    macro_f1: float

    @property
    def accuracy_name(self) -> str:
        return "accuracy" if self.task_kind == MULTI_CLASS else "subset_accuracy"

    @property
    def primary_metric(self) -> tuple[str, float]:
        """Metric used for best-checkpoint selection."""
        if self.task_kind == MULTI_LABEL:
            return "micro_f1", self.micro_f1
        return "accuracy", self.accuracy

    def to_dict(self) -> dict:
        per_class = {
            name: {
                "precision": float(self.precision[i]),
                "recall": float(self.recall[i]),
                "f1": float(self.f1[i]),
            }
            for i, name in enumerate(self.class_names)
        }
        return {
            "task_kind": self.task_kind,
            self.accuracy_name: self.accuracy,
            "micro_precision": self.micro_precision,
            "micro_recall": self.micro_recall,
            "micro_f1": self.micro_f1,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "per_class": per_class,
        }


def compute_report(y_true, y_pred, task_kind: str, class_names) -> MetricReport:
    """Report over decisions.

    Multi-class inputs are length-N class-index arrays; multi-label inputs are
    N×K binary matrices.
    """
    class_names = tuple(class_names)
    k = len(class_names)
    if task_kind == MULTI_CLASS:
        yt = np.asarray(y_true, dtype=np.int64)
        yp = np.asarray(y_pred, dtype=np.int64)
        if yt.shape != yp.shape:
            raise LengthMismatch(f"y_true {yt.shape} vs y_pred {yp.shape}")
        acc = accuracy(yt, yp, task_kind)
        counts = confusion_counts(one_hot(yt, k), one_hot(yp, k))
    else:
        acc = accuracy(y_true, y_pred, task_kind)
        counts = confusion_counts(y_true, y_pred)
        if counts.n_classes != k:
            raise ShapeMismatch(f"{counts.n_classes} matrix columns vs {k} class names")
    precision, recall, f1 = precision_recall_f1(counts, "per-class")
    micro = precision_recall_f1(counts, "micro")
    macro = precision_recall_f1(counts, "macro")
    return MetricReport(
        task_kind=task_kind,
        class_names=class_names,
        accuracy=acc,
        precision=precision,
        recall=recall,
        f1=f1,
        micro_precision=micro[0],
        micro_recall=micro[1],
        micro_f1=micro[2],
        macro_precision=macro[0],
        macro_recall=macro[1],
        macro_f1=macro[2],
    )
