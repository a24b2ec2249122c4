"""Classification scoring: confusion matrix, per-class P/R/F1, averages.

Two averaging modes are provided. "weighted" is the standard
support-weighted mean, sum(m_i * s_i) / sum(s_i). "paper-literal" divides
the support-weighted sum by the number of classes instead, which is not a
normalized average and can exceed 1; it exists for fidelity with the
source formulas and is never the default.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import ClassSet

AVERAGING_MODES = ("weighted", "paper-literal")

PREDICTIONS_HEADER = ["sample_id", "true_label", "predicted_label"]


class PredictionSet:
    """Rows of (sample_id, true_label, predicted_label) over a class set."""

    def __init__(self, rows, classes: ClassSet):
        self.rows = [(str(s), str(t), str(p)) for s, t, p in rows]
        self.classes = classes
        seen = set()
        for sample_id, true, pred in self.rows:
            if true not in classes:
                raise ValueError(
                    f"row {sample_id!r}: true label {true!r} not in class set"
                )
            if pred not in classes:
                raise ValueError(
                    f"row {sample_id!r}: predicted label {pred!r} not in class set"
                )
            if sample_id in seen:
                raise ValueError(f"duplicate sample_id {sample_id!r}")
            seen.add(sample_id)

    def __len__(self) -> int:
        return len(self.rows)

    @classmethod
    def read_csv(cls, path, classes: ClassSet) -> "PredictionSet":
        path = Path(path)
        rows = []
        with open(path, newline="", encoding="utf-8") as fp:
            reader = csv.reader(fp)
            header = next(reader, None)
            if header is None or [c.strip() for c in header] != PREDICTIONS_HEADER:
                raise ValueError(
                    f"{path}: expected header {','.join(PREDICTIONS_HEADER)!r}, got {header}"
                )
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 3:
                    raise ValueError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
                rows.append(tuple(row))
        return cls(rows, classes)


def confusion_matrix(preds: PredictionSet) -> np.ndarray:
    """k x k count matrix; entry (i, j) counts true class i predicted as j."""
    k = len(preds.classes)
    mat = np.zeros((k, k), dtype=np.int64)
    for _, true, pred in preds.rows:
        mat[preds.classes.index(true), preds.classes.index(pred)] += 1
    return mat


@dataclass(frozen=True)
class PerClassMetrics:
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    zero_division: np.ndarray  # True where a 0/0 was forced to 0


def per_class_metrics(confusion: np.ndarray) -> PerClassMetrics:
    """Per-class precision, recall, and F1 from a confusion matrix.

    precision_i = M[i,i] / column sum, recall_i = M[i,i] / row sum, F1 the
    harmonic mean. Any 0/0 is defined as 0 and flagged for that class.
    """
    confusion = np.asarray(confusion)
    k = confusion.shape[0]
    if confusion.shape != (k, k):
        raise ValueError(f"confusion matrix must be square, got {confusion.shape}")
    diag = np.diag(confusion).astype(np.float64)
    colsum = confusion.sum(axis=0).astype(np.float64)
    rowsum = confusion.sum(axis=1).astype(np.float64)
    flags = np.zeros(k, dtype=bool)

    precision = np.zeros(k)
    recall = np.zeros(k)
    f1 = np.zeros(k)
    for i in range(k):
        if colsum[i] > 0:
            precision[i] = diag[i] / colsum[i]
        else:
            flags[i] = True
        if rowsum[i] > 0:
            recall[i] = diag[i] / rowsum[i]
        else:
            flags[i] = True
        if precision[i] + recall[i] > 0:
            f1[i] = 2.0 * precision[i] * recall[i] / (precision[i] + recall[i])
        else:
            flags[i] = True
    return PerClassMetrics(
        precision=precision,
        recall=recall,
        f1=f1,
        support=confusion.sum(axis=1),
        zero_division=flags,
    )


def averaged_metrics(
    per_class: PerClassMetrics, mode: str = "weighted"
) -> tuple[float, float, float]:
    """(avg_precision, avg_recall, f1) under the requested averaging mode.

    F1 is the harmonic mean of the two averages, 0 when both are 0.
    """
    if mode not in AVERAGING_MODES:
        raise ValueError(f"mode must be one of {AVERAGING_MODES}, got {mode!r}")
    support = per_class.support.astype(np.float64)
    if mode == "weighted":
        denom = support.sum()
        if denom == 0:
            raise ValueError("cannot average over zero total support")
        avg_p = float((per_class.precision * support).sum() / denom)
        avg_r = float((per_class.recall * support).sum() / denom)
    else:
        k = len(support)
        avg_p = float((per_class.precision * support).sum() / k)
        avg_r = float((per_class.recall * support).sum() / k)
    f1 = 2.0 * avg_p * avg_r / (avg_p + avg_r) if avg_p + avg_r > 0 else 0.0
    return avg_p, avg_r, f1


def accuracy(confusion: np.ndarray) -> float:
    """Fraction of correct predictions: trace over total."""
    confusion = np.asarray(confusion)
    total = confusion.sum()
    if total == 0:
        raise ValueError("empty prediction set")
    return float(np.trace(confusion) / total)


@dataclass(frozen=True)
class ClassificationReport:
    classes: ClassSet
    confusion: np.ndarray
    per_class: PerClassMetrics
    accuracy: float
    avg_precision: float
    avg_recall: float
    f1: float
    averaging_mode: str

    def to_dict(self) -> dict:
        return {
            "classes": list(self.classes.names),
            "confusion": self.confusion.tolist(),
            "per_class": {
                name: {
                    "precision": float(self.per_class.precision[i]),
                    "recall": float(self.per_class.recall[i]),
                    "f1": float(self.per_class.f1[i]),
                    "support": int(self.per_class.support[i]),
                    "zero_division": bool(self.per_class.zero_division[i]),
                }
                for i, name in enumerate(self.classes.names)
            },
            "accuracy": self.accuracy,
            "avg_precision": self.avg_precision,
            "avg_recall": self.avg_recall,
            "f1": self.f1,
            "averaging_mode": self.averaging_mode,
        }

    def write_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    def render_text(self) -> str:
        width = max(12, max(len(n) for n in self.classes.names) + 2)
        lines = [
            f"{'class':<{width}}{'precision':>10}{'recall':>10}{'f1':>10}{'support':>10}"
        ]
        for i, name in enumerate(self.classes.names):
            flag = " *" if self.per_class.zero_division[i] else ""
            lines.append(
                f"{name:<{width}}"
                f"{self.per_class.precision[i]:>10.2f}"
                f"{self.per_class.recall[i]:>10.2f}"
                f"{self.per_class.f1[i]:>10.2f}"
                f"{int(self.per_class.support[i]):>10d}{flag}"
            )
        lines.append("")
        lines.append(f"accuracy       {self.accuracy:.4f}")
        lines.append(
            f"avg ({self.averaging_mode})  "
            f"precision={self.avg_precision:.4f} recall={self.avg_recall:.4f} f1={self.f1:.4f}"
        )
        if self.per_class.zero_division.any():
            lines.append("* zero division defined as 0")
        return "\n".join(lines) + "\n"


def score(preds: PredictionSet, mode: str = "weighted") -> ClassificationReport:
    """Full report for a prediction set."""
    mat = confusion_matrix(preds)
    per_class = per_class_metrics(mat)
    avg_p, avg_r, f1 = averaged_metrics(per_class, mode)
    return ClassificationReport(
        classes=preds.classes,
        confusion=mat,
        per_class=per_class,
        accuracy=accuracy(mat),
        avg_precision=avg_p,
        avg_recall=avg_r,
        f1=f1,
        averaging_mode=mode,
    )
