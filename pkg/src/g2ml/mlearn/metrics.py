"""Classifier and clustering evaluation: confusion matrix, P/R/F1, ARI."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np


def confusion_matrix(truth, predicted, n_classes: int | None = None
                     ) -> np.ndarray:
    """Counts with rows indexed by true class, columns by predicted class."""
    truth = np.asarray(truth, dtype=np.int64)
    predicted = np.asarray(predicted, dtype=np.int64)
    if truth.shape != predicted.shape:
        raise ValueError("length mismatch between truth and predictions")
    if n_classes is None:
        n_classes = int(max(truth.max(), predicted.max())) + 1
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (truth, predicted), 1)
    return cm


@dataclass
class MetricsReport:
    accuracy: float
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    macro_precision: float
    macro_recall: float
    macro_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float

    @classmethod
    def from_confusion(cls, cm: np.ndarray) -> "MetricsReport":
        cm = np.asarray(cm, dtype=np.int64)
        total = cm.sum()
        diag = np.diag(cm).astype(np.float64)
        col = cm.sum(axis=0).astype(np.float64)
        row = cm.sum(axis=1).astype(np.float64)
        precision = np.divide(diag, col, out=np.zeros_like(diag),
                              where=col > 0)
        recall = np.divide(diag, row, out=np.zeros_like(diag), where=row > 0)
        pr = precision + recall
        f1 = np.divide(2.0 * precision * recall, pr,
                       out=np.zeros_like(diag), where=pr > 0)
        support = cm.sum(axis=1)
        w = support / total if total else support.astype(np.float64)
        return cls(
            accuracy=float(diag.sum() / total) if total else 0.0,
            precision=precision, recall=recall, f1=f1, support=support,
            macro_precision=float(precision.mean()),
            macro_recall=float(recall.mean()),
            macro_f1=float(f1.mean()),
            weighted_precision=float((precision * w).sum()),
            weighted_recall=float((recall * w).sum()),
            weighted_f1=float((f1 * w).sum()),
        )

    def to_json_obj(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision.tolist(),
            "recall": self.recall.tolist(),
            "f1": self.f1.tolist(),
            "support": self.support.tolist(),
            "macro": {"precision": self.macro_precision,
                      "recall": self.macro_recall, "f1": self.macro_f1},
            "weighted": {"precision": self.weighted_precision,
                         "recall": self.weighted_recall,
                         "f1": self.weighted_f1},
        }


def evaluate(predicted, truth, n_classes: int | None = None
             ) -> tuple[np.ndarray, MetricsReport]:
    cm = confusion_matrix(truth, predicted, n_classes)
    return cm, MetricsReport.from_confusion(cm)


def format_report_table(report: MetricsReport,
                        class_names: tuple[str, ...] | None = None) -> str:
    """Aligned classification-report text, one row per class."""
    k = len(report.support)
    names = class_names or tuple(str(i + 1) for i in range(k))
    width = max(12, max(len(n) for n in names) + 2)
    lines = [f"{'Class':<{width}}{'Precision':>10}{'Recall':>10}"
             f"{'F1-Score':>10}{'Support':>10}"]
    for i in range(k):
        lines.append(f"{names[i]:<{width}}{report.precision[i]:>10.2f}"
                     f"{report.recall[i]:>10.2f}{report.f1[i]:>10.2f}"
                     f"{report.support[i]:>10d}")
    total = int(report.support.sum())
    lines.append(f"{'Accuracy':<{width}}{report.accuracy:>30.2f}"
                 f"{total:>10d}")
    lines.append(f"{'Macro Avg':<{width}}{report.macro_precision:>10.2f}"
                 f"{report.macro_recall:>10.2f}{report.macro_f1:>10.2f}"
                 f"{total:>10d}")
    lines.append(f"{'Weighted Avg':<{width}}{report.weighted_precision:>10.2f}"
                 f"{report.weighted_recall:>10.2f}{report.weighted_f1:>10.2f}"
                 f"{total:>10d}")
    return "\n".join(lines)


def adjusted_rand_index(a, b) -> float:
    """Chance-corrected partition agreement from the contingency table."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape:
        raise ValueError("length mismatch between labelings")
    n = a.shape[0]
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)

    def comb2(v: int) -> int:
        return v * (v - 1) // 2

    sum_ij = int(sum(comb2(int(v)) for v in table.ravel()))
    sum_a = int(sum(comb2(int(v)) for v in table.sum(axis=1)))
    sum_b = int(sum(comb2(int(v)) for v in table.sum(axis=0)))
    total = comb2(n)
    if total == 0:
        return 1.0
    expected = Fraction(sum_a * sum_b, total)
    maximum = Fraction(sum_a + sum_b, 2)
    if maximum == expected:
        return 1.0  # both partitions trivial, hence identical
    return float((sum_ij - expected) / (maximum - expected))


def matched_cluster_accuracy(clusters, truth) -> float:
    """Accuracy under the best cluster-to-class assignment.

    Exhaustive over cluster permutations; intended for small k.
    """
    clusters = np.asarray(clusters, dtype=np.int64)
    truth = np.asarray(truth, dtype=np.int64)
    if clusters.shape != truth.shape:
        raise ValueError("length mismatch")
    ks = int(clusters.max()) + 1
    kt = int(truth.max()) + 1
    k = max(ks, kt)
    if k > 8:
        raise ValueError("matching by permutations is limited to k <= 8")
    table = np.zeros((k, k), dtype=np.int64)
    np.add.at(table, (clusters, truth), 1)
    best = 0
    for perm in permutations(range(k)):
        hits = sum(int(table[j, perm[j]]) for j in range(k))
        best = max(best, hits)
    return best / len(truth)
