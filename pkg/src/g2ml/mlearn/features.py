"""Feature-matrix plumbing: unit-norm scaling, CSV loading, stratified splits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class FeatureMatrix:
    rows: np.ndarray                     # (n, d) float64
    labels: np.ndarray | None = None     # (n,) int64 class indices
    class_names: tuple[str, ...] | None = None
    row_norm: str = "none"               # "unit-euclidean" | "none"

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2:
            raise ValueError("feature matrix must be 2-dimensional")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape[0] != self.rows.shape[0]:
                raise ValueError("label/row count mismatch")
        if self.row_norm == "unit-euclidean":
            norms = np.linalg.norm(self.rows, axis=1)
            if not np.allclose(norms, 1.0, atol=1e-12):
                raise ValueError("rows are not unit-normalized")

    def __len__(self) -> int:
        return self.rows.shape[0]

    def subset(self, idx: np.ndarray) -> "FeatureMatrix":
        labels = None if self.labels is None else self.labels[idx]
        return FeatureMatrix(self.rows[idx], labels, self.class_names,
                             self.row_norm)


def normalize_rows(raw: np.ndarray, labels=None,
                   class_names=None) -> FeatureMatrix:
    """Scale each sample to unit Euclidean norm; zero rows are rejected."""
    raw = np.asarray(raw, dtype=np.float64)
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ValueError("cannot unit-normalize an all-zero row")
    return FeatureMatrix(raw / norms, labels, class_names,
                         row_norm="unit-euclidean")


def load_features_csv(path) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    """Read a feature CSV with a trailing class column.

    Class indices follow first appearance order of the class names.
    """
    rows: list[list[float]] = []
    labels: list[int] = []
    names: list[str] = []
    index: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.strip():
            raise ValueError("empty feature file")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            *values, cls = line.split(",")
            if cls not in index:
                index[cls] = len(names)
                names.append(cls)
            rows.append([float(v) for v in values])
            labels.append(index[cls])
    return (np.asarray(rows, dtype=np.float64),
            np.asarray(labels, dtype=np.int64), tuple(names))


def train_test_split(data: FeatureMatrix, fraction: float, seed: int
                     ) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Deterministic stratified split; `fraction` goes to the test side."""
    if not 0 < fraction < 1:
        raise ValueError("fraction must be strictly between 0 and 1")
    if data.labels is None:
        raise ValueError("stratified split needs labels")
    rng = np.random.default_rng(np.random.SeedSequence([seed, 17]))
    test_idx = []
    train_idx = []
    for cls in np.unique(data.labels):
        members = np.flatnonzero(data.labels == cls)
        if len(members) < 2:
            raise ValueError(f"class {cls} has fewer than 2 members")
        members = members[rng.permutation(len(members))]
        n_test = int(round(fraction * len(members)))
        n_test = min(max(n_test, 1), len(members) - 1)
        test_idx.extend(members[:n_test])
        train_idx.extend(members[n_test:])
    train_idx = np.sort(np.asarray(train_idx))
    test_idx = np.sort(np.asarray(test_idx))
    return data.subset(train_idx), data.subset(test_idx)
