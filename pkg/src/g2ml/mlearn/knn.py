"""k-nearest-neighbor classification with Manhattan or Euclidean distance."""

from __future__ import annotations

import numpy as np

from .features import FeatureMatrix

METRICS = ("manhattan", "euclidean")


class KNNModel:
    """Instance-based model: stores the training matrix with (k, metric)."""

    def __init__(self, k: int = 5, metric: str = "manhattan"):
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}")
        self.k = k
        self.metric = metric
        self.train: FeatureMatrix | None = None

    def fit(self, train: FeatureMatrix) -> "KNNModel":
        if train.labels is None or len(train) == 0:
            raise ValueError("empty or unlabeled training set")
        if not 1 <= self.k <= len(train):
            raise ValueError(f"k must be in [1, {len(train)}]")
        self.train = train
        return self

    def predict(self, queries: np.ndarray) -> np.ndarray:
        if self.train is None:
            raise ValueError("model is not fitted")
        return knn_predict(self.train, queries, self.k, self.metric)

    def to_json_obj(self) -> dict:
        if self.train is None:
            raise ValueError("model is not fitted")
        return {"format": "g2ml-model/1", "kind": "knn", "k": self.k,
                "metric": self.metric,
                "rows": self.train.rows.tolist(),
                "labels": self.train.labels.tolist(),
                "class_names": list(self.train.class_names or []),
                "row_norm": self.train.row_norm}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "KNNModel":
        model = cls(int(obj["k"]), obj["metric"])
        names = tuple(obj.get("class_names") or ()) or None
        model.train = FeatureMatrix(
            np.asarray(obj["rows"], dtype=np.float64),
            np.asarray(obj["labels"], dtype=np.int64),
            names, obj.get("row_norm", "none"))
        return model


def _distances(queries: np.ndarray, train: np.ndarray, metric: str
               ) -> np.ndarray:
    diff = queries[:, None, :] - train[None, :, :]
    if metric == "manhattan":
        return np.abs(diff).sum(axis=2)
    if metric == "euclidean":
        return np.sqrt((diff ** 2).sum(axis=2))
    raise ValueError(f"unknown metric {metric!r}")


def knn_predict(train: FeatureMatrix, queries: np.ndarray, k: int,
                metric: str = "manhattan", chunk: int = 256) -> np.ndarray:
    """Majority vote over the k nearest training rows.

    Vote ties break toward the smallest summed distance among the tied
    classes, then toward the lowest class index.  Equidistant training rows
    are ordered by index, so predictions are deterministic.
    """
    if train.labels is None:
        raise ValueError("training matrix needs labels")
    n = len(train)
    if n == 0:
        raise ValueError("empty training set")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    queries = np.asarray(queries, dtype=np.float64)
    n_classes = int(train.labels.max()) + 1
    out = np.empty(queries.shape[0], dtype=np.int64)
    order_tiebreak = np.arange(n)
    for start in range(0, queries.shape[0], chunk):
        block = queries[start:start + chunk]
        dist = _distances(block, train.rows, metric)
        # deterministic k nearest: sort by (distance, training index)
        nearest = np.lexsort((np.broadcast_to(order_tiebreak, dist.shape),
                              dist), axis=1)[:, :k]
        for i in range(block.shape[0]):
            idx = nearest[i]
            labels = train.labels[idx]
            votes = np.bincount(labels, minlength=n_classes)
            best = votes.max()
            tied = np.flatnonzero(votes == best)
            if len(tied) == 1:
                out[start + i] = tied[0]
                continue
            sums = np.array([dist[i, idx[labels == c]].sum() for c in tied])
            out[start + i] = tied[np.argmin(sums)]
    return out
