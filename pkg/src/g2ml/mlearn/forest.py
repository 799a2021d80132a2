"""Random forest: Gini-split decision trees on bootstrap samples.

Each split draws a random subset of sqrt(d) features; trees grow to purity.
Tree RNG streams are keyed by (seed, tree index) so the forest is identical
no matter how fitting is scheduled.
"""

from __future__ import annotations

import numpy as np

from .features import FeatureMatrix

_LEAF = -1


def _best_split(x: np.ndarray, y: np.ndarray, features: np.ndarray,
                n_classes: int):
    """Lowest weighted Gini over candidate thresholds of the given features."""
    m = x.shape[0]
    best = None  # (impurity, feature, threshold)
    total = np.bincount(y, minlength=n_classes).astype(np.float64)
    for f in features:
        vals = x[:, f]
        order = np.argsort(vals, kind="stable")
        sv = vals[order]
        cuts = np.flatnonzero(sv[:-1] < sv[1:])
        if len(cuts) == 0:
            continue
        onehot = np.zeros((m, n_classes))
        onehot[np.arange(m), y[order]] = 1.0
        left = np.cumsum(onehot, axis=0)[cuts]
        right = total - left
        nl = (cuts + 1).astype(np.float64)
        nr = m - nl
        gini_l = 1.0 - ((left / nl[:, None]) ** 2).sum(axis=1)
        gini_r = 1.0 - ((right / nr[:, None]) ** 2).sum(axis=1)
        weighted = (nl * gini_l + nr * gini_r) / m
        j = int(np.argmin(weighted))
        if best is None or weighted[j] < best[0]:
            best = (float(weighted[j]), int(f),
                    float((sv[cuts[j]] + sv[cuts[j] + 1]) / 2.0))
    return best


def _majority(y: np.ndarray, n_classes: int) -> int:
    return int(np.argmax(np.bincount(y, minlength=n_classes)))


class DecisionTree:
    """Array-backed binary tree; samples go left on value <= threshold."""

    def __init__(self):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[int] = []

    def _new_node(self) -> int:
        self.feature.append(_LEAF)
        self.threshold.append(0.0)
        self.left.append(_LEAF)
        self.right.append(_LEAF)
        self.value.append(_LEAF)
        return len(self.feature) - 1

    def fit(self, x: np.ndarray, y: np.ndarray, n_classes: int,
            max_features: int, rng: np.random.Generator) -> "DecisionTree":
        stack = [(self._new_node(), np.arange(x.shape[0]))]
        while stack:
            node, idx = stack.pop()
            yn = y[idx]
            if len(idx) < 2 or np.all(yn == yn[0]):
                self.value[node] = _majority(yn, n_classes)
                continue
            features = rng.choice(x.shape[1], size=max_features, replace=False)
            split = _best_split(x[idx], yn, features, n_classes)
            if split is None:
                self.value[node] = _majority(yn, n_classes)
                continue
            _, f, thr = split
            mask = x[idx, f] <= thr
            self.feature[node] = f
            self.threshold[node] = thr
            l, r = self._new_node(), self._new_node()
            self.left[node], self.right[node] = l, r
            stack.append((l, idx[mask]))
            stack.append((r, idx[~mask]))
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        feature = np.asarray(self.feature)
        threshold = np.asarray(self.threshold)
        left = np.asarray(self.left)
        right = np.asarray(self.right)
        value = np.asarray(self.value)
        node = np.zeros(x.shape[0], dtype=np.int64)
        active = feature[node] != _LEAF
        while np.any(active):
            cur = node[active]
            go_left = x[active, feature[cur]] <= threshold[cur]
            node[active] = np.where(go_left, left[cur], right[cur])
            active = feature[node] != _LEAF
        return value[node]

    def to_json_obj(self) -> dict:
        return {"feature": self.feature, "threshold": self.threshold,
                "left": self.left, "right": self.right, "value": self.value}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DecisionTree":
        tree = cls()
        tree.feature = [int(v) for v in obj["feature"]]
        tree.threshold = [float(v) for v in obj["threshold"]]
        tree.left = [int(v) for v in obj["left"]]
        tree.right = [int(v) for v in obj["right"]]
        tree.value = [int(v) for v in obj["value"]]
        return tree


class RandomForest:
    def __init__(self, n_trees: int = 200, seed: int = 0,
                 max_features: int | None = None):
        if n_trees < 1:
            raise ValueError("need at least one tree")
        self.n_trees = n_trees
        self.seed = seed
        self.max_features = max_features
        self.n_classes = 0
        self.trees: list[DecisionTree] = []

    def fit(self, train: FeatureMatrix) -> "RandomForest":
        if train.labels is None or len(train) == 0:
            raise ValueError("empty or unlabeled training set")
        x, y = train.rows, train.labels
        self.n_classes = int(y.max()) + 1
        d = x.shape[1]
        max_features = self.max_features or max(1, int(np.sqrt(d)))
        self.trees = []
        for t in range(self.n_trees):
            rng = np.random.default_rng(
                np.random.SeedSequence([self.seed, t]))
            boot = rng.integers(0, x.shape[0], size=x.shape[0])
            tree = DecisionTree().fit(x[boot], y[boot], self.n_classes,
                                      max_features, rng)
            self.trees.append(tree)
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        if not self.trees:
            raise ValueError("forest is not fitted")
        x = np.asarray(x, dtype=np.float64)
        votes = np.zeros((x.shape[0], self.n_classes), dtype=np.int64)
        for tree in self.trees:
            pred = tree.predict(x)
            votes[np.arange(x.shape[0]), pred] += 1
        return np.argmax(votes, axis=1)  # argmax ties toward lowest class

    def to_json_obj(self) -> dict:
        return {"format": "g2ml-model/1", "kind": "forest",
                "n_trees": self.n_trees, "seed": self.seed,
                "max_features": self.max_features,
                "n_classes": self.n_classes,
                "trees": [t.to_json_obj() for t in self.trees]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RandomForest":
        forest = cls(obj["n_trees"], obj["seed"], obj.get("max_features"))
        forest.n_classes = obj["n_classes"]
        forest.trees = [DecisionTree.from_json_obj(t) for t in obj["trees"]]
        return forest
