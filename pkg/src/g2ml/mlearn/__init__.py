"""From-scratch learning suite over the invariant feature matrix."""

import json

from .cluster import (GMMResult, KMeansResult, gmm_spherical, kmeans)
from .features import (FeatureMatrix, load_features_csv, normalize_rows,
                       train_test_split)
from .forest import DecisionTree, RandomForest
from .knn import KNNModel, knn_predict
from .metrics import (MetricsReport, adjusted_rand_index, confusion_matrix,
                      evaluate, format_report_table, matched_cluster_accuracy)

MODEL_FORMAT = "g2ml-model/1"


def save_model(model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model.to_json_obj(), fh)
        fh.write("\n")


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("format") != MODEL_FORMAT:
        raise ValueError(f"unsupported model format {obj.get('format')!r}")
    if obj.get("kind") == "forest":
        return RandomForest.from_json_obj(obj)
    if obj.get("kind") == "knn":
        return KNNModel.from_json_obj(obj)
    raise ValueError(f"cannot load model kind {obj.get('kind')!r}")


__all__ = [
    "FeatureMatrix", "normalize_rows", "load_features_csv",
    "train_test_split", "knn_predict", "KNNModel", "DecisionTree",
    "RandomForest",
    "kmeans", "KMeansResult", "gmm_spherical", "GMMResult",
    "confusion_matrix", "MetricsReport", "evaluate", "format_report_table",
    "adjusted_rand_index", "matched_cluster_accuracy",
    "save_model", "load_model", "MODEL_FORMAT",
]
