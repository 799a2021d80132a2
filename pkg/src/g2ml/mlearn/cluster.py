"""Lloyd's k-means with k-means++ seeding and a spherical Gaussian mixture.

Both are deterministic for a fixed seed.  The mixture model starts from the
k-means assignment, keeps one variance scalar per component, and floors it
so degenerate point clouds converge instead of collapsing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VARIANCE_FLOOR = 1e-10
GMM_TOL = 1e-8
GMM_MAX_ITER = 500


def _sq_dists(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    return ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def _kmeans_pp_init(x: np.ndarray, k: int, rng: np.random.Generator
                    ) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[rng.integers(n)]
    closest = ((x - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = closest.sum()
        if total == 0:
            centers[j] = x[rng.integers(n)]
        else:
            probs = closest / total
            centers[j] = x[rng.choice(n, p=probs)]
        closest = np.minimum(closest, ((x - centers[j]) ** 2).sum(axis=1))
    return centers


def _lloyd(x: np.ndarray, centers: np.ndarray, max_iter: int
           ) -> tuple[np.ndarray, np.ndarray, float]:
    labels = np.full(x.shape[0], -1, dtype=np.int64)
    for _ in range(max_iter):
        d = _sq_dists(x, centers)
        new_labels = np.argmin(d, axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(centers.shape[0]):
            members = x[labels == j]
            if len(members):
                centers[j] = members.mean(axis=0)
            else:
                # re-seed an empty cluster on the farthest point
                centers[j] = x[np.argmax(d.min(axis=1))]
    wcss = float(_sq_dists(x, centers)[np.arange(x.shape[0]), labels].sum())
    return labels, centers, wcss


@dataclass
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    wcss: float

    def to_json_obj(self) -> dict:
        return {"format": "g2ml-model/1", "kind": "kmeans",
                "centers": self.centers.tolist(), "wcss": self.wcss}


def kmeans(x: np.ndarray, k: int, seed: int = 0, restarts: int = 10,
           max_iter: int = 300) -> KMeansResult:
    """Best of `restarts` seeded k-means++ runs by within-cluster sum of squares."""
    x = np.asarray(x, dtype=np.float64)
    if not 1 <= k <= x.shape[0]:
        raise ValueError(f"k must be in [1, {x.shape[0]}]")
    best: KMeansResult | None = None
    for r in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence([seed, r]))
        centers = _kmeans_pp_init(x, k, rng)
        labels, centers, wcss = _lloyd(x, centers, max_iter)
        if best is None or wcss < best.wcss:
            best = KMeansResult(labels, centers, wcss)
    return best


@dataclass
class GMMResult:
    labels: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    weights: np.ndarray
    log_likelihood: float
    iterations: int

    def to_json_obj(self) -> dict:
        return {"format": "g2ml-model/1", "kind": "gmm",
                "means": self.means.tolist(),
                "variances": self.variances.tolist(),
                "weights": self.weights.tolist(),
                "log_likelihood": self.log_likelihood}


def _log_responsibilities(x, means, variances, weights):
    d = x.shape[1]
    sq = _sq_dists(x, means)
    log_prob = (-0.5 * d * np.log(2.0 * np.pi * variances)[None, :]
                - sq / (2.0 * variances)[None, :]
                + np.log(weights)[None, :])
    norm = np.logaddexp.reduce(log_prob, axis=1)
    return log_prob - norm[:, None], norm


def gmm_spherical(x: np.ndarray, k: int, seed: int = 0,
                  max_iter: int = GMM_MAX_ITER, tol: float = GMM_TOL
                  ) -> GMMResult:
    """EM for a mixture of spherical Gaussians, hard labels by max posterior."""
    x = np.asarray(x, dtype=np.float64)
    n, d = x.shape
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    init = kmeans(x, k, seed=seed, restarts=5)
    means = init.centers.copy()
    variances = np.empty(k)
    weights = np.empty(k)
    for j in range(k):
        members = x[init.labels == j]
        if len(members) == 0:
            members = x
        variances[j] = ((members - means[j]) ** 2).sum() / (len(members) * d)
        weights[j] = max(len(members), 1) / n
    variances = np.maximum(variances, VARIANCE_FLOOR)
    weights /= weights.sum()

    prev = -np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        log_resp, norm = _log_responsibilities(x, means, variances, weights)
        loglik = float(norm.sum())
        resp = np.exp(log_resp)
        nk = resp.sum(axis=0)
        nk = np.maximum(nk, 1e-300)
        weights = nk / n
        means = (resp.T @ x) / nk[:, None]
        sq = _sq_dists(x, means)
        variances = np.maximum((resp * sq).sum(axis=0) / (nk * d),
                               VARIANCE_FLOOR)
        if loglik - prev < tol:
            prev = loglik
            break
        prev = loglik
    log_resp, _ = _log_responsibilities(x, means, variances, weights)
    labels = np.argmax(log_resp, axis=1)
    return GMMResult(labels, means, variances, weights, prev, iterations)
