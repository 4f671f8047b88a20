"""Lloyd's k-means with k-means++ seeding; doubles as a quantizer."""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset
from ..network import Network


def _kmeans_pp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]))
    centers[0] = X[rng.integers(n)]
    closest = ((X - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = closest.sum()
        if total == 0.0:
            # all points coincide with chosen centers; any point will do
            centers[j] = X[rng.integers(n)]
            continue
        r = rng.random() * total
        idx = int(np.searchsorted(np.cumsum(closest), r))
        idx = min(idx, n - 1)
        centers[j] = X[idx]
        closest = np.minimum(closest, ((X - centers[j]) ** 2).sum(axis=1))
    return centers


def _assign(X: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # squared distances to every center; argmin ties go to the lowest index
    d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = d2.argmin(axis=1)
    return labels, d2[np.arange(X.shape[0]), labels]


def lloyd(
    X: np.ndarray, centers: np.ndarray, max_iter: int = 300
) -> tuple[np.ndarray, np.ndarray, float]:
    """Iterate assignment/update until the assignment stops changing.

    Empty clusters are repaired by reseeding the centroid at the point
    currently farthest from its own centroid, keeping the cluster count
    constant.
    """
    k = centers.shape[0]
    centers = centers.copy()
    labels = np.full(X.shape[0], -1)
    for _ in range(max_iter):
        new_labels, d2 = _assign(X, centers)
        for j in range(k):
            mask = new_labels == j
            if mask.any():
                centers[j] = X[mask].mean(axis=0)
            else:
                far = int(d2.argmax())
                centers[j] = X[far]
                new_labels[far] = j
                d2[far] = 0.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    labels, d2 = _assign(X, centers)
    return labels, centers, float(d2.sum())


def kmeans(
    X: np.ndarray,
    k: int,
    restarts: int = 10,
    max_iter: int = 300,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Best-of-restarts k-means; returns (labels, centers, inertia)."""
    if not (1 <= k <= X.shape[0]):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={X.shape[0]}")
    best = None
    for child in np.random.SeedSequence(seed).spawn(max(restarts, 1)):
        rng = np.random.default_rng(child)
        labels, centers, inertia = lloyd(X, _kmeans_pp_init(X, k, rng), max_iter)
        if best is None or inertia < best[2]:
            best = (labels, centers, inertia)
    return best


def kmeans_fit(dataset: Dataset, m: int, max_iter: int = 300, seed: int = 0) -> Network:
    """Quantize a dataset into `m` centroid units with no edges.

    The downstream similarity step treats the edgeless network as fully
    connected.
    """
    if not (1 <= m <= dataset.n):
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={dataset.n}")
    _, centers, _ = kmeans(dataset.points, m, restarts=1, max_iter=max_iter, seed=seed)
    net = Network(d=dataset.d)
    for uid in range(m):
        net.add_unit(uid, centers[uid])
    return net
