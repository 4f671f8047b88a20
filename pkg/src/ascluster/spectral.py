"""Abstraction level 2: eigen-embedding of L_sym and k-means on its rows."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import NormalizedLaplacian
from .quantizer.kmeans import kmeans


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # column i pairs with eigenvalues[i]


@dataclass(frozen=True)
class SpectralEmbedding:
    U: np.ndarray  # one row per unit, one column per kept eigenvector
    unit_ids: tuple[int, ...]


def symmetric_eig(matrix: np.ndarray, tol: float = 1e-10) -> EigenDecomposition:
    """Full decomposition of a symmetric matrix, ascending eigenvalues.

    Backed by LAPACK's dense symmetric solver. Deterministic sign
    convention: the first component of each eigenvector with magnitude
    above 1e-12 is made positive.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    if matrix.size and np.abs(matrix - matrix.T).max() > tol:
        raise ValueError("matrix is not symmetric")
    values, vectors = np.linalg.eigh(matrix)
    for i in range(vectors.shape[1]):
        col = vectors[:, i]
        big = np.flatnonzero(np.abs(col) > 1e-12)
        if big.size and col[big[0]] < 0:
            vectors[:, i] = -col
    return EigenDecomposition(values, vectors)


def spectral_embed(
    lap: NormalizedLaplacian, k: int, normalize_rows: bool = False
) -> SpectralEmbedding:
    """Rows of the k smallest-eigenvalue eigenvectors of L_sym.

    Rows are not renormalized by default; `normalize_rows` exists for
    experimentation only.
    """
    m = lap.L_sym.shape[0]
    if not (1 <= k <= m):
        raise ValueError(f"need 1 <= k <= {m}, got k={k}")
    eig = symmetric_eig(lap.L_sym)
    U = eig.eigenvectors[:, :k].copy()
    if normalize_rows:
        norms = np.linalg.norm(U, axis=1, keepdims=True)
        U = U / np.where(norms > 0, norms, 1.0)
    return SpectralEmbedding(U, lap.unit_ids)


def kmeans_rows(
    embedding: SpectralEmbedding, k: int, restarts: int = 10, seed: int = 0
) -> np.ndarray:
    """Cluster embedding rows into k groups; best of `restarts` by inertia.

    If the rows take exactly k distinct values, labels follow distinct-value
    identity (first-appearance order) without running Lloyd iterations.
    """
    U = embedding.U
    if k > U.shape[0]:
        raise ValueError(f"k={k} exceeds row count {U.shape[0]}")
    distinct = np.unique(U, axis=0)
    if distinct.shape[0] < k:
        raise ValueError("degenerate embedding")
    if distinct.shape[0] == k:
        seen: dict[bytes, int] = {}
        return np.array(
            [seen.setdefault(row.tobytes(), len(seen)) for row in U], dtype=np.int64
        )
    labels, _, _ = kmeans(U, k, restarts=restarts, max_iter=300, seed=seed)
    return labels.astype(np.int64)


def save_embedding_csv(embedding: SpectralEmbedding, path: str | Path) -> None:
    """One row per unit, full precision, for inspection."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in embedding.U:
            writer.writerow([repr(v) for v in row])
