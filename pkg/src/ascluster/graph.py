"""Similarity matrix over network units and its normalized Laplacian."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .network import Network


@dataclass(frozen=True)
class SimilarityGraph:
    """Symmetric nonnegative similarity matrix with zero diagonal.

    `unit_ids[i]` is the network unit behind row/column i.
    """

    A: np.ndarray
    sigma: float
    topology_used: bool
    unit_ids: tuple[int, ...]


@dataclass(frozen=True)
class NormalizedLaplacian:
    L_sym: np.ndarray
    degrees: np.ndarray
    unit_ids: tuple[int, ...]


def similarity_from_network(
    network: Network, sigma: float, use_topology: bool
) -> SimilarityGraph:
    """Gaussian similarity exp(-dist^2 / (2 sigma^2)) between unit pairs.

    With `use_topology`, entries are kept only where a network edge joins
    the pair; otherwise every off-diagonal pair gets a similarity. The
    diagonal is zero either way.
    """
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    if network.m < 2:
        raise ValueError("need at least 2 units")
    ids, W = network.weight_matrix()
    A = gaussian_similarity(W, sigma)
    if use_topology:
        index = {uid: i for i, uid in enumerate(ids)}
        mask = np.zeros_like(A, dtype=bool)
        for a, b in network.edges:
            i, j = index[a], index[b]
            mask[i, j] = mask[j, i] = True
        A = np.where(mask, A, 0.0)
    return SimilarityGraph(A, sigma, use_topology, tuple(ids))


def gaussian_similarity(points: np.ndarray, sigma: float) -> np.ndarray:
    """Fully-connected Gaussian similarity matrix with zero diagonal."""
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    d2 = ((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
    A = np.exp(-d2 / (2.0 * sigma * sigma))
    np.fill_diagonal(A, 0.0)
    return A


def normalized_laplacian(graph: SimilarityGraph) -> NormalizedLaplacian:
    """L_sym = D^{-1/2} (D - A) D^{-1/2} with d_i the row sums of A.

    Undefined for zero-degree rows; prune isolated units first.
    """
    degrees = graph.A.sum(axis=1)
    if (degrees <= 0).any():
        raise ValueError("isolated unit; prune before Laplacian")
    inv_sqrt = 1.0 / np.sqrt(degrees)
    L = np.diag(degrees) - graph.A
    L_sym = inv_sqrt[:, None] * L * inv_sqrt[None, :]
    L_sym = (L_sym + L_sym.T) / 2.0  # kill rounding asymmetry
    return NormalizedLaplacian(L_sym, degrees, graph.unit_ids)


def prune_isolated(network: Network) -> tuple[Network, list[int]]:
    """Drop units with no edges; returns (pruned network, removed ids).

    Needed because the normalized Laplacian is undefined at degree zero.
    Points quantized to a removed unit must be rerouted to the nearest
    surviving unit by the caller.
    """
    degrees = {uid: 0 for uid in network.units}
    for a, b in network.edges:
        degrees[a] += 1
        degrees[b] += 1
    isolated = sorted(uid for uid, deg in degrees.items() if deg == 0)
    if len(isolated) == network.m:
        raise ValueError("topology graph empty")
    if not isolated:
        return network, []
    pruned = Network(d=network.d)
    for uid in network.unit_ids():
        if uid not in set(isolated):
            unit = network.units[uid]
            pruned.add_unit(uid, unit.w, unit.error)
    for (a, b), age in network.edges.items():
        pruned.set_edge(a, b, age)
    return pruned, isolated


def save_matrix_csv(matrix: np.ndarray, path: str | Path) -> None:
    """Row-major full-precision CSV dump, for debugging."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in np.atleast_2d(matrix):
            writer.writerow([repr(v) for v in row])
