"""End-to-end clustering: quantize, build the similarity graph, embed, assign."""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, normalize
from .graph import (
    SimilarityGraph,
    gaussian_similarity,
    normalized_laplacian,
    prune_isolated,
    similarity_from_network,
)
from .network import Network
from .quantizer import GngParams, NgParams, SomParams, gng_fit, kmeans_fit, ng_fit, som_fit
from .spectral import kmeans_rows, spectral_embed

METHODS = ("gng", "ng", "som", "kmeans", "gng_no_topology", "sc")

# Gaussian width per method, grid-searched defaults; all overridable.
DEFAULT_SIGMA = {
    "gng": 0.25,
    "ng": 0.25,
    "som": 0.5,
    "kmeans": 0.1,
    "gng_no_topology": 0.5,
    "sc": 0.1,
}

# Methods whose learned edges mask the similarity matrix.
TOPOLOGY_METHODS = ("gng", "ng", "som")

SC_DEFAULT_CAP = 5000


def default_params(method: str, seed: int = 0):
    """Built-in parameter preset for a quantizer method."""
    if method == "gng":
        return GngParams(seed=seed)
    if method == "gng_no_topology":
        return GngParams(
            insert_interval=350,
            winner_rate=0.05,
            neighbor_rate=0.01,
            max_edge_age=100,
            split_decay=0.5,
            global_decay=0.999,
            seed=seed,
        )
    if method == "ng":
        return NgParams(seed=seed)
    if method == "som":
        return SomParams(seed=seed)
    if method == "kmeans":
        return {"m": 100, "max_iter": 300, "seed": seed}
    raise ValueError(f"unknown quantizer method {method!r}")


@dataclass
class ClusteringResult:
    method: str
    k: int
    seed: int
    point_labels: np.ndarray
    unit_labels: np.ndarray | None
    unit_ids: tuple[int, ...] | None
    timings: dict[str, float] = field(default_factory=dict)
    network: Network | None = None

    def to_json(self, purity: float | None = None) -> dict:
        doc = {
            "method": self.method,
            "k": self.k,
            "seed": self.seed,
            "timings_ms": {name: sec * 1000.0 for name, sec in self.timings.items()},
            "point_labels": [int(v) for v in self.point_labels],
        }
        if purity is not None:
            doc["purity"] = purity
        return doc


def quantize(dataset: Dataset, method: str, params=None, seed: int = 0) -> Network:
    """Run the chosen quantizer; `seed` overrides the seed inside `params`."""
    if params is None:
        params = default_params(method, seed)
    if method in ("gng", "gng_no_topology"):
        return gng_fit(dataset, dataclasses.replace(params, seed=seed))
    if method == "ng":
        return ng_fit(dataset, dataclasses.replace(params, seed=seed))
    if method == "som":
        return som_fit(dataset, dataclasses.replace(params, seed=seed))
    if method == "kmeans":
        return kmeans_fit(
            dataset, params["m"], max_iter=params.get("max_iter", 300), seed=seed
        )
    raise ValueError(f"unknown quantizer method {method!r}")


def assign_points(
    dataset: Dataset, network: Network, unit_labels: np.ndarray | dict[int, int]
) -> np.ndarray:
    """Label every point with the cluster of its nearest unit.

    Ties go to the lowest unit id. `unit_labels` is either an array aligned
    with ascending unit ids or a mapping from unit id to cluster id.
    """
    if network.m == 0:
        raise ValueError("empty network")
    ids, W = network.weight_matrix()
    if isinstance(unit_labels, dict):
        labels = np.array([unit_labels[uid] for uid in ids], dtype=np.int64)
    else:
        labels = np.asarray(unit_labels, dtype=np.int64)
        if labels.shape != (len(ids),):
            raise ValueError("unit_labels must cover all units in the network")
    out = np.empty(dataset.n, dtype=np.int64)
    # chunked so the n x m distance matrix stays small
    chunk = max(1, 10_000_000 // max(network.m, 1))
    for start in range(0, dataset.n, chunk):
        block = dataset.points[start : start + chunk]
        d2 = ((block[:, None, :] - W[None, :, :]) ** 2).sum(axis=2)
        out[start : start + chunk] = labels[d2.argmin(axis=1)]
    return out


def _embed_and_label(A_graph: SimilarityGraph, k: int, seed: int) -> np.ndarray:
    lap = normalized_laplacian(A_graph)
    embedding = spectral_embed(lap, k)
    return kmeans_rows(embedding, k, seed=seed)


def asc_cluster(
    dataset: Dataset,
    method: str,
    k: int,
    params=None,
    seed: int = 0,
    sigma: float | None = None,
    normalize_input: bool = True,
    use_topology: bool | None = None,
) -> ClusteringResult:
    """Two-level clustering: quantize the data, then spectrally cluster units.

    `use_topology` defaults per method: learned-edge masking for gng/ng/som,
    fully connected for kmeans and gng_no_topology.
    """
    if method == "sc":
        return sc_cluster(dataset, k, sigma=sigma, seed=seed, normalize_input=normalize_input)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if not (dataset.n >= k >= 1):
        raise ValueError(f"need n >= k >= 1, got n={dataset.n}, k={k}")
    if sigma is None:
        sigma = DEFAULT_SIGMA[method]
    if use_topology is None:
        use_topology = method in TOPOLOGY_METHODS

    timings: dict[str, float] = {}
    if normalize_input:
        dataset = normalize(dataset)

    t0 = time.perf_counter()
    network = quantize(dataset, method, params, seed)
    timings["quantize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if use_topology:
        network, _removed = prune_isolated(network)
    if network.m < k:
        raise ValueError("too few units for k clusters")
    graph = similarity_from_network(network, sigma, use_topology)
    timings["similarity"] = time.perf_counter() - t0

    # separate stream for the row k-means so it is decoupled from the quantizer
    seed_rows = int(np.random.SeedSequence(seed).generate_state(1)[0])
    t0 = time.perf_counter()
    lap = normalized_laplacian(graph)
    embedding = spectral_embed(lap, k)
    timings["eigen"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    unit_labels = kmeans_rows(embedding, k, seed=int(seed_rows))
    timings["kmeans"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    point_labels = assign_points(dataset, network, unit_labels)
    timings["assign"] = time.perf_counter() - t0

    return ClusteringResult(
        method=method,
        k=k,
        seed=seed,
        point_labels=point_labels,
        unit_labels=unit_labels,
        unit_ids=tuple(network.unit_ids()),
        timings=timings,
        network=network,
    )


def sc_cluster(
    dataset: Dataset,
    k: int,
    sigma: float | None = None,
    seed: int = 0,
    normalize_input: bool = True,
    cap: int = SC_DEFAULT_CAP,
) -> ClusteringResult:
    """Plain spectral clustering over the raw points (fully connected).

    Refuses datasets beyond `cap` points: the n x n similarity matrix and
    the cubic eigendecomposition make larger inputs impractical.
    """
    if sigma is None:
        sigma = DEFAULT_SIGMA["sc"]
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    if dataset.n > cap:
        raise ValueError(
            f"dataset has {dataset.n} points, over the sc safety cap of {cap}"
        )
    if not (dataset.n >= k >= 1):
        raise ValueError(f"need n >= k >= 1, got n={dataset.n}, k={k}")

    timings: dict[str, float] = {}
    if normalize_input:
        dataset = normalize(dataset)

    t0 = time.perf_counter()
    A = gaussian_similarity(dataset.points, sigma)
    graph = SimilarityGraph(A, sigma, False, tuple(range(dataset.n)))
    timings["similarity"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lap = normalized_laplacian(graph)
    embedding = spectral_embed(lap, k)
    timings["eigen"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    point_labels = kmeans_rows(embedding, k, seed=seed)
    timings["kmeans"] = time.perf_counter() - t0

    return ClusteringResult(
        method="sc",
        k=k,
        seed=seed,
        point_labels=point_labels,
        unit_labels=None,
        unit_ids=None,
        timings=timings,
        network=None,
    )
