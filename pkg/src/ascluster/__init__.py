"""Approximate spectral clustering driven by topology-learning quantizers."""

from .dataset import (
    Dataset,
    generate_blobs,
    generate_circles,
    generate_moons,
    iris_path,
    load_csv,
    normalize,
    save_csv,
)
from .evaluation import benchmark_scaling, purity, sweep_units
from .graph import (
    NormalizedLaplacian,
    SimilarityGraph,
    gaussian_similarity,
    normalized_laplacian,
    prune_isolated,
    similarity_from_network,
)
from .network import Network, Unit
from .pipeline import (
    ClusteringResult,
    asc_cluster,
    assign_points,
    default_params,
    sc_cluster,
)
from .quantizer import (
    GngParams,
    NgParams,
    SomParams,
    gng_fit,
    kmeans_fit,
    ng_fit,
    som_fit,
)
from .spectral import (
    EigenDecomposition,
    SpectralEmbedding,
    kmeans_rows,
    spectral_embed,
    symmetric_eig,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "Network",
    "Unit",
    "SimilarityGraph",
    "NormalizedLaplacian",
    "EigenDecomposition",
    "SpectralEmbedding",
    "ClusteringResult",
    "GngParams",
    "NgParams",
    "SomParams",
    "normalize",
    "generate_blobs",
    "generate_circles",
    "generate_moons",
    "load_csv",
    "save_csv",
    "iris_path",
    "gng_fit",
    "ng_fit",
    "som_fit",
    "kmeans_fit",
    "similarity_from_network",
    "gaussian_similarity",
    "normalized_laplacian",
    "prune_isolated",
    "symmetric_eig",
    "spectral_embed",
    "kmeans_rows",
    "asc_cluster",
    "sc_cluster",
    "assign_points",
    "default_params",
    "purity",
    "sweep_units",
    "benchmark_scaling",
]
