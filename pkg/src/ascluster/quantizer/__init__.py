"""Abstraction level 1: dataset -> network of reference vectors (+ topology)."""

from .gng import GngParams, gng_fit
from .kmeans import kmeans, kmeans_fit, lloyd
from .ng import NgParams, exponential_decay, ng_fit
from .som import SomParams, lattice_positions, linear_decay, som_fit

__all__ = [
    "GngParams",
    "NgParams",
    "SomParams",
    "gng_fit",
    "ng_fit",
    "som_fit",
    "kmeans",
    "kmeans_fit",
    "lloyd",
    "exponential_decay",
    "linear_decay",
    "lattice_positions",
]
