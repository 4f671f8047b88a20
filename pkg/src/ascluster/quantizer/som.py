"""Kohonen self-organizing map on a square lattice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset
from ..network import Network


def linear_decay(z: float, t: float, total: float) -> float:
    """Schedule z * (1 - t/total); reaches exactly 0 at t = total."""
    return z * (1.0 - t / total)


def lattice_positions(side: int) -> np.ndarray:
    """Unit coordinates on the square lattice, scaled to (0, 1].

    Unit u (0-based) sits at ((u mod side) + 1, floor(u / side) + 1) / side.
    """
    u = np.arange(side * side)
    return np.column_stack([(u % side) + 1, u // side + 1]) / side


@dataclass(frozen=True)
class SomParams:
    iterations: int = 100_000
    side: int = 10
    rate_start: float = 0.05
    width_start: float = 1.0
    seed: int = 0

    def validate(self) -> None:
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.side < 2:
            raise ValueError("side must be >= 2")
        if self.rate_start <= 0 or self.width_start <= 0:
            raise ValueError("rate_start and width_start must be > 0")


def som_fit(dataset: Dataset, params: SomParams) -> Network:
    """Train a side x side map and return it with 4-neighbor lattice edges.

    Weights start uniform in [0, 1]^d. Each iteration pulls every unit
    toward the sample with strength rate(t) * exp(-lat_d2 / (2 width(t)^2)),
    where lat_d2 is the squared lattice distance to the best match unit and
    both rate and width decay linearly to 0 over the run.
    """
    params.validate()
    if dataset.n < 1:
        raise ValueError("need at least 1 data point")
    m = params.side * params.side
    rng = np.random.default_rng(params.seed)
    X = dataset.points
    W = rng.uniform(0.0, 1.0, size=(m, dataset.d))
    pos = lattice_positions(params.side)
    # pairwise squared lattice distances, fixed for the whole run
    lat_d2 = ((pos[:, None, :] - pos[None, :, :]) ** 2).sum(axis=2)
    total = params.iterations
    picks = rng.integers(0, dataset.n, size=total)
    for t in range(total):
        x = X[picks[t]]
        c = int(((W - x) ** 2).sum(axis=1).argmin())
        rate = linear_decay(params.rate_start, t, total)
        width = linear_decay(params.width_start, t, total)
        h = rate * np.exp(-lat_d2[c] / (2.0 * width * width))
        W += h[:, None] * (x - W)

    net = Network(d=dataset.d)
    for uid in range(m):
        net.add_unit(uid, W[uid])
    side = params.side
    for uid in range(m):
        row, col = divmod(uid, side)
        if col + 1 < side:
            net.set_edge(uid, uid + 1, 0)
        if row + 1 < side:
            net.set_edge(uid, uid + side, 0)
    return net
