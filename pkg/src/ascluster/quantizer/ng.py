"""Neural gas: rank-based quantizer with competitive Hebbian edges."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset
from ..network import Network


def exponential_decay(start: float, end: float, t: float, total: float) -> float:
    """Schedule g(t) = start * (end/start)^(t/total)."""
    return start * (end / start) ** (t / total)


@dataclass(frozen=True)
class NgParams:
    iterations: int = 100_000
    units: int = 100
    neighborhood_start: float = 1.0
    neighborhood_end: float = 0.01
    rate_start: float = 0.5
    rate_end: float = 0.005
    lifetime_start: float = 100.0
    lifetime_end: float = 300.0
    seed: int = 0

    def validate(self) -> None:
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.units < 2:
            raise ValueError("units must be >= 2")
        for name in (
            "neighborhood_start", "neighborhood_end", "rate_start",
            "rate_end", "lifetime_start", "lifetime_end",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")


def ng_fit(dataset: Dataset, params: NgParams) -> Network:
    """Quantize by neighborhood-ranked updates with aged nearest-pair edges.

    Every iteration ranks all units by distance to the sample and moves
    unit i by rate * exp(-rank_i / neighborhood) toward it. The edge
    between the two nearest units is created or refreshed; only edges at
    the nearest unit age, and those exceeding the current lifetime are
    dropped. Rate, neighborhood, and lifetime all follow the exponential
    schedule between their start and end values.
    """
    params.validate()
    m = params.units
    if dataset.n < m:
        raise ValueError(f"need n >= units, got n={dataset.n}, units={m}")
    rng = np.random.default_rng(params.seed)
    X = dataset.points
    W = X[rng.choice(dataset.n, size=m, replace=False)].copy()
    # age < 0 means "no edge"
    age = np.full((m, m), -1, dtype=np.int64)
    total = params.iterations
    picks = rng.integers(0, dataset.n, size=total)
    ranks = np.empty(m, dtype=np.int64)
    for t in range(total):
        frac = t / total
        rate = params.rate_start * (params.rate_end / params.rate_start) ** frac
        nbhd = params.neighborhood_start * (
            params.neighborhood_end / params.neighborhood_start
        ) ** frac
        lifetime = params.lifetime_start * (
            params.lifetime_end / params.lifetime_start
        ) ** frac

        x = X[picks[t]]
        d2 = ((W - x) ** 2).sum(axis=1)
        order = np.argsort(d2, kind="stable")  # ties resolve to lower unit id
        ranks[order] = np.arange(m)
        W += rate * np.exp(-ranks / nbhd)[:, None] * (x - W)

        i0, i1 = order[0], order[1]
        age[i0, i1] = 0
        age[i1, i0] = 0
        linked = age[i0] >= 0
        age[i0, linked] += 1
        age[linked, i0] += 1
        stale = linked & (age[i0] > lifetime)
        age[i0, stale] = -1
        age[stale, i0] = -1

    net = Network(d=dataset.d)
    for uid in range(m):
        net.add_unit(uid, W[uid])
    for a in range(m):
        for b in range(a + 1, m):
            if age[a, b] >= 0:
                net.set_edge(a, b, int(age[a, b]))
    return net
