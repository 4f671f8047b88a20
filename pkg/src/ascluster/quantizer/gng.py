"""Growing neural gas: a unit-growing, topology-learning quantizer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numba import njit

from ..dataset import Dataset
from ..network import Network

_NO_ID = np.iinfo(np.int64).max


@dataclass(frozen=True)
class GngParams:
    iterations: int = 100_000
    max_units: int = 100
    insert_interval: int = 250
    winner_rate: float = 0.1
    neighbor_rate: float = 0.01
    max_edge_age: int = 75
    split_decay: float = 0.25
    global_decay: float = 0.99
    seed: int = 0
    squared_error: bool = True

    def validate(self) -> None:
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.max_units < 2:
            raise ValueError("max_units must be >= 2")
        if self.insert_interval < 1:
            raise ValueError("insert_interval must be >= 1")
        if not (0.0 < self.neighbor_rate <= self.winner_rate < 1.0):
            raise ValueError("need 0 < neighbor_rate <= winner_rate < 1")
        if self.max_edge_age < 1:
            raise ValueError("max_edge_age must be >= 1")
        if not (0.0 < self.split_decay < 1.0 and 0.0 < self.global_decay < 1.0):
            raise ValueError("decay factors must lie in (0, 1)")


@njit(cache=True)
def _gng_steps(
    W, E, alive, age, ids, next_id, X, picks, start, stop,
    insert_interval, winner_rate, neighbor_rate, max_edge_age,
    split_decay, global_decay, max_units, squared_error,
):
    cap, d = W.shape
    for t in range(start, stop):
        x = X[picks[t]]

        # winner and runner-up; exact ties go to the lower unit id
        d1 = np.inf
        d2 = np.inf
        s1 = -1
        s2 = -1
        for i in range(cap):
            if not alive[i]:
                continue
            dist = 0.0
            for j in range(d):
                dv = W[i, j] - x[j]
                dist += dv * dv
            if dist < d1 or (dist == d1 and s1 >= 0 and ids[i] < ids[s1]):
                d2 = d1
                s2 = s1
                d1 = dist
                s1 = i
            elif dist < d2 or (dist == d2 and s2 >= 0 and ids[i] < ids[s2]):
                d2 = dist
                s2 = i

        E[s1] += d1 if squared_error else np.sqrt(d1)

        for j in range(d):
            W[s1, j] += winner_rate * (x[j] - W[s1, j])
        for i in range(cap):
            if age[s1, i] >= 0:
                for j in range(d):
                    W[i, j] += neighbor_rate * (x[j] - W[i, j])

        age[s1, s2] = 0
        age[s2, s1] = 0
        for i in range(cap):
            if age[s1, i] >= 0:
                a = age[s1, i] + 1
                age[s1, i] = a
                age[i, s1] = a

        # only edges at s1 aged this iteration, so only they can expire
        for i in range(cap):
            if age[s1, i] > max_edge_age:
                age[s1, i] = -1
                age[i, s1] = -1
                deg = 0
                for j2 in range(cap):
                    if age[i, j2] >= 0:
                        deg += 1
                if deg == 0:
                    alive[i] = False
                    E[i] = 0.0
                    ids[i] = _NO_ID

        if (t + 1) % insert_interval == 0:
            n_alive = 0
            for i in range(cap):
                if alive[i]:
                    n_alive += 1
            if n_alive < max_units:
                q = -1
                eq = -1.0
                for i in range(cap):
                    if alive[i] and E[i] > eq:
                        eq = E[i]
                        q = i
                f = -1
                ef = -1.0
                for i in range(cap):
                    if age[q, i] >= 0 and E[i] > ef:
                        ef = E[i]
                        f = i
                r = -1
                for i in range(cap):
                    if not alive[i]:
                        r = i
                        break
                for j in range(d):
                    W[r, j] = 0.5 * (W[q, j] + W[f, j])
                age[q, f] = -1
                age[f, q] = -1
                age[q, r] = 0
                age[r, q] = 0
                age[f, r] = 0
                age[r, f] = 0
                E[q] *= split_decay
                E[f] *= split_decay
                E[r] = E[q]
                alive[r] = True
                ids[r] = next_id
                next_id += 1

        for i in range(cap):
            E[i] *= global_decay
    return next_id


class _GngState:
    """Array-backed GNG state; slots are reused, unit ids never are."""

    def __init__(self, dataset: Dataset, params: GngParams):
        rng = np.random.default_rng(params.seed)
        cap = params.max_units
        self.W = np.zeros((cap, dataset.d))
        self.E = np.zeros(cap)
        self.alive = np.zeros(cap, dtype=np.bool_)
        self.age = np.full((cap, cap), -1, dtype=np.int64)
        self.ids = np.full(cap, _NO_ID, dtype=np.int64)
        first, second = rng.choice(dataset.n, size=2, replace=False)
        self.W[0] = dataset.points[first]
        self.W[1] = dataset.points[second]
        self.alive[:2] = True
        self.ids[0] = 0
        self.ids[1] = 1
        self.age[0, 1] = self.age[1, 0] = 0
        self.next_id = 2
        self.picks = rng.integers(0, dataset.n, size=params.iterations)

    def run(self, X: np.ndarray, params: GngParams, start: int, stop: int) -> None:
        self.next_id = _gng_steps(
            self.W, self.E, self.alive, self.age, self.ids, self.next_id,
            X, self.picks, start, stop,
            params.insert_interval, params.winner_rate, params.neighbor_rate,
            params.max_edge_age, params.split_decay, params.global_decay,
            params.max_units, params.squared_error,
        )

    def network(self, d: int) -> Network:
        net = Network(d=d)
        slots = np.flatnonzero(self.alive)
        for slot in slots[np.argsort(self.ids[slots])]:
            net.add_unit(int(self.ids[slot]), self.W[slot], float(self.E[slot]))
        for a in range(self.age.shape[0]):
            for b in range(a + 1, self.age.shape[0]):
                if self.age[a, b] >= 0:
                    net.set_edge(int(self.ids[a]), int(self.ids[b]), int(self.age[a, b]))
        return net


def gng_fit(
    dataset: Dataset,
    params: GngParams,
    observer: Callable[[int, Network], None] | None = None,
) -> Network:
    """Grow a network over the dataset by the incremental winner-take-most loop.

    Starts from two connected units at random data points. Each iteration
    moves the winner and its direct neighbors toward the sample, refreshes
    the winner/runner-up edge, ages and prunes the winner's edges, and every
    `insert_interval` iterations splits the highest-error region with a new
    unit (unless the unit budget is exhausted). All accumulated errors decay
    by `global_decay` every iteration.

    When `observer` is given it is called with (iteration, network snapshot)
    after every iteration; this is slow and meant for tracing/diagnostics.
    """
    params.validate()
    if dataset.n < 2:
        raise ValueError("growing neural gas needs at least 2 data points")
    state = _GngState(dataset, params)
    if observer is None:
        state.run(dataset.points, params, 0, params.iterations)
    else:
        for t in range(params.iterations):
            state.run(dataset.points, params, t, t + 1)
            observer(t, state.network(dataset.d))
    return state.network(dataset.d)
