"""Purity scoring, unit-count sweeps, and runtime-scaling benchmarks."""

from __future__ import annotations

import csv
import dataclasses
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset import Dataset, generate_blobs
from .pipeline import SC_DEFAULT_CAP, asc_cluster, default_params, sc_cluster

try:
    from threadpoolctl import threadpool_limits
except ImportError:  # pragma: no cover - always present in the tested env
    threadpool_limits = None


@dataclass(frozen=True)
class PurityReport:
    """Purity of one labeling: fraction of points in their cluster's majority class."""

    purity: float
    per_cluster: dict[int, tuple[int, dict[int, int]]]  # cluster -> (majority, counts)
    runs: int = 1
    mean: float | None = None
    std: float | None = None


def purity(pred: np.ndarray, truth: np.ndarray) -> PurityReport:
    """Sum over clusters of the majority class count, divided by N."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape or pred.ndim != 1 or pred.size == 0:
        raise ValueError("pred and truth must be equal-length non-empty vectors")
    per_cluster: dict[int, tuple[int, dict[int, int]]] = {}
    correct = 0
    for cluster in np.unique(pred):
        classes, counts = np.unique(truth[pred == cluster], return_counts=True)
        best = int(counts.argmax())
        correct += int(counts[best])
        per_cluster[int(cluster)] = (
            int(classes[best]),
            {int(c): int(n) for c, n in zip(classes, counts)},
        )
    score = correct / pred.size
    return PurityReport(score, per_cluster, runs=1, mean=score, std=0.0)


def params_with_units(method: str, units: int, base=None):
    """Parameter preset with the unit count (budget) overridden."""
    params = base if base is not None else default_params(method)
    if method in ("gng", "gng_no_topology"):
        return dataclasses.replace(params, max_units=units)
    if method == "ng":
        return dataclasses.replace(params, units=units)
    if method == "som":
        side = max(2, round(math.sqrt(units)))
        return dataclasses.replace(params, side=side)
    if method == "kmeans":
        return {**params, "m": units}
    raise ValueError(f"unknown quantizer method {method!r}")


@dataclass(frozen=True)
class SweepRow:
    method: str
    units: int
    k: int
    seeds: tuple[int, ...]
    purities: tuple[float, ...]
    mean: float
    std: float


def sweep_units(
    dataset: Dataset,
    method: str,
    k: int,
    unit_counts: list[int],
    seeds: list[int],
    base_params=None,
    sigma: float | None = None,
) -> list[SweepRow]:
    """Mean purity per unit-count over the given seeds.

    The dataset must carry ground-truth labels.
    """
    if dataset.labels is None:
        raise ValueError("sweep requires ground-truth labels")
    rows = []
    for units in unit_counts:
        if units < k:
            raise ValueError(f"unit count {units} below cluster count {k}")
        scores = []
        for seed in seeds:
            params = params_with_units(method, units, base_params)
            result = asc_cluster(dataset, method, k, params=params, seed=seed, sigma=sigma)
            scores.append(purity(result.point_labels, dataset.labels).purity)
        arr = np.array(scores)
        rows.append(
            SweepRow(
                method, units, k, tuple(seeds), tuple(scores),
                float(arr.mean()), float(arr.std()),
            )
        )
    return rows


@dataclass(frozen=True)
class TimingRow:
    method: str
    n: int
    m: int
    seconds: tuple[float, ...]
    mean_seconds: float
    std_seconds: float
    repetitions: int


@dataclass(frozen=True)
class TimingTable:
    rows: tuple[TimingRow, ...]
    skipped: tuple[str, ...] = ()


def _timed_run(dataset: Dataset, method: str, k: int, units: int, seed: int) -> float:
    params = None if method == "sc" else params_with_units(method, units)
    t0 = time.perf_counter()
    if method == "sc":
        sc_cluster(dataset, k, seed=seed)
    else:
        asc_cluster(dataset, method, k, params=params, seed=seed)
    return time.perf_counter() - t0


def benchmark_scaling(
    axis: str,
    grid: list[int],
    methods: list[str],
    repetitions: int = 3,
    seed: int = 0,
    fixed_points: int = 100_000,
    fixed_units: int = 100,
    k: int = 5,
    dims: int = 3,
) -> TimingTable:
    """Wall-clock scaling of full clustering runs on generated blob data.

    `axis` is "points" (vary N at fixed unit count) or "units" (vary the
    unit count at fixed N). Dataset generation is excluded from the timing.
    Runs are serial and BLAS threading is pinned to one thread so the
    measured growth is not distorted by uneven parallelism. SC entries
    beyond its safety cap are skipped with a notice.
    """
    if axis not in ("points", "units"):
        raise ValueError("axis must be 'points' or 'units'")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    if list(grid) != sorted(grid):
        raise ValueError("grid must be ascending")

    rows: list[TimingRow] = []
    skipped: list[str] = []
    for value in grid:
        n = value if axis == "points" else fixed_points
        units = fixed_units if axis == "points" else value
        dataset = generate_blobs(n, k, d=dims, seed=seed)
        for method in methods:
            if method == "sc" and n > SC_DEFAULT_CAP:
                notice = f"sc skipped at N={n}: over the safety cap of {SC_DEFAULT_CAP}"
                skipped.append(notice)
                print(notice, file=sys.stderr)
                continue
            seconds = []
            for rep in range(repetitions):
                if threadpool_limits is not None:
                    with threadpool_limits(limits=1):
                        seconds.append(_timed_run(dataset, method, k, units, seed + rep))
                else:
                    seconds.append(_timed_run(dataset, method, k, units, seed + rep))
            arr = np.array(seconds)
            rows.append(
                TimingRow(
                    method, n, units, tuple(seconds),
                    float(arr.mean()), float(arr.std()), repetitions,
                )
            )
    return TimingTable(tuple(rows), tuple(skipped))


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> None:
    """Long-format CSV: one row per (unit count, seed index) purity."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "N", "M", "seed", "metric", "value"])
        for row in rows:
            for seed, score in zip(row.seeds, row.purities):
                writer.writerow([row.method, "", row.units, seed, "purity", repr(score)])


def write_timing_csv(table: TimingTable, path: str | Path) -> None:
    """Long-format CSV: one row per repetition."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "N", "M", "seed", "metric", "value"])
        for row in table.rows:
            for i, sec in enumerate(row.seconds):
                writer.writerow([row.method, row.n, row.m, i, "seconds", repr(sec)])
