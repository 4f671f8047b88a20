"""Labeled point sets: normalization, synthetic generators, CSV ingestion."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of d-dimensional points with optional class labels.

    Parameters
    ----------
    points : ndarray, shape (n, d)
        Feature vectors, one row per point.
    labels : ndarray of int, shape (n,), or None
        Ground-truth class ids (>= 0), when known.
    """

    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-d array of shape (n, d)")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.shape != (pts.shape[0],):
                raise ValueError(
                    f"label count {lab.shape} does not match point count {pts.shape[0]}"
                )
            if lab.size and lab.min() < 0:
                raise ValueError("labels must be non-negative class ids")
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def normalize(dataset: Dataset) -> Dataset:
    """Divide every point by the norm of the maximum-norm point.

    Idempotent and scale-equivariant; after normalization the largest
    Euclidean norm over the points is exactly 1.
    """
    if dataset.n < 1:
        raise ValueError("cannot normalize an empty dataset")
    norms = np.linalg.norm(dataset.points, axis=1)
    max_norm = norms.max()
    if max_norm == 0.0:
        raise ValueError("degenerate dataset: zero max norm")
    return Dataset(dataset.points / max_norm, dataset.labels)


def generate_blobs(
    n: int,
    k_centers: int,
    d: int = 2,
    std: float = 1.0,
    seed: int = 0,
    center_box: tuple[float, float] = (-10.0, 10.0),
) -> Dataset:
    """Isotropic Gaussian blobs around centers sampled uniformly in a box.

    Points are split as evenly as possible across the `k_centers`
    components; labels record the generating component.
    """
    if not (n >= k_centers >= 1):
        raise ValueError("need n >= k_centers >= 1")
    rng = np.random.default_rng(seed)
    lo, hi = center_box
    centers = rng.uniform(lo, hi, size=(k_centers, d))
    counts = np.full(k_centers, n // k_centers)
    counts[: n % k_centers] += 1
    labels = np.repeat(np.arange(k_centers), counts)
    points = centers[labels] + rng.normal(0.0, std, size=(n, d))
    return Dataset(points, labels)


def generate_circles(
    n: int, noise: float = 0.05, factor: float = 0.5, seed: int = 0
) -> Dataset:
    """Two concentric circles (radius 1 and radius `factor`), even split.

    Angles are equispaced on each circle; isotropic Gaussian coordinate
    noise with the given std is added. Label 0 = outer, 1 = inner.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 < factor < 1.0):
        raise ValueError("factor must lie strictly between 0 and 1")
    if noise < 0:
        raise ValueError("noise must be >= 0")
    n_out = n // 2
    n_in = n - n_out
    t_out = np.linspace(0.0, 2.0 * np.pi, n_out, endpoint=False)
    t_in = np.linspace(0.0, 2.0 * np.pi, n_in, endpoint=False)
    points = np.concatenate(
        [
            np.column_stack([np.cos(t_out), np.sin(t_out)]),
            factor * np.column_stack([np.cos(t_in), np.sin(t_in)]),
        ]
    )
    labels = np.concatenate([np.zeros(n_out, np.int64), np.ones(n_in, np.int64)])
    if noise > 0:
        rng = np.random.default_rng(seed)
        points = points + rng.normal(0.0, noise, size=points.shape)
    return Dataset(points, labels)


def generate_moons(n: int, noise: float = 0.05, seed: int = 0) -> Dataset:
    """Two interleaving half-circle arcs, even split.

    Upper arc is the unit half circle; lower arc is mirrored, shifted
    right by 1 and down by 0.5. Label 0 = upper, 1 = lower.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if noise < 0:
        raise ValueError("noise must be >= 0")
    n_up = n // 2
    n_lo = n - n_up
    t_up = np.linspace(0.0, np.pi, n_up)
    t_lo = np.linspace(0.0, np.pi, n_lo)
    points = np.concatenate(
        [
            np.column_stack([np.cos(t_up), np.sin(t_up)]),
            np.column_stack([1.0 - np.cos(t_lo), 1.0 - np.sin(t_lo) - 0.5]),
        ]
    )
    labels = np.concatenate([np.zeros(n_up, np.int64), np.ones(n_lo, np.int64)])
    if noise > 0:
        rng = np.random.default_rng(seed)
        points = points + rng.normal(0.0, noise, size=points.shape)
    return Dataset(points, labels)


def load_csv(
    path: str | Path,
    label_column: str | None = None,
    exclude_columns: tuple[str, ...] = (),
) -> Dataset:
    """Load a labeled point set from a UTF-8 CSV file with a header row.

    All columns except the label column (and any excluded columns) are
    parsed as float64 features. Label values are mapped to integer class
    ids in order of first appearance, so re-loading the same file yields
    the same ids.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if label_column is not None and label_column not in header:
            raise ValueError(f"{path}: label column {label_column!r} not found")
        for col in exclude_columns:
            if col not in header:
                raise ValueError(f"{path}: excluded column {col!r} not found")
        feature_idx = [
            i
            for i, h in enumerate(header)
            if h != label_column and h not in exclude_columns
        ]
        label_idx = header.index(label_column) if label_column is not None else None

        rows: list[list[float]] = []
        raw_labels: list[str] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}"
                )
            try:
                rows.append([float(row[i]) for i in feature_idx])
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: non-numeric feature value"
                ) from None
            if label_idx is not None:
                raw_labels.append(row[label_idx].strip())

    if not rows:
        raise ValueError(f"{path}: empty dataset")

    labels = None
    if label_idx is not None:
        index: dict[str, int] = {}
        labels = np.array(
            [index.setdefault(v, len(index)) for v in raw_labels], dtype=np.int64
        )
    return Dataset(np.array(rows, dtype=np.float64), labels)


def save_csv(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset as CSV with columns f0..f{d-1} and optional `label`."""
    path = Path(path)
    header = [f"f{j}" for j in range(dataset.d)]
    if dataset.labels is not None:
        header.append("label")
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(dataset.n):
            row = [repr(v) for v in dataset.points[i]]
            if dataset.labels is not None:
                row.append(str(int(dataset.labels[i])))
            writer.writerow(row)


def iris_path() -> Path:
    """Path to the bundled Iris CSV (150 rows, 4 features, species column)."""
    return Path(__file__).parent / "data" / "iris.csv"
