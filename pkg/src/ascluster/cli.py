"""Command-line front end: generate / cluster / sweep / bench / eval."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import evaluation
from .dataset import (
    Dataset,
    generate_blobs,
    generate_circles,
    generate_moons,
    load_csv,
    save_csv,
)
from .pipeline import METHODS, asc_cluster, default_params, sc_cluster

GENERATORS = ("blobs", "circles", "moons")


def _out_dir() -> Path:
    return Path(os.environ.get("ASCLUSTER_OUT_DIR", "."))


def _resolve_out(path: str) -> Path:
    p = Path(path)
    return p if p.is_absolute() else _out_dir() / p


def _merge(cli_value, config: dict, key: str, default):
    """Precedence: explicit CLI flag > config file > built-in default."""
    if cli_value is not None:
        return cli_value
    if key in config:
        return config[key]
    return default


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    return doc


def _int_list(text: str) -> list[int]:
    """Parse '1,2,3' or a range 'a:b' (b exclusive)."""
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi)))
    return [int(v) for v in text.split(",")]


def _dataset_from_args(args, config: dict) -> Dataset:
    csv_path = _merge(getattr(args, "csv", None), config, "csv", None)
    name = _merge(getattr(args, "dataset", None), config, "dataset", None)
    if (csv_path is None) == (name is None):
        raise ValueError("exactly one dataset source required: --dataset or --csv")
    if csv_path is not None:
        label_col = _merge(args.label_col, config, "label_col", None)
        exclude = _merge(args.exclude_cols, config, "exclude_cols", None)
        exclude = tuple(exclude.split(",")) if isinstance(exclude, str) else tuple(exclude or ())
        return load_csv(csv_path, label_column=label_col, exclude_columns=exclude)
    n = int(_merge(args.n, config, "n", 1000))
    seed = int(_merge(args.data_seed, config, "data_seed", 0))
    if name == "blobs":
        return generate_blobs(
            n,
            int(_merge(args.centers, config, "centers", 3)),
            d=int(_merge(args.d, config, "d", 2)),
            std=float(_merge(args.std, config, "std", 1.0)),
            seed=seed,
        )
    if name == "circles":
        return generate_circles(
            n,
            noise=float(_merge(args.noise, config, "noise", 0.05)),
            factor=float(_merge(args.factor, config, "factor", 0.5)),
            seed=seed,
        )
    if name == "moons":
        return generate_moons(
            n, noise=float(_merge(args.noise, config, "noise", 0.05)), seed=seed
        )
    raise ValueError(f"unknown generator {name!r}; choose from {GENERATORS}")


def _add_dataset_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", choices=GENERATORS, help="synthetic generator")
    parser.add_argument("--csv", help="CSV file with a header row")
    parser.add_argument("--label-col", dest="label_col", help="label column name")
    parser.add_argument(
        "--exclude-cols", dest="exclude_cols",
        help="comma-separated feature columns to drop",
    )
    parser.add_argument("--n", type=int, help="points to generate (default 1000)")
    parser.add_argument("--centers", type=int, help="blob centers (default 3)")
    parser.add_argument("--d", type=int, help="blob dimensionality (default 2)")
    parser.add_argument("--std", type=float, help="blob std (default 1.0)")
    parser.add_argument("--noise", type=float, help="circles/moons noise std (default 0.05)")
    parser.add_argument("--factor", type=float, help="circles inner radius (default 0.5)")
    parser.add_argument("--data-seed", dest="data_seed", type=int,
                        help="generator seed (default 0)")


def _method_params(method: str, config: dict, units: int | None, seed: int):
    params = default_params(method, seed)
    overrides = config.get("params", {})
    if overrides:
        if isinstance(params, dict):
            params = {**params, **overrides}
        else:
            params = dataclasses.replace(params, **overrides)
    if units is not None:
        params = evaluation.params_with_units(method, units, params)
    return params


def _cmd_generate(args) -> int:
    config = _load_config(args.config)
    dataset = _dataset_from_args(args, config)
    out = _resolve_out(_merge(args.out, config, "out", "dataset.csv"))
    save_csv(dataset, out)
    print(f"wrote {dataset.n} points ({dataset.d} features) to {out}")
    return 0


def _cmd_cluster(args) -> int:
    config = _load_config(args.config)
    dataset = _dataset_from_args(args, config)
    method = _merge(args.method, config, "method", None)
    if method is None or method not in METHODS:
        raise ValueError(f"--method required, one of {METHODS}")
    k = int(_merge(args.k, config, "k", 2))
    seed = int(_merge(args.seed, config, "seed", 0))
    sigma = _merge(args.sigma, config, "sigma", None)
    sigma = float(sigma) if sigma is not None else None
    units = _merge(args.units, config, "units", None)
    units = int(units) if units is not None else None
    normalize_input = bool(
        _merge(False if args.no_normalize else None, config, "normalize", True)
    )
    use_topology = False if args.no_topology else config.get("topology")

    if method == "sc":
        result = sc_cluster(dataset, k, sigma=sigma, seed=seed,
                            normalize_input=normalize_input)
    else:
        params = _method_params(method, config, units, seed)
        result = asc_cluster(
            dataset, method, k, params=params, seed=seed, sigma=sigma,
            normalize_input=normalize_input, use_topology=use_topology,
        )

    score = None
    if dataset.labels is not None:
        score = evaluation.purity(result.point_labels, dataset.labels).purity
        print(f"purity: {score:.4f}")
    doc = result.to_json(purity=score)
    out = _merge(args.out, config, "out", None)
    if out is not None:
        out = _resolve_out(out)
        out.write_text(json.dumps(doc, indent=2), encoding="utf-8")
        print(f"wrote result to {out}")
    else:
        json.dump(doc, sys.stdout, indent=2)
        print()
    labels_out = _merge(args.labels_out, config, "labels_out", None)
    if labels_out is not None:
        _write_labels(result.point_labels, _resolve_out(labels_out))
    return 0


def _write_labels(labels: np.ndarray, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label"])
        for v in labels:
            writer.writerow([int(v)])


def _read_labels(path: str) -> np.ndarray:
    values = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            try:
                values.append(int(float(row[0])))
            except ValueError:
                if values:
                    raise ValueError(f"{path}: non-numeric label {row[0]!r}") from None
                # header row
    if not values:
        raise ValueError(f"{path}: no labels found")
    return np.array(values, dtype=np.int64)


def _cmd_sweep(args) -> int:
    config = _load_config(args.config)
    dataset = _dataset_from_args(args, config)
    method = _merge(args.method, config, "method", "gng")
    k = int(_merge(args.k, config, "k", 2))
    unit_counts = _int_list(str(_merge(args.units, config, "units", "25,50,100")))
    seeds = _int_list(str(_merge(args.seeds, config, "seeds", "0:10")))
    sigma = _merge(args.sigma, config, "sigma", None)
    sigma = float(sigma) if sigma is not None else None
    rows = evaluation.sweep_units(dataset, method, k, unit_counts, seeds, sigma=sigma)
    out = _resolve_out(_merge(args.out, config, "out", "sweep.csv"))
    evaluation.write_sweep_csv(rows, out)
    for row in rows:
        print(f"M={row.units}: mean purity {row.mean:.4f} (std {row.std:.4f})")
    print(f"wrote {out}")
    return 0


def _cmd_bench(args) -> int:
    config = _load_config(args.config)
    axis = _merge(args.axis, config, "axis", "points")
    grid = _int_list(str(_merge(args.grid, config, "grid", "1000,10000,100000")))
    methods = _merge(args.methods, config, "methods", "gng,ng,som,kmeans,sc")
    methods = methods.split(",") if isinstance(methods, str) else list(methods)
    reps = int(_merge(args.reps, config, "reps", 3))
    seed = int(_merge(args.seed, config, "seed", 0))
    table = evaluation.benchmark_scaling(axis, grid, methods, repetitions=reps, seed=seed)
    out = _resolve_out(_merge(args.out, config, "out", "bench.csv"))
    evaluation.write_timing_csv(table, out)
    for row in table.rows:
        print(
            f"{row.method} N={row.n} M={row.m}: "
            f"{row.mean_seconds:.3f}s +/- {row.std_seconds:.3f}s ({row.repetitions} reps)"
        )
    print(f"wrote {out}")
    return 0


def _cmd_eval(args) -> int:
    pred = _read_labels(args.pred)
    truth = _read_labels(args.truth)
    report = evaluation.purity(pred, truth)
    print(f"purity: {report.purity:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ascluster",
        description="Approximate spectral clustering with topology-learning quantizers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a synthetic dataset to CSV")
    _add_dataset_flags(p_gen)
    p_gen.add_argument("--out", help="output CSV path")
    p_gen.add_argument("--config", help="JSON config file")
    p_gen.set_defaults(func=_cmd_generate)

    p_cluster = sub.add_parser("cluster", help="cluster a dataset")
    _add_dataset_flags(p_cluster)
    p_cluster.add_argument("--method", choices=METHODS)
    p_cluster.add_argument("--k", type=int, help="number of clusters")
    p_cluster.add_argument("--seed", type=int)
    p_cluster.add_argument("--sigma", type=float, help="Gaussian similarity width")
    p_cluster.add_argument("--units", type=int, help="unit-count override")
    p_cluster.add_argument("--no-normalize", action="store_true",
                           help="skip max-norm input normalization")
    p_cluster.add_argument("--no-topology", action="store_true",
                           help="use a fully-connected similarity matrix")
    p_cluster.add_argument("--out", help="result JSON path (default: stdout)")
    p_cluster.add_argument("--labels-out", dest="labels_out",
                           help="point labels CSV path")
    p_cluster.add_argument("--config", help="JSON config file")
    p_cluster.set_defaults(func=_cmd_cluster)

    p_sweep = sub.add_parser("sweep", help="purity vs unit count")
    _add_dataset_flags(p_sweep)
    p_sweep.add_argument("--method", choices=[m for m in METHODS if m != "sc"])
    p_sweep.add_argument("--k", type=int)
    p_sweep.add_argument("--units", help="unit counts, e.g. 25,50,100")
    p_sweep.add_argument("--seeds", help="seeds, e.g. 0,1,2 or 0:20")
    p_sweep.add_argument("--sigma", type=float)
    p_sweep.add_argument("--out", help="output CSV path")
    p_sweep.add_argument("--config", help="JSON config file")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_bench = sub.add_parser("bench", help="runtime scaling benchmark")
    p_bench.add_argument("--axis", choices=("points", "units"))
    p_bench.add_argument("--grid", help="ascending values, e.g. 1000,10000,100000")
    p_bench.add_argument("--methods", help="comma-separated method list")
    p_bench.add_argument("--reps", type=int)
    p_bench.add_argument("--seed", type=int)
    p_bench.add_argument("--out", help="output CSV path")
    p_bench.add_argument("--config", help="JSON config file")
    p_bench.set_defaults(func=_cmd_bench)

    p_eval = sub.add_parser("eval", help="purity of predicted vs true labels")
    p_eval.add_argument("--pred", required=True, help="predicted labels CSV")
    p_eval.add_argument("--truth", required=True, help="true labels CSV")
    p_eval.set_defaults(func=_cmd_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
