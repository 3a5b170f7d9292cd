"""Command-line surface.

Subcommands: ``synth`` (generate benchmark datasets), ``cluster`` (run an
engine on a CSV), ``select`` (feature selection), ``eval`` (metrics from
label files), ``audit`` (weight-stack checks), ``bench`` (the comparison
suites). Every run ends with one JSON summary line on stdout carrying
{config, seed, results, warnings, timing_ms}; artifact files written by
``select`` contain no timing so identical invocations produce identical
bytes. Failures exit nonzero with a single CATEGORY: detail line on
stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from .audit import audit_weight_stack
from .bench import (BENCH_CONFIG_NAMES, format_clustering_table,
                    format_selection_table, run_clustering_bench,
                    run_selection_bench)
from .dataio import Dataset, load_csv, normalize_range, write_csv
from .engine import kmeans_fit, mwk_fit, restart_best
from .errors import InputError, ParseError
from .metrics import adjusted_rand_index, clustering_entropy
from .rng import derive_seed
from .selection import COARSE_P_GRID, FINE_P_GRID, fs_mwkpp, sfs_mwkpp
from .synth import generate, parse_config_name


def parse_grid(text: str) -> tuple:
    """Exponent grid from 'fine', 'coarse', or a comma list of floats."""
    if text == "fine":
        return FINE_P_GRID
    if text == "coarse":
        return COARSE_P_GRID
    try:
        grid = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ParseError(f"grid must be 'fine', 'coarse', or a comma list, "
                         f"got {text!r}") from None
    if not grid:
        raise ParseError("grid list is empty")
    return grid


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _load_normalized(args) -> Dataset:
    ds = load_csv(args.input, label_column=args.label_column)
    if getattr(args, "no_normalize", False):
        return ds
    return normalize_range(ds)


def _cmd_synth(args) -> dict:
    spec = parse_config_name(args.config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    slug = args.config.replace(" ", "")
    files = []
    for i in range(args.count):
        ds = generate(replace(spec, seed=derive_seed(args.seed, i)))
        path = outdir / f"{slug}-{i}.csv"
        write_csv(ds, path)
        files.append(str(path))
    return {"files": files, "n_points": spec.n_points,
            "m_total": spec.m_informative + spec.n_noise}


def _cmd_cluster(args) -> dict:
    ds = _load_normalized(args)
    X = ds.X
    if args.algorithm == "mwkpp":
        best = restart_best(X, args.k, args.p, restarts=args.restarts,
                            base_seed=args.seed, mode=args.mode,
                            max_iter=args.max_iter)
    else:
        best = None
        for t in range(args.restarts):
            run_seed = derive_seed(args.seed, t)
            if args.algorithm == "kmeans":
                res = kmeans_fit(X, args.k, seed=run_seed,
                                 max_iter=args.max_iter)
            else:
                res = mwk_fit(X, args.k, args.p, mode=args.mode,
                              init="kmeanspp", seed=run_seed,
                              max_iter=args.max_iter)
            if best is None or res.objective < best.objective:
                best = res

    out = Path(args.output) if args.output \
        else Path(args.input).with_suffix(".assignments.csv")
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cluster"])
        for c in best.labels:
            writer.writerow([int(c)])

    results = {
        "algorithm": args.algorithm,
        "objective": best.objective,
        "iterations": best.n_iter,
        "converged": best.converged,
        "empty_repairs": best.empty_repairs,
        "assignments_file": str(out),
    }
    if args.algorithm != "kmeans":
        results["p"] = args.p
        results["weights"] = best.weights
    if ds.labels is not None:
        results["ari"] = adjusted_rand_index(ds.labels, best.labels)
        results["entropy"] = clustering_entropy(ds.labels, best.labels)
    return results


def _cmd_select(args) -> dict:
    ds = _load_normalized(args)
    grid = parse_grid(args.grid)
    if args.scalable:
        sel = sfs_mwkpp(ds.X, args.k, args.r, p_grid=grid,
                        n_iterations=args.outer, n_restarts=args.restarts,
                        seed=args.seed, mode=args.mode,
                        max_iter=args.max_iter)
    else:
        sel = fs_mwkpp(ds.X, args.k, args.r, p_grid=grid,
                       n_restarts=args.restarts, seed=args.seed,
                       mode=args.mode, max_iter=args.max_iter)
    selected = [int(j) for j in sel.selected]
    names = [ds.feature_names[j] for j in selected]
    results = {
        "selected_indices": selected,
        "selected_names": names,
        "scores": [float(s) for s in sel.scores],
        "scalable": bool(args.scalable),
    }
    if sel.subsample_size is not None:
        results["subsample_size"] = sel.subsample_size

    suffix = ".json" if args.emit == "json" else ".csv"
    out = Path(args.output) if args.output \
        else Path(args.input).with_suffix(".selection" + suffix)
    chosen = set(selected)
    if args.emit == "json":
        artifact = {"config": _config_dict(args), "seed": args.seed,
                    "results": results}
        out.write_text(json.dumps(artifact, sort_keys=True, indent=2,
                                  default=_jsonify) + "\n", encoding="utf-8")
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["feature", "index", "score", "selected"])
            for j, (name, s) in enumerate(zip(ds.feature_names, sel.scores)):
                writer.writerow([name, j, f"{s:.17g}", int(j in chosen)])
    results["output_file"] = str(out)
    return results


def _read_int_column(path, column: str) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [c.strip() for c in rows[0]]
    if column not in header:
        raise ParseError(f"{path}: no column named {column!r}")
    j = header.index(column)
    values = []
    for i, row in enumerate(rows[1:], start=2):
        try:
            values.append(int(float(row[j])))
        except (ValueError, IndexError):
            raise ParseError(
                f"{path}: bad integer at row {i}, column {j + 1}"
            ) from None
    return np.array(values, dtype=np.int64)


def _cmd_eval(args) -> dict:
    ds = load_csv(args.data, label_column=args.label_column)
    if ds.labels is None:
        raise InputError(f"{args.data}: no {args.label_column!r} column")
    pred = _read_int_column(args.assignments, args.cluster_column)
    if pred.shape[0] != ds.labels.shape[0]:
        raise InputError(
            f"assignment count {pred.shape[0]} != label count "
            f"{ds.labels.shape[0]}"
        )
    return {"ari": adjusted_rand_index(ds.labels, pred),
            "entropy": clustering_entropy(ds.labels, pred),
            "n": int(pred.shape[0])}


def _parse_mask(text: str) -> np.ndarray:
    parts = [c.strip() for c in text.split(",") if c.strip()]
    if not parts or any(c not in ("0", "1") for c in parts):
        raise ParseError(f"mask must be a comma list of 0/1, got {text!r}")
    return np.array([c == "1" for c in parts], dtype=bool)


def _cmd_audit(args) -> dict:
    if args.weights:
        stack = load_csv(args.weights, label_column=None).X
        if args.mask:
            mask = _parse_mask(args.mask)
        elif args.input:
            ds = load_csv(args.input, label_column=args.label_column)
            if ds.informative_mask is None:
                raise InputError(f"{args.input}: no #informative row")
            mask = ds.informative_mask
        else:
            raise InputError("audit with --weights needs --mask or --input")
        return {"source": "stored", "report": audit_weight_stack(stack, mask).to_dict()}

    if not args.input:
        raise InputError("audit needs --weights or --input")
    ds = _load_normalized(args)
    if args.mask:
        mask = _parse_mask(args.mask)
    elif ds.informative_mask is not None:
        mask = ds.informative_mask
    else:
        raise InputError(f"{args.input}: no #informative row and no --mask")
    if mask.shape[0] != ds.m:
        raise InputError(f"mask length {mask.shape[0]} != feature count {ds.m}")
    r = args.r if args.r is not None else int(mask.sum())
    sel = fs_mwkpp(ds.X, args.k, r, p_grid=parse_grid(args.grid),
                   n_restarts=args.restarts, seed=args.seed, mode=args.mode,
                   max_iter=args.max_iter)
    return {
        "source": "fresh",
        "selected_indices": [int(j) for j in sel.selected],
        "report": audit_weight_stack(sel.weight_stack, mask).to_dict(),
    }


def _cmd_bench(args) -> dict:
    configs = tuple(c.strip() for c in args.configs.split(";")) \
        if args.configs else BENCH_CONFIG_NAMES
    grid = parse_grid(args.grid)
    if args.suite == "clustering":
        results = run_clustering_bench(
            configs, datasets_per_config=args.datasets, n_runs=args.restarts,
            p_grid=grid, seed=args.seed, mode=args.mode,
            max_iter=args.max_iter)
        table = format_clustering_table(results)
    else:
        results = run_selection_bench(
            configs, datasets_per_config=args.datasets,
            n_restarts=args.restarts, p_grid=grid, seed=args.seed,
            mode=args.mode, max_iter=args.max_iter)
        table = format_selection_table(results)
    if args.output:
        Path(args.output).write_text(table + "\n", encoding="utf-8")
    print(table)
    return {"suite": args.suite, "table": table,
            "configs": [r.to_dict() for r in results]}


def _add_common(sp, *, normalize=False):
    sp.add_argument("--seed", type=int, default=0, help="64-bit base seed")
    if normalize:
        sp.add_argument("--no-normalize", action="store_true",
                        help="skip range normalization on load")
        sp.add_argument("--label-column", default="label")
        sp.add_argument("--mode", choices=("fast", "exact"), default="fast")
        sp.add_argument("--max-iter", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwkpp",
        description="Weighted Minkowski clustering, feature selection, "
                    "and benchmark tooling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", help="generate synthetic benchmark datasets")
    sp.add_argument("--config", required=True,
                    help="configuration name like '1000x4-3 +2NF'")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--outdir", default=".")
    _add_common(sp)
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("cluster", help="cluster a CSV dataset")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--algorithm", choices=("mwkpp", "mwk", "kmeans"),
                    default="mwkpp")
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--restarts", type=int, default=25)
    sp.add_argument("--output", default=None)
    _add_common(sp, normalize=True)
    sp.set_defaults(func=_cmd_cluster)

    sp = sub.add_parser("select", help="select features by weight stability")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--grid", default="fine")
    sp.add_argument("--restarts", type=int, default=25)
    sp.add_argument("--scalable", action="store_true",
                    help="subsample instead of restarting (large n)")
    sp.add_argument("--outer", type=int, default=25,
                    help="subsample iterations for --scalable")
    sp.add_argument("--emit", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default=None)
    _add_common(sp, normalize=True)
    sp.set_defaults(func=_cmd_select)

    sp = sub.add_parser("eval", help="score stored assignments against labels")
    sp.add_argument("--data", required=True)
    sp.add_argument("--assignments", required=True)
    sp.add_argument("--label-column", default="label")
    sp.add_argument("--cluster-column", default="cluster")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("audit", help="audit a weight stack against a noise mask")
    sp.add_argument("--weights", default=None,
                    help="CSV of stored weight rows to audit")
    sp.add_argument("--input", default=None,
                    help="dataset CSV for a fresh selection run")
    sp.add_argument("--mask", default=None, help="comma list of 0/1 flags")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--grid", default="coarse")
    sp.add_argument("--restarts", type=int, default=25)
    _add_common(sp, normalize=True)
    sp.set_defaults(func=_cmd_audit)

    sp = sub.add_parser("bench", help="run a comparison suite")
    sp.add_argument("--suite", choices=("clustering", "selection"),
                    required=True)
    sp.add_argument("--datasets", type=int, default=10,
                    help="datasets per configuration")
    sp.add_argument("--restarts", type=int, default=25,
                    help="runs (clustering) or restarts (selection) per dataset")
    sp.add_argument("--grid", default="coarse")
    sp.add_argument("--configs", default=None,
                    help="semicolon-separated subset of configuration names")
    sp.add_argument("--output", default=None)
    sp.add_argument("--mode", choices=("fast", "exact"), default="fast")
    sp.add_argument("--max-iter", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_bench)

    return parser


def _config_dict(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            t0 = time.perf_counter()
            results = args.func(args)
            elapsed_ms = (time.perf_counter() - t0) * 1000.0
        summary = {
            "config": _config_dict(args),
            "seed": args.seed,
            "results": results,
            "warnings": [str(w.message) for w in caught],
            "timing_ms": elapsed_ms,
        }
        print(json.dumps(summary, sort_keys=True, default=_jsonify))
        return 0
    except ParseError as exc:
        print(f"PARSE_ERROR: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"INPUT_ERROR: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"IO_ERROR: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
