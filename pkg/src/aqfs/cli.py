"""Batch command-line front end: mi | select | compare | scan.

Exit codes: 0 success, 2 usage/configuration error, 3 data error,
4 numerical error (including degenerate gaps).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .data import DEFAULT_BIN_COUNT, Dataset, load_dataset, synthetic_dataset
from .evolution import (DEFAULT_GRID_POINTS, Schedule, scan_gap, spectrum)
from .exceptions import (AQFSError, ConfigurationError, DataError,
                         DegenerateGapError)
from .ising import annealing_driver, build_problem_hamiltonian, encode_qubo, interpolate
from .mi import build_mi_matrix, normalize_mi_matrix, write_mi_matrix
from .oracle import brute_force_select
from .pipeline import DEFAULT_SAFETY, resolve_alpha, select_features

DEFAULT_SYNTH_FEATURES = 6
DEFAULT_SYNTH_SAMPLES = 300


def _fmt(value) -> str:
    return repr(float(value))


def _write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def read_csv_table(path) -> dict:
    """Read any CSV this module emitted back into float arrays by column."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    data = np.array(rows)
    return {name: data[:, i] for i, name in enumerate(header)}


def _write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _add_common(parser: argparse.ArgumentParser, needs_k: bool) -> None:
    src = parser.add_argument_group("input")
    src.add_argument("--input", metavar="PATH", help="delimited text file with header row")
    src.add_argument("--synthetic", action="store_true",
                     help="generate a seeded standard-normal dataset instead of reading one")
    src.add_argument("--target", metavar="NAME", help="target column name (file input)")
    src.add_argument("--delimiter", default=",", help="field delimiter (default ',')")
    src.add_argument("--features", type=int, default=DEFAULT_SYNTH_FEATURES,
                     help="synthetic feature count")
    src.add_argument("--samples", type=int, default=DEFAULT_SYNTH_SAMPLES,
                     help="synthetic sample count")
    src.add_argument("--informative", type=int, default=None,
                     help="synthetic feature index copied into the target")
    src.add_argument("--seed", type=int, default=0, help="synthetic-mode seed")
    parser.add_argument("--bins", type=int, default=DEFAULT_BIN_COUNT,
                        help="equal-width bins for real columns")
    parser.add_argument("--out", default=".", metavar="DIR", help="output directory")
    if needs_k:
        parser.add_argument("--alpha", default="auto",
                            help="penalty strength, or 'auto' for the sufficiency bound")
        parser.add_argument("--k", type=int, required=True,
                            help="target number of selected features")
        parser.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS,
                            help="gap-scan grid points")
        parser.add_argument("--safety", type=float, default=DEFAULT_SAFETY,
                            help="anneal time multiplier: T = safety / g_min^2")
        parser.add_argument("--time", type=float, default=None,
                            help="override the anneal duration T")
        parser.add_argument("--steps", type=int, default=None,
                            help="override the integrator step count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqfs",
        description="k-of-n feature selection via a simulated adiabatic anneal "
                    "of an Ising-encoded mutual-information objective.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mi = sub.add_parser("mi", help="compute and store the MI matrix")
    _add_common(p_mi, needs_k=False)

    p_select = sub.add_parser("select", help="run the full selection pipeline")
    _add_common(p_select, needs_k=True)

    p_compare = sub.add_parser("compare",
                               help="selection pipeline vs. brute-force oracle")
    _add_common(p_compare, needs_k=True)
    p_compare.add_argument("--curve-max-m", type=int, default=None,
                           help="largest feature count on the complexity curves")

    p_scan = sub.add_parser("scan", help="emit gap traces (optionally per alpha)")
    _add_common(p_scan, needs_k=True)
    p_scan.add_argument("--alphas", default=None,
                        help="comma-separated penalty strengths to sweep")
    return parser


def _load(args) -> Dataset:
    if bool(args.input) == bool(args.synthetic):
        raise ConfigurationError("exactly one of --input or --synthetic is required")
    if args.input:
        if not args.target:
            raise ConfigurationError("--target is required with --input")
        return load_dataset(args.input, args.target, args.delimiter)
    return synthetic_dataset(args.seed, args.features, args.samples,
                             args.informative)


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_mi(args) -> int:
    data = _load(args)
    matrix = build_mi_matrix(data, args.bins)
    out = _outdir(args)
    path = out / "mi_matrix.json"
    write_mi_matrix(matrix, path)
    print(f"n={matrix.n} features, {data.sample_count} samples")
    print(f"relevance (diagonal): {[round(float(v), 6) for v in np.diag(matrix.entries)]}")
    print(f"total MI mass: {matrix.entries.sum():.6f} bits -> {path}")
    return 0


def _run_pipeline(args, data: Dataset):
    matrix = build_mi_matrix(data, args.bins)
    result = select_features(matrix, args.k, alpha=args.alpha,
                             grid_points=args.grid, safety=args.safety,
                             total_time=args.time, steps=args.steps)
    return matrix, result


def cmd_select(args) -> int:
    data = _load(args)
    _, result = _run_pipeline(args, data)
    out = _outdir(args)
    _write_json(out / "selection.json", result.report(include_wall_clock=True))
    result.trace.write_csv(out / "trace.csv")
    sel = result.selected
    print(f"selected features: {list(sel.indices)} "
          f"(probability {result.candidates[0][1]:.4f})")
    print(f"g_min={result.gap_scan.g_min:.6g} at s={result.gap_scan.s_at_g_min:.6g}, "
          f"gamma={result.gamma:.6g}, T={result.total_time:.6g}, "
          f"steps={result.trace.steps}")
    print(f"reports in {out}")
    return 0


def _complexity_rows(matrix, samples: int, args, max_m: int):
    """Classical n*m^2 vs quantum 1/g_min^2 for m = 1..max_m features."""
    rows = []
    for m in range(1, max_m + 1):
        sub = matrix.entries[:m, :m]
        classical = samples * m * m
        try:
            scaled = normalize_mi_matrix(type(matrix)(m, sub.copy()))
            alpha_value = resolve_alpha(scaled, args.alpha)
            problem = encode_qubo(scaled, alpha_value, min(args.k, m))
            scan = scan_gap(annealing_driver(m),
                            build_problem_hamiltonian(problem),
                            Schedule.gap_scan(args.grid))
            quantum = 1.0 / scan.g_min ** 2
        except AQFSError:
            quantum = float("nan")
        rows.append([str(m), str(classical), _fmt(quantum)])
    return rows


def cmd_compare(args) -> int:
    data = _load(args)
    matrix, result = _run_pipeline(args, data)
    oracle = brute_force_select(result.mi_matrix, result.alpha, args.k)
    selected_bits = tuple(result.selected.bits)
    match = selected_bits in set(oracle.optimal_bitstrings)
    x = np.array(selected_bits, dtype=float)
    fidelity = float(result.trace.ground_fidelity[-1])
    report = {
        "selection": result.report(include_wall_clock=False),
        "oracle": oracle.to_json_dict(),
        "match": bool(match),
        "selected_objective": float(x @ result.mi_matrix.entries @ x),
        "oracle_objective": oracle.objective_value,
        "diabatic_warning": (not match) or fidelity < 0.5,
    }
    out = _outdir(args)
    _write_json(out / "compare.json", report)
    result.trace.write_csv(out / "trace.csv")
    max_m = min(args.curve_max_m or matrix.n, matrix.n)
    _write_csv(out / "complexity.csv", ["m", "classical", "quantum"],
               _complexity_rows(matrix, data.sample_count, args, max_m))
    print(f"selected {list(result.selected.indices)}; oracle optima "
          f"{[list(b) for b in oracle.optimal_bitstrings]}; match={match}")
    if report["diabatic_warning"]:
        print("warning: low final fidelity or mismatch -- anneal may be "
              "diabatic; increase --safety or --time")
    print(f"reports in {out}")
    return 0


def cmd_scan(args) -> int:
    data = _load(args)
    matrix = normalize_mi_matrix(build_mi_matrix(data, args.bins))
    driver = annealing_driver(matrix.n)
    alpha_value = resolve_alpha(matrix, args.alpha)
    hp = build_problem_hamiltonian(encode_qubo(matrix, alpha_value, args.k))
    scan = scan_gap(driver, hp, Schedule.gap_scan(args.grid))
    out = _outdir(args)
    _write_csv(out / "gap_trace.csv", ["s", "E0", "E1", "gap"],
               [[_fmt(s), _fmt(a), _fmt(b), _fmt(g)]
                for s, a, b, g in zip(scan.s, scan.e0, scan.e1, scan.gaps)])
    print(f"g_min={scan.g_min:.8g} at s={scan.s_at_g_min:.8g} -> {out / 'gap_trace.csv'}")

    if args.alphas is not None:
        values = [v for v in args.alphas.split(",") if v.strip()]
        if not values:
            raise ConfigurationError("--alphas must list at least one value")
        rows = []
        for text in values:
            alpha = resolve_alpha(matrix, text.strip())
            hp_a = build_problem_hamiltonian(encode_qubo(matrix, alpha, args.k))
            scan_a = scan_gap(driver, hp_a, Schedule.gap_scan(args.grid))
            lam = spectrum(interpolate(driver, hp_a, scan_a.s_at_g_min))
            rows.append([_fmt(alpha), _fmt(lam[0]), _fmt(lam[1]), _fmt(scan_a.g_min)])
        _write_csv(out / "alpha_sweep.csv", ["alpha", "E0", "E1", "g_min"], rows)
        print(f"alpha sweep ({len(rows)} points) -> {out / 'alpha_sweep.csv'}")
    return 0


_COMMANDS = {"mi": cmd_mi, "select": cmd_select, "compare": cmd_compare,
             "scan": cmd_scan}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DegenerateGapError as exc:
        print(f"error: {exc}\nthe spectral gap closed: raise --alpha "
              f"(or use 'auto') or change --k", file=sys.stderr)
        return 4
    except ConfigurationError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except AQFSError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
