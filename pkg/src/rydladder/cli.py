"""Command-line front end.

Subcommands:
  sweep      run the configured ensemble sweep, write spectrum CSV + summary JSON
  eigen      dressed-eigenvalue scan over the configured sweep + crossing report
  validate   run the built-in oracle suite, machine-readable pass/fail output
  positions  sample one cloud from the configured geometry, write positions CSV

Thread count for Monte Carlo realizations: --threads flag, else the
RYDLADDER_THREADS environment variable, else 1.  Output bytes do not depend
on the thread count.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import __version__
from .analysis import avoided_crossings
from .bloch import dressed_eigenvalues
from .cloud import positions_csv, sample_positions
from .config import RunConfig, load_config
from .csvio import write_eigen_csv, write_spectrum_csv
from .ensemble import realization_seed_int, sweep
from .errors import ConfigError
from .params import to_mhz
from .validate import run_oracle_suite

THREADS_ENV = "RYDLADDER_THREADS"


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def _apply_seed_override(cfg: RunConfig, seed: int | None) -> RunConfig:
    if seed is None:
        return cfg
    resolved = {k: dict(v) for k, v in cfg.resolved.items()}
    resolved["sweep"]["master_seed"] = str(seed)
    return dataclasses.replace(cfg, master_seed=seed, resolved=resolved)


def _out_paths(cfg: RunConfig, args, csv_key: str, default_stem: str) -> tuple[str, str]:
    csv_path = args.out or cfg.output.get(csv_key) or f"{default_stem}.csv"
    json_path = cfg.output.get("summary_json") or os.path.splitext(csv_path)[0] + "_summary.json"
    return csv_path, json_path


def cmd_sweep(args) -> int:
    cfg = _apply_seed_override(load_config(args.config), args.seed)
    table = sweep(cfg.sweep_spec(), cfg.master_seed, threads=_threads(args))
    table = dataclasses.replace(table, config_hash=cfg.config_hash())
    csv_path, json_path = _out_paths(cfg, args, "spectrum_csv", "spectrum")

    fracs = [row.unconverged_frac for row in table.rows]
    errors = [{"swept_value": row.swept_value, "error": row.error}
              for row in table.rows if row.error]
    metadata = {
        "version": __version__,
        "config_hash": cfg.config_hash(),
        "master_seed": str(cfg.master_seed),
        "n_realizations": str(cfg.n_realizations),
        "unconverged_fraction_mean": f"{float(np.mean(fracs)):.12g}",
    }
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(write_spectrum_csv(table, metadata))
    summary = {
        "version": __version__,
        "config_hash": cfg.config_hash(),
        "master_seed": cfg.master_seed,
        "resolved_config": cfg.resolved,
        "config_ini": cfg.to_ini(),
        "spectrum_csv": csv_path,
        "points": len(table.rows),
        "unconverged_fraction_mean": float(np.mean(fracs)),
        "point_errors": errors,
    }
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {csv_path} and {json_path}")
    if errors:
        print(f"warning: {len(errors)} grid point(s) failed; see {json_path}", file=sys.stderr)
    return 0


def cmd_eigen(args) -> int:
    cfg = _apply_seed_override(load_config(args.config, require_ensemble=False), args.seed)
    if cfg.sweep_parameter == "n":
        raise ConfigError("eigenvalue scan sweeps a scheme parameter, not n")
    grid = np.linspace(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_points)
    eigs = np.array([dressed_eigenvalues(cfg.scheme.replace(**{cfg.sweep_parameter: v}))
                     for v in grid])
    csv_path, json_path = _out_paths(cfg, args, "eigen_csv", "eigen")
    metadata = {"version": __version__, "config_hash": cfg.config_hash()}
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(write_eigen_csv(to_mhz(grid), to_mhz(eigs), cfg.sweep_parameter, metadata))

    crossings = []
    if cfg.sweep_parameter == "delta1":
        crossings = [{"delta1_mhz": to_mhz(loc), "gap_mhz": to_mhz(gap)}
                     for loc, gap in avoided_crossings(cfg.scheme, grid)]
    summary = {
        "version": __version__,
        "config_hash": cfg.config_hash(),
        "resolved_config": cfg.resolved,
        "config_ini": cfg.to_ini(),
        "eigen_csv": csv_path,
        "avoided_crossings": crossings,
    }
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {csv_path} and {json_path}")
    return 0


def cmd_validate(args) -> int:
    report = run_oracle_suite(long_time_sets=args.sets)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report["passed"] else 1


def cmd_positions(args) -> int:
    cfg = _apply_seed_override(load_config(args.config), args.seed)
    geometry = dataclasses.replace(cfg.geometry, seed=realization_seed_int(cfg.master_seed, 0))
    out = args.out or cfg.output.get("positions_csv") or "positions.csv"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(positions_csv(sample_positions(geometry)))
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rydladder",
        description="Steady-state EIT/EIA spectra of interacting four-level "
                    "Rydberg ladder ensembles (self-consistent mean field).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to the run configuration")
    common.add_argument("--out", help="output CSV path (overrides [output] in the config)")
    common.add_argument("--seed", type=int, help="override [sweep] master_seed")
    common.add_argument("--threads", type=int,
                        help=f"realization thread count (default ${THREADS_ENV} or 1)")

    sub.add_parser("sweep", parents=[common],
                   help="ensemble sweep -> spectrum CSV + summary JSON").set_defaults(func=cmd_sweep)
    sub.add_parser("eigen", parents=[common],
                   help="dressed eigenvalue scan -> CSV + crossing report").set_defaults(func=cmd_eigen)
    val = sub.add_parser("validate", help="run the built-in oracle suite")
    val.add_argument("--sets", type=int, default=8,
                     help="random parameter sets for the long-time check")
    val.set_defaults(func=cmd_validate)
    sub.add_parser("positions", parents=[common],
                   help="sample one cloud, write positions CSV").set_defaults(func=cmd_positions)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
