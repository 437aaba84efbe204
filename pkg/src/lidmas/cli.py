"""Command-line entry point: sweep, sensitivity, boundary, calibrate.

Seed precedence: --seed flag, then an explicit master_seed in the config
file, then the LIDMAS_SEED environment variable, then the built-in
default. Every subcommand writes a run manifest (config hash, seed,
version) next to its outputs; outputs are byte-identical for a fixed
config and seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import replace

from . import __version__
from .analysis import (phase_boundary, sensitivity_maps, write_boundary_csv,
                       write_sensitivity_csv)
from .calibrate import calibrate, report
from .config import (ConfigError, RunConfig, config_to_dict, load_config,
                     with_overrides)
from .sweep import read_csv, run_sweep, write_csv

SWEEP_CSV = "sweep.csv"
BOUNDARY_CSV = "boundary.csv"
MANIFEST = "run_manifest.txt"
CALIBRATED_JSON = "calibrated_params.json"


def _sensitivity_csv(d: int) -> str:
    return f"sensitivity_d{d}.csv"


def _config_hash(cfg: RunConfig) -> str:
    doc = json.dumps(config_to_dict(cfg), sort_keys=True)
    return hashlib.sha256(doc.encode()).hexdigest()


def _write_manifest(cfg: RunConfig, command: str) -> None:
    path = os.path.join(cfg.out_dir, MANIFEST)
    with open(path, "w") as fh:
        fh.write(f"command: {command}\n")
        fh.write(f"version: {__version__}\n")
        fh.write(f"seed: {cfg.grid.master_seed}\n")
        fh.write(f"config_sha256: {_config_hash(cfg)}\n")


def _resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    env_seed = os.environ.get("LIDMAS_SEED")
    if args.seed is not None:
        cfg = with_overrides(cfg, seed=args.seed)
    elif not cfg.seed_was_explicit and env_seed is not None:
        try:
            cfg = with_overrides(cfg, seed=int(env_seed))
        except ValueError:
            raise ConfigError("LIDMAS_SEED", f"not an integer: {env_seed!r}")
    cfg = with_overrides(cfg, out_dir=args.out_dir, trials=args.trials)
    os.makedirs(cfg.out_dir, exist_ok=True)
    return cfg


def cmd_sweep(cfg: RunConfig) -> int:
    table = run_sweep(cfg.grid, cfg.noise, cfg.outer_code, cfg.rus)
    path = os.path.join(cfg.out_dir, SWEEP_CSV)
    write_csv(table, path)
    _write_manifest(cfg, "sweep")
    n_rows = len(table.cells)
    print(f"sweep: wrote {n_rows} rows to {path} "
          f"({len(cfg.grid.s_db)} squeezings x {len(cfg.grid.p_base)} losses x "
          f"{len(cfg.grid.d)} distances, {cfg.grid.n_trials} trials/point, "
          f"seed {cfg.grid.master_seed}).")
    return 0


def _load_table(cfg: RunConfig):
    path = os.path.join(cfg.out_dir, SWEEP_CSV)
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"no sweep table at {path!r}; run 'lidmas sweep' first")
    return read_csv(path)


def cmd_sensitivity(cfg: RunConfig) -> int:
    table = _load_table(cfg)
    paths = []
    for d in table.d:
        grid = sensitivity_maps(table, d)
        path = os.path.join(cfg.out_dir, _sensitivity_csv(d))
        write_sensitivity_csv(grid, path)
        paths.append(path)
    _write_manifest(cfg, "sensitivity")
    print(f"sensitivity: wrote {len(paths)} per-distance gradient maps "
          f"({len(table.s_db) * len(table.p_base)} rows each, "
          f"seed {cfg.grid.master_seed}): {', '.join(paths)}.")
    return 0


def cmd_boundary(cfg: RunConfig) -> int:
    table = _load_table(cfg)
    boundary = phase_boundary(table, cfg.targets)
    path = os.path.join(cfg.out_dir, BOUNDARY_CSV)
    write_boundary_csv(boundary, path)
    _write_manifest(cfg, "boundary")
    attainable = sum(1 for v in boundary.s_min.values() if v is not None)
    print(f"boundary: wrote {len(boundary.s_min)} rows to {path} "
          f"({attainable} attainable at targets P*>={cfg.targets.p_star}, "
          f"F*>={cfg.targets.f_star}, seed {cfg.grid.master_seed}).")
    return 0


def cmd_calibrate(cfg: RunConfig) -> int:
    result = calibrate(cfg.grid, cfg.noise, cfg.rus, cfg.outer_code)
    constants = {
        "noise": {
            "alpha_s": result.noise.alpha_s, "beta": result.noise.beta,
            "alpha_ls": result.noise.alpha_ls,
            "p_dep_data": result.noise.p_dep_data,
            "p_dep_ancilla": result.noise.p_dep_ancilla,
            "p_dep_out": result.noise.p_dep_out,
        },
        "rus": {"p_branch_fail": result.rus.p_branch_fail},
    }
    json_path = os.path.join(cfg.out_dir, CALIBRATED_JSON)
    with open(json_path, "w") as fh:
        json.dump(constants, fh, indent=2, sort_keys=True)
        fh.write("\n")
    report_path = os.path.join(cfg.out_dir, "calibration_report.txt")
    with open(report_path, "w") as fh:
        fh.write(report(result))
    _write_manifest(cfg, "calibrate")
    print(report(result), end="")
    print(f"calibrate: constants written to {json_path}.")
    return 0 if result.feasible else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lidmas",
        description="Monte Carlo model of repeat-until-success T-gate "
                    "injection in GKP-encoded photonic qubits.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("sweep", "run the Monte Carlo parameter sweep and write sweep.csv"),
        ("sensitivity", "finite-difference gradient maps from sweep.csv"),
        ("boundary", "minimum-squeezing phase boundary from sweep.csv"),
        ("calibrate", "fit the free noise constants to the headline targets"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=str, default=None,
                       help="path to a JSON run configuration")
        p.add_argument("--seed", type=int, default=None,
                       help="master seed (overrides config and LIDMAS_SEED)")
        p.add_argument("--out-dir", type=str, default=None,
                       help="output directory (default from config)")
        p.add_argument("--trials", type=int, default=None,
                       help="trials per grid point (overrides config)")
    args = parser.parse_args(argv)
    handlers = {"sweep": cmd_sweep, "sensitivity": cmd_sensitivity,
                "boundary": cmd_boundary, "calibrate": cmd_calibrate}
    try:
        cfg = _resolve_config(args)
        return handlers[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
