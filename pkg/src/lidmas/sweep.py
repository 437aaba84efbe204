"""Seeded Monte Carlo sweep over (squeezing, loss, distance) and CSV I/O.

Each grid point runs n_trials independent RUS trials on substreams keyed
by (master_seed, stream_index, trial_index). With common random numbers
(the default) the stream index is shared across all points, so neighbor
differences and monotonicity checks are not drowned in sampling noise;
without it each point gets its own index. Either way results are
independent of scheduling and worker count.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

import numpy as np

from .injection import PointStats, RusConfig, estimate_point
from .noise import NoiseParams, trial_rng
from .outer_code import (OuterCodeParams, effective_phys_rate,
                         logical_error_rate, protect_fidelity)

CSV_COLUMNS = [
    "s_db", "p_base", "d", "p_succ", "p_succ_se", "avg_rounds",
    "avg_rounds_se", "f_inj", "f_inj_se", "p_phys", "p_l", "f_log",
    "above_threshold", "n_trials", "point_seed",
]


@dataclass(frozen=True)
class GridSpec:
    s_db: Tuple[float, ...] = (8.0, 10.0, 12.0, 14.0, 16.0)
    p_base: Tuple[float, ...] = (0.01, 0.02, 0.03)
    d: Tuple[int, ...] = (1, 3, 5, 7)
    n_trials: int = 5000
    master_seed: int = 42
    common_random_numbers: bool = True
    workers: int = 1

    def __post_init__(self):
        for name in ("s_db", "p_base", "d"):
            vals = getattr(self, name)
            if len(vals) == 0:
                raise ValueError(f"{name} axis must be non-empty")
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ValueError(f"{name} axis must be strictly increasing")
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class SweepResult:
    s_db: float
    p_base: float
    d: int
    p_succ: float
    p_succ_se: float
    avg_rounds: float
    avg_rounds_se: float
    f_inj: float
    f_inj_se: float
    p_phys: float
    p_l: float
    f_log: float
    above_threshold: bool
    n_trials: int
    point_seed: int


@dataclass
class SweepTable:
    s_db: Tuple[float, ...]
    p_base: Tuple[float, ...]
    d: Tuple[int, ...]
    cells: Dict[Tuple[float, float, int], SweepResult] = field(default_factory=dict)
    master_seed: int = 0
    common_random_numbers: bool = True

    def rows(self) -> List[SweepResult]:
        return [self.cells[key] for key in sorted(self.cells,
                                                  key=lambda k: (k[2], k[1], k[0]))]

    def get(self, s: float, p: float, d: int) -> SweepResult:
        return self.cells[(s, p, d)]


def _point_order(grid: GridSpec) -> List[Tuple[float, float, int]]:
    """Fixed enumeration order (d, p_base, s_db), matching the CSV sort."""
    return [(s, p, d) for d in grid.d for p in grid.p_base for s in grid.s_db]


def _stream_seed(master_seed: int, stream_index: int) -> int:
    return int(np.random.SeedSequence((master_seed, stream_index))
               .generate_state(1, np.uint64)[0])


def _stats_to_result(coords, stats: PointStats, noise: NoiseParams,
                     code: OuterCodeParams, point_seed: int) -> SweepResult:
    s, p_base, d = coords
    n = stats.n_trials
    k = stats.successes
    p_succ = k / n
    p_succ_se = math.sqrt(p_succ * (1.0 - p_succ) / n)
    if k > 0:
        avg_rounds = stats.round_sum / k
        f_inj = stats.fid_sum / k
        if k > 1:
            var_r = max(0.0, (stats.round_sumsq - k * avg_rounds ** 2) / (k - 1))
            var_f = max(0.0, (stats.fid_sumsq - k * f_inj ** 2) / (k - 1))
            avg_rounds_se = math.sqrt(var_r / k)
            f_inj_se = math.sqrt(var_f / k)
        else:
            avg_rounds_se = f_inj_se = 0.0
    else:
        avg_rounds = f_inj = float("nan")
        avg_rounds_se = f_inj_se = 0.0
    p_phys = effective_phys_rate(noise.p_z, noise.p_dep_out, code)
    p_l, above = logical_error_rate(p_phys, code)
    f_log = protect_fidelity(f_inj, p_l) if k > 0 else float("nan")
    return SweepResult(s_db=s, p_base=p_base, d=d, p_succ=p_succ,
                       p_succ_se=p_succ_se, avg_rounds=avg_rounds,
                       avg_rounds_se=avg_rounds_se, f_inj=f_inj,
                       f_inj_se=f_inj_se, p_phys=p_phys, p_l=p_l,
                       f_log=f_log, above_threshold=above, n_trials=n,
                       point_seed=point_seed)


def run_sweep(grid: GridSpec, noise_template: NoiseParams,
              code_template: OuterCodeParams, rus: RusConfig) -> SweepTable:
    """Run the full grid; byte-reproducible for a fixed master seed."""
    order = _point_order(grid)
    table = SweepTable(s_db=grid.s_db, p_base=grid.p_base, d=grid.d,
                       master_seed=grid.master_seed,
                       common_random_numbers=grid.common_random_numbers)

    # Under common random numbers the distance axis (and any coordinate
    # change at all) leaves the trial streams untouched, so points sharing
    # (s, p_base) provably produce identical raw statistics; simulate each
    # unique noise setting once.
    tasks = []  # (sim_key, noise, stream_index)
    seen = {}
    for idx, (s, p_base, _) in enumerate(order):
        stream_index = 0 if grid.common_random_numbers else idx
        key = (s, p_base, stream_index)
        if key not in seen:
            seen[key] = None
            noise = replace(noise_template, s_db=s, p_base=p_base)
            tasks.append((key, noise, stream_index))

    def simulate(task):
        key, noise, stream_index = task
        substream = lambda t: trial_rng(grid.master_seed, stream_index, t)
        return key, estimate_point(rus, noise, grid.n_trials, substream)

    if grid.workers > 1:
        with ThreadPoolExecutor(max_workers=grid.workers) as pool:
            results = dict(pool.map(simulate, tasks))
    else:
        results = dict(map(simulate, tasks))

    for idx, (s, p_base, d) in enumerate(order):
        stream_index = 0 if grid.common_random_numbers else idx
        stats = results[(s, p_base, stream_index)]
        noise = replace(noise_template, s_db=s, p_base=p_base)
        code = replace(code_template, distance=d)
        point_seed = _stream_seed(grid.master_seed, stream_index)
        table.cells[(s, p_base, d)] = _stats_to_result(
            (s, p_base, d), stats, noise, code, point_seed)
    return table


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def write_csv(table: SweepTable, destination) -> None:
    """Write the sweep table with a fixed schema, sorted by (d, p_base, s_db).

    Floats are rendered with 17 significant digits so parsing the file
    reproduces every value bit-exactly.
    """
    try:
        with open(destination, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in table.rows():
                writer.writerow([
                    _fmt(r.s_db), _fmt(r.p_base), _fmt(r.d), _fmt(r.p_succ),
                    _fmt(r.p_succ_se), _fmt(r.avg_rounds), _fmt(r.avg_rounds_se),
                    _fmt(r.f_inj), _fmt(r.f_inj_se), _fmt(r.p_phys),
                    _fmt(r.p_l), _fmt(r.f_log), _fmt(r.above_threshold),
                    _fmt(r.n_trials), _fmt(r.point_seed),
                ])
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {destination!r}: {exc}") from exc


def read_csv(path) -> SweepTable:
    """Parse a sweep CSV back into a SweepTable."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"sweep table not found: {path!r}")
    cells = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(f"unexpected sweep CSV columns in {path!r}: "
                             f"{reader.fieldnames}")
        for row in reader:
            r = SweepResult(
                s_db=float(row["s_db"]), p_base=float(row["p_base"]),
                d=int(row["d"]), p_succ=float(row["p_succ"]),
                p_succ_se=float(row["p_succ_se"]),
                avg_rounds=float(row["avg_rounds"]),
                avg_rounds_se=float(row["avg_rounds_se"]),
                f_inj=float(row["f_inj"]), f_inj_se=float(row["f_inj_se"]),
                p_phys=float(row["p_phys"]), p_l=float(row["p_l"]),
                f_log=float(row["f_log"]),
                above_threshold=row["above_threshold"] == "1",
                n_trials=int(row["n_trials"]),
                point_seed=int(row["point_seed"]))
            cells[(r.s_db, r.p_base, r.d)] = r
    s_vals = tuple(sorted({k[0] for k in cells}))
    p_vals = tuple(sorted({k[1] for k in cells}))
    d_vals = tuple(sorted({k[2] for k in cells}))
    return SweepTable(s_db=s_vals, p_base=p_vals, d=d_vals, cells=cells)
