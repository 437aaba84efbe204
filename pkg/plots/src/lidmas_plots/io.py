"""CSV readers for the three artifact schemas.

Schemas are validated by name: a mismatch raises a ValueError listing
the missing or unexpected columns so a wrong file is caught before any
figure is drawn.
"""

from __future__ import annotations

import csv
import os
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

SWEEP_COLUMNS = [
    "s_db", "p_base", "d", "p_succ", "p_succ_se", "avg_rounds",
    "avg_rounds_se", "f_inj", "f_inj_se", "p_phys", "p_l", "f_log",
    "above_threshold", "n_trials", "point_seed",
]
SENSITIVITY_COLUMNS = ["s_db", "p_base", "dF_dloss", "dF_dsqueeze", "scheme"]
BOUNDARY_COLUMNS = ["p_base", "d", "s_min_db", "attainable"]

# metrics that carry a standard-error companion column
METRIC_SE = {"p_succ": "p_succ_se", "avg_rounds": "avg_rounds_se",
             "f_log": None}


@dataclass(frozen=True)
class SweepRow:
    s_db: float
    p_base: float
    d: int
    values: Dict[str, float]


@dataclass(frozen=True)
class SensitivityTable:
    distance: int
    s_db: Tuple[float, ...]
    p_base: Tuple[float, ...]
    # (s_db, p_base) -> (dF_dloss, dF_dsqueeze)
    cells: Dict[Tuple[float, float], Tuple[float, float]]


@dataclass(frozen=True)
class BoundaryRow:
    p_base: float
    d: int
    s_min_db: Optional[float]


def _check_columns(fieldnames, expected, path) -> None:
    if fieldnames != expected:
        missing = [c for c in expected if c not in (fieldnames or [])]
        extra = [c for c in (fieldnames or []) if c not in expected]
        raise ValueError(
            f"unexpected columns in {path!r}: missing {missing or 'none'}, "
            f"unexpected {extra or 'none'}")


def read_sweep(path: str) -> List[SweepRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        _check_columns(reader.fieldnames, SWEEP_COLUMNS, path)
        rows = []
        for raw in reader:
            values = {name: float(raw[name])
                      for name in ("p_succ", "p_succ_se", "avg_rounds",
                                   "avg_rounds_se", "f_inj", "f_inj_se",
                                   "p_phys", "p_l", "f_log")}
            rows.append(SweepRow(s_db=float(raw["s_db"]),
                                 p_base=float(raw["p_base"]),
                                 d=int(raw["d"]), values=values))
    if not rows:
        raise ValueError(f"no data rows in {path!r}")
    return rows


def distance_from_filename(path: str) -> int:
    """Sensitivity files carry the code distance in their name (…_d{N}.csv)."""
    match = re.search(r"_d(\d+)\.csv$", os.path.basename(path))
    if not match:
        raise ValueError(
            f"cannot infer code distance from file name {path!r}; "
            "expected a name like sensitivity_d3.csv")
    return int(match.group(1))


def read_sensitivity(path: str) -> SensitivityTable:
    distance = distance_from_filename(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        _check_columns(reader.fieldnames, SENSITIVITY_COLUMNS, path)
        cells = {}
        for raw in reader:
            key = (float(raw["s_db"]), float(raw["p_base"]))
            cells[key] = (float(raw["dF_dloss"]), float(raw["dF_dsqueeze"]))
    if not cells:
        raise ValueError(f"no data rows in {path!r}")
    s_vals = tuple(sorted({k[0] for k in cells}))
    p_vals = tuple(sorted({k[1] for k in cells}))
    return SensitivityTable(distance=distance, s_db=s_vals, p_base=p_vals,
                            cells=cells)


def read_boundary(path: str) -> List[BoundaryRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        _check_columns(reader.fieldnames, BOUNDARY_COLUMNS, path)
        rows = []
        for raw in reader:
            attainable = raw["attainable"] == "1"
            rows.append(BoundaryRow(
                p_base=float(raw["p_base"]), d=int(raw["d"]),
                s_min_db=float(raw["s_min_db"]) if attainable else None))
    if not rows:
        raise ValueError(f"no data rows in {path!r}")
    return rows
