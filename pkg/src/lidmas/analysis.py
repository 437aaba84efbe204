"""Post-processing of sweep tables: sensitivity maps and phase boundaries.

Gradients are plain finite differences on the simulated grid (central at
interior points, one-sided at the edges, grid spacing as the step); the
boundary is reported at grid resolution with no interpolation.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .sweep import SweepTable

SENSITIVITY_COLUMNS = ["s_db", "p_base", "dF_dloss", "dF_dsqueeze", "scheme"]
BOUNDARY_COLUMNS = ["p_base", "d", "s_min_db", "attainable"]


@dataclass(frozen=True)
class BoundaryTargets:
    p_star: float = 0.95
    f_star: float = 0.79

    def __post_init__(self):
        if not 0.0 < self.p_star < 1.0 or not 0.0 < self.f_star < 1.0:
            raise ValueError("targets must be in (0, 1)")


@dataclass
class SensitivityGrid:
    """Finite-difference gradients of f_log at a fixed code distance.

    Arrays are indexed [i_s, i_loss]; schemes record which difference was
    used along each axis at each point ("central", "forward", "backward").
    """

    distance: int
    s_db: Tuple[float, ...]
    p_base: Tuple[float, ...]
    df_dloss: np.ndarray
    df_dsqueeze: np.ndarray
    scheme_loss: List[List[str]]
    scheme_squeeze: List[List[str]]


@dataclass
class PhaseBoundary:
    targets: BoundaryTargets
    # (p_base, d) -> minimum grid squeezing, or None when unattainable
    s_min: Dict[Tuple[float, int], Optional[float]]


def _axis_gradient(values: np.ndarray, coords: np.ndarray, i: int) -> Tuple[float, str]:
    if i == 0:
        return (values[1] - values[0]) / (coords[1] - coords[0]), "forward"
    if i == len(coords) - 1:
        return (values[-1] - values[-2]) / (coords[-1] - coords[-2]), "backward"
    return (values[i + 1] - values[i - 1]) / (coords[i + 1] - coords[i - 1]), "central"


def sensitivity_maps(table: SweepTable, d: int) -> SensitivityGrid:
    """Gradient maps of f_log over (s_db, p_base) at one code distance."""
    if len(table.s_db) < 2 or len(table.p_base) < 2:
        raise ValueError("sensitivity maps need at least 2 points per axis")
    if d not in table.d:
        raise ValueError(f"distance {d} not present in table")
    s_vals = np.asarray(table.s_db, dtype=float)
    l_vals = np.asarray(table.p_base, dtype=float)
    f = np.array([[table.get(s, l, d).f_log for l in table.p_base]
                  for s in table.s_db])
    df_dloss = np.zeros_like(f)
    df_dsq = np.zeros_like(f)
    scheme_loss = [[""] * len(l_vals) for _ in s_vals]
    scheme_sq = [[""] * len(l_vals) for _ in s_vals]
    for i in range(len(s_vals)):
        for j in range(len(l_vals)):
            df_dloss[i, j], scheme_loss[i][j] = _axis_gradient(f[i, :], l_vals, j)
            df_dsq[i, j], scheme_sq[i][j] = _axis_gradient(f[:, j], s_vals, i)
    if not (np.all(np.isfinite(df_dloss)) and np.all(np.isfinite(df_dsq))):
        raise ValueError("non-finite gradient; table contains undefined f_log")
    return SensitivityGrid(distance=d, s_db=table.s_db, p_base=table.p_base,
                           df_dloss=df_dloss, df_dsqueeze=df_dsq,
                           scheme_loss=scheme_loss, scheme_squeeze=scheme_sq)


def phase_boundary(table: SweepTable, targets: BoundaryTargets) -> PhaseBoundary:
    """Smallest grid squeezing meeting both targets per (p_base, d)."""
    s_min: Dict[Tuple[float, int], Optional[float]] = {}
    for d in table.d:
        for p in table.p_base:
            found = None
            for s in table.s_db:  # axes are sorted ascending
                cell = table.get(s, p, d)
                if cell.p_succ >= targets.p_star and cell.f_log >= targets.f_star:
                    found = s
                    break
            s_min[(p, d)] = found
    return PhaseBoundary(targets=targets, s_min=s_min)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_sensitivity_csv(grid: SensitivityGrid, destination) -> None:
    try:
        with open(destination, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(SENSITIVITY_COLUMNS)
            for i, s in enumerate(grid.s_db):
                for j, l in enumerate(grid.p_base):
                    scheme = f"loss:{grid.scheme_loss[i][j]};s:{grid.scheme_squeeze[i][j]}"
                    writer.writerow([_fmt(s), _fmt(l), _fmt(grid.df_dloss[i, j]),
                                     _fmt(grid.df_dsqueeze[i, j]), scheme])
    except OSError as exc:
        raise OSError(f"cannot write sensitivity CSV to {destination!r}: {exc}") from exc


def write_boundary_csv(boundary: PhaseBoundary, destination) -> None:
    try:
        with open(destination, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(BOUNDARY_COLUMNS)
            for (p, d) in sorted(boundary.s_min, key=lambda k: (k[1], k[0])):
                s = boundary.s_min[(p, d)]
                writer.writerow([_fmt(p), str(d),
                                 _fmt(s) if s is not None else "nan",
                                 "1" if s is not None else "0"])
    except OSError as exc:
        raise OSError(f"cannot write boundary CSV to {destination!r}: {exc}") from exc
