"""Heatmap panel grid from per-distance sensitivity CSVs.

One row of panels per code distance (taken from the file names), two
columns: loss-gradient and squeezing-gradient of the logical fidelity.
Each column shares a single symmetric color scale so panels are
comparable across distances.
"""

from __future__ import annotations

import argparse
import sys
from typing import List

import matplotlib.pyplot as plt
import numpy as np

from .io import SensitivityTable, read_sensitivity
from .style import add_io_arguments, save

_COLUMNS = (("dF/d(loss)", 0), ("dF/d(squeezing) [1/dB]", 1))


def _field(table: SensitivityTable, which: int) -> np.ndarray:
    return np.array([[table.cells[(s, p)][which] for p in table.p_base]
                     for s in table.s_db])


def render(tables: List[SensitivityTable]):
    """Build the panel grid; returns a matplotlib Figure."""
    if not tables:
        raise ValueError("at least one sensitivity CSV is required")
    tables = sorted(tables, key=lambda t: t.distance)
    n_rows = len(tables)
    fig, axes = plt.subplots(n_rows, 2, squeeze=False,
                             figsize=(7.0, 1.9 * n_rows + 0.8))
    # one symmetric color scale per column, shared across distances
    scales = []
    for _, which in _COLUMNS:
        peak = max(float(np.abs(_field(t, which)).max()) for t in tables)
        scales.append(peak if peak > 0 else 1.0)
    def span(values, pad=0.5):
        lo, hi = min(values), max(values)
        return (lo - pad, hi + pad) if lo == hi else (lo, hi)

    for i, table in enumerate(tables):
        for j, (label, which) in enumerate(_COLUMNS):
            ax = axes[i][j]
            field = _field(table, which)
            mesh = ax.imshow(field, origin="lower", aspect="auto",
                             cmap="coolwarm", vmin=-scales[j], vmax=scales[j],
                             extent=(*span(table.p_base), *span(table.s_db)))
            ax.set_ylabel(f"d={table.distance}\nsqueezing (dB)", fontsize=8)
            if i == 0:
                ax.set_title(label, fontsize=9)
            if i == n_rows - 1:
                ax.set_xlabel("heralded loss rate", fontsize=8)
            fig.colorbar(mesh, ax=ax, shrink=0.9)
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-sensitivity-grid",
        description="Render a per-distance gradient heatmap grid from "
                    "sensitivity CSVs.")
    add_io_arguments(parser, multi_input=True)
    args = parser.parse_args(argv)
    try:
        fig = render([read_sensitivity(path) for path in args.inputs])
        save(fig, args.out, args.format)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
