"""Minimum-squeezing phase-boundary chart from a boundary CSV.

One line per code distance showing the smallest squeezing that meets the
joint success-probability and fidelity targets as a function of the loss
rate. Loss rates where the targets are unattainable at a distance are
omitted from that line and noted in the legend.
"""

from __future__ import annotations

import argparse
import sys
from typing import List

import matplotlib.pyplot as plt

from .io import BoundaryRow, read_boundary
from .style import add_io_arguments, save


def render(rows: List[BoundaryRow]):
    """Build the figure; returns a matplotlib Figure."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    d_vals = sorted({r.d for r in rows})
    any_line = False
    for j, d in enumerate(d_vals):
        series = sorted((r for r in rows if r.d == d), key=lambda r: r.p_base)
        attained = [(r.p_base, r.s_min_db) for r in series
                    if r.s_min_db is not None]
        omitted = len(series) - len(attained)
        label = f"d={d}"
        if omitted == len(series):
            label += " (unattainable)"
        elif omitted:
            label += f" ({omitted} point(s) unattainable)"
        if attained:
            any_line = True
            ax.plot([p for p, _ in attained], [s for _, s in attained],
                    marker="o", label=label)
        else:
            # keep the distance visible in the legend with no data drawn
            ax.plot([], [], marker="o", label=label)
    if not any_line:
        ax.annotate("targets unattainable at every grid point",
                    xy=(0.5, 0.5), xycoords="axes fraction", ha="center")
    ax.set_xlabel("heralded loss rate")
    ax.set_ylabel("minimum squeezing (dB)")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-boundary",
        description="Render the minimum-squeezing boundary chart from a "
                    "boundary CSV.")
    add_io_arguments(parser)
    args = parser.parse_args(argv)
    try:
        fig = render(read_boundary(args.inputs))
        save(fig, args.out, args.format)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
