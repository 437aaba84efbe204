"""Metric-versus-squeezing line figure from a sweep CSV.

One line per (loss rate, code distance) pair, x = squeezing in dB,
y = the chosen metric, with +-1 standard-error bands where the metric
has a sampled stderr column.
"""

from __future__ import annotations

import argparse
import sys
from typing import List

import matplotlib.pyplot as plt

from .io import METRIC_SE, SweepRow, read_sweep
from .style import METRIC_LABELS, add_io_arguments, save


def render(rows: List[SweepRow], metric: str):
    """Build the figure; returns a matplotlib Figure."""
    if metric not in METRIC_SE:
        raise ValueError(f"unknown metric {metric!r}; "
                         f"choose from {sorted(METRIC_SE)}")
    se_column = METRIC_SE[metric]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    p_vals = sorted({r.p_base for r in rows})
    d_vals = sorted({r.d for r in rows})
    cmap = plt.get_cmap("viridis")
    for i, p in enumerate(p_vals):
        color = cmap(i / max(1, len(p_vals) - 1) * 0.85)
        for j, d in enumerate(d_vals):
            series = sorted((r for r in rows if r.p_base == p and r.d == d),
                            key=lambda r: r.s_db)
            s = [r.s_db for r in series]
            y = [r.values[metric] for r in series]
            style = ["-", "--", "-.", ":"][j % 4]
            ax.plot(s, y, style, color=color, marker="o", markersize=3,
                    label=f"loss {p:g}, d={d}")
            if se_column is not None:
                se = [r.values[se_column] for r in series]
                ax.fill_between(s, [a - b for a, b in zip(y, se)],
                                [a + b for a, b in zip(y, se)],
                                color=color, alpha=0.15, linewidth=0)
    ax.set_xlabel("squeezing (dB)")
    ax.set_ylabel(METRIC_LABELS[metric])
    ax.legend(fontsize=7, ncol=2)
    ax.grid(True, alpha=0.3)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-metric-lines",
        description="Render a metric-vs-squeezing line figure from a "
                    "sweep CSV.")
    add_io_arguments(parser)
    parser.add_argument("--metric", choices=sorted(METRIC_SE),
                        default="f_log", help="sweep metric to plot")
    args = parser.parse_args(argv)
    try:
        fig = render(read_sweep(args.inputs), args.metric)
        save(fig, args.out, args.format)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
