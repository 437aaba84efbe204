"""Shared rendering conventions: deterministic SVG output, save helper."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

FORMATS = ("svg", "png")

METRIC_LABELS = {
    "p_succ": "RUS success probability",
    "avg_rounds": "mean rounds per success",
    "f_log": "logical magic-state fidelity",
}

# stable ids so re-rendering the same data yields identical SVG bytes
matplotlib.rcParams["svg.hashsalt"] = "lidmas-plots"


def save(fig, out: str, fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; choose from {FORMATS}")
    metadata = {"Date": None} if fmt == "svg" else None
    fig.savefig(out, format=fmt, metadata=metadata, bbox_inches="tight")
    plt.close(fig)


def add_io_arguments(parser, multi_input: bool = False) -> None:
    if multi_input:
        parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                            help="input CSV files")
    else:
        parser.add_argument("--in", dest="inputs", required=True,
                            help="input CSV file")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", choices=FORMATS, default="svg",
                        help="image format (default: svg)")
