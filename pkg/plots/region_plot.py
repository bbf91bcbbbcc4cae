#!/usr/bin/env python3
"""Render harvested-power-region figures from region.csv files.

Strictly read-only over the solver's CSV contract: one panel per input file,
average harvested power at node 1 on the x-axis and node 2 on the y-axis
(both in microwatts), one polyline per scheme sorted by the node-1 weight.

    python region_plot.py --csv out5/region.csv --csv out30/region.csv \
        --panel-label "5 W budget" --panel-label "30 W budget" --out region.pdf
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_HEADER = ["scheme", "xi1", "e1_watts", "e2_watts", "n_ok_realizations"]

WATTS_TO_MICROWATTS = 1e6

SCHEME_STYLE = {
    "proposed": dict(color="tab:blue", marker="o", label="two-beam policy"),
    "baseline_linear": dict(color="tab:orange", marker="s", label="linear-EH beamforming"),
    "baseline_single_beam": dict(color="tab:green", marker="^", label="single beam"),
}
FALLBACK_STYLE = dict(color="tab:gray", marker="x")


class SchemaError(ValueError):
    """The CSV header does not match the solver's region.csv contract."""


@dataclass
class PlotSpec:
    csv_paths: list
    out_path: str
    panel_labels: list = field(default_factory=list)


def read_region_csv(path):
    """Parse one region.csv into {scheme: [(xi1, e1, e2), ...]} sorted by xi1."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != EXPECTED_HEADER:
            raise SchemaError(
                f"{path}: expected header {','.join(EXPECTED_HEADER)!r}, "
                f"got {','.join(header) if header else '<empty file>'!r}"
            )
        by_scheme = {}
        for row in reader:
            if not row:
                continue
            if len(row) != len(EXPECTED_HEADER):
                raise SchemaError(f"{path}: malformed row {row!r}")
            scheme, xi1, e1, e2, _n_ok = row
            by_scheme.setdefault(scheme, []).append((float(xi1), float(e1), float(e2)))
    for rows in by_scheme.values():
        rows.sort(key=lambda r: r[0])
    return by_scheme


def render_region(spec):
    """Draw the figure and write it; returns per-panel per-scheme point counts."""
    panels = [read_region_csv(path) for path in spec.csv_paths]
    labels = list(spec.panel_labels)[: len(panels)]
    while len(labels) < len(panels):
        labels.append(f"panel {len(labels) + 1}")
    fig, axes = plt.subplots(
        1, len(panels), figsize=(5.2 * len(panels), 4.4), squeeze=False
    )
    counts = []
    for ax, by_scheme, label in zip(axes[0], panels, labels):
        panel_counts = {}
        for scheme in sorted(by_scheme):
            rows = by_scheme[scheme]
            style = SCHEME_STYLE.get(scheme, dict(FALLBACK_STYLE, label=scheme))
            ax.plot(
                [r[1] * WATTS_TO_MICROWATTS for r in rows],
                [r[2] * WATTS_TO_MICROWATTS for r in rows],
                linestyle="-",
                markersize=5,
                **style,
            )
            panel_counts[scheme] = len(rows)
        ax.set_xlabel("average harvested power, node 1 (µW)")
        ax.set_ylabel("average harvested power, node 2 (µW)")
        ax.set_title(label)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best", fontsize=9)
        counts.append(panel_counts)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)
    return counts


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="Harvested-power-region figure from region.csv files"
    )
    parser.add_argument("--csv", action="append", required=True,
                        help="region.csv path (repeat for multiple panels)")
    parser.add_argument("--panel-label", action="append", default=[],
                        help="panel title (repeat, matched by position)")
    parser.add_argument("--out", required=True, help="output image path (vector formats work)")
    args = parser.parse_args(argv)
    spec = PlotSpec(csv_paths=args.csv, out_path=args.out, panel_labels=args.panel_label)
    try:
        counts = render_region(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    total = sum(sum(c.values()) for c in counts)
    print(f"wrote {args.out} ({len(counts)} panel(s), {total} points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
