#!/usr/bin/env python3
"""Render the JSON emitted by `rankcorr distribution` as a figure.

Matplotlib is needed here but is deliberately not a package dependency;
the JSON data files are the contract, this script is a convenience.

    rankcorr distribution --coefficient spearman --weighting additive \
        --f iq0 --n 500 --standardize --out series.json
    python scripts/plot_distribution.py series.json -o series.png
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import matplotlib.pyplot as plt

_STYLES = {"raw": "C0", "standardized": "C1"}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("series", help="JSON file from the distribution subcommand")
    parser.add_argument("-o", "--out", help="image path (default: show a window)")
    args = parser.parse_args()

    payload = json.loads(Path(args.series).read_text(encoding="utf-8"))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for series in payload["series"]:
        label = series["label"]
        color = _STYLES.get(label, "C2")
        edges = series["bin_edges"]
        ax.stairs(series["densities"], edges, fill=True, alpha=0.25, color=color)
        ax.plot(series["kde_x"], series["kde_y"], color=color,
                label=f"{label} (mean {series['mean']:+.3f})")
    ax.axvline(0.0, color="grey", lw=0.8, ls=":")
    ax.set_xlabel("coefficient value")
    ax.set_ylabel("density")
    ax.set_title(f"{payload['coefficient']}, n = {payload['n']}")
    ax.legend()
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=150)
        print(f"wrote {args.out}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
