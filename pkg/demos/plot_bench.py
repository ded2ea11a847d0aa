#!/usr/bin/env python3
"""Plot bench CSV output (log-log growth per metric).

Usage: python demos/plot_bench.py out.csv [plot.png]

Reads the CSV written by `unionpath bench` and draws one log-log line per
metric with its fitted slope.  Needs matplotlib only when plotting; with
no output file the fitted slopes are printed instead.
"""

import csv
import math
import sys
from collections import defaultdict


def load(path):
    by_metric = defaultdict(lambda: defaultdict(list))
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            by_metric[row["metric"]][int(row["n"])].append(float(row["value"]))
    return by_metric


def fit_slope(points):
    xs = [math.log(n) for n, _ in points]
    ys = [math.log(max(v, 1e-12)) for _, v in points]
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def main():
    if len(sys.argv) < 2:
        print(__doc__)
        return 2
    by_metric = load(sys.argv[1])
    series = {}
    for metric, per_n in sorted(by_metric.items()):
        points = sorted((n, sum(vs) / len(vs)) for n, vs in per_n.items())
        series[metric] = points
        if len(points) >= 2:
            print(f"{metric}: slope {fit_slope(points):.3f} over n={points[0][0]}..{points[-1][0]}")
    if len(sys.argv) >= 3:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(7, 5))
        for metric, points in series.items():
            ax.loglog([n for n, _ in points], [v for _, v in points], "o-", label=metric)
        ax.set_xlabel("n")
        ax.set_ylabel("mean value")
        ax.legend()
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()
        fig.savefig(sys.argv[2], dpi=120)
        print(f"wrote {sys.argv[2]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
