"""Skewness and kurtosis of g-and-h populations over a (g, h) grid, as CSV."""

import csv
import sys

from mirrorboot.distributions import DistributionSpec, moments

G = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0)
H = (0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35)


def main():
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["g", "h", "mean", "sd", "skewness", "kurtosis"])
    for g in G:
        for h in H:
            m = moments(DistributionSpec.gandh(g, h))
            w.writerow([g, h] + [("undefined" if v is None else repr(v)) for v in m])


if __name__ == "__main__":
    main()
