"""Type I error across the g-and-h family.

Three studies, each over the sample-size grid:

- ``pathological``: g = h = 0.5 (undefined skewness and kurtosis)
- ``g_sweep``: skewness without heavy tails (h = 0)
- ``h_sweep``: heavy tails without skewness (g = 0)

    python scripts/gh_sweeps.py --outdir results/gh
"""

import argparse
from pathlib import Path

from mirrorboot.cli import main as cli

N_GRID = (5, 10, 20, 30, 50, 100)
G_VALUES = "0,0.2,0.4,0.6,0.8,1.0"
H_VALUES = "0,0.1,0.2,0.3,0.4,0.5"


def run(argv):
    print(" ".join(argv))
    if cli(argv) != 0:
        raise SystemExit(f"failed: {' '.join(argv)}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="results/gh")
    p.add_argument("--seed", default="2013")
    p.add_argument("--reps", default="10000")
    p.add_argument("--threads", default=None)
    args = p.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    common = ["--methods", "mirror,t", "--reps", args.reps, "--seed", args.seed]
    if args.threads:
        common += ["--threads", args.threads]

    run(["grid", "--axis", "n", "--values", ",".join(map(str, N_GRID)), "--dist", "gh",
         "--g", "0.5", "--h", "0.5", "--n", "5", "--out", str(out / "pathological.csv")] + common)
    for n in N_GRID:
        run(["grid", "--axis", "g", "--values", G_VALUES, "--dist", "gh", "--n", str(n),
             "--out", str(out / f"g_sweep_n{n}.csv")] + common)
        run(["grid", "--axis", "h", "--values", H_VALUES, "--dist", "gh", "--n", str(n),
             "--out", str(out / f"h_sweep_n{n}.csv")] + common)


if __name__ == "__main__":
    main()
