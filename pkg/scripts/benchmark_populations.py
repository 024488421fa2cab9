"""Validity and power on the normal, skewed and bimodal populations.

Writes one CSV per (population, study) to ``--outdir``.  Defaults follow the
paper's protocol: 10,000 replications for validity, 1,000 for power,
B = 1000 resamples, alpha = 0.05.

    python scripts/benchmark_populations.py --outdir results/benchmarks
    python scripts/benchmark_populations.py --quick   # a few minutes
"""

import argparse
from pathlib import Path

from mirrorboot.cli import main as cli

N_GRID = "5,10,20,30,50,100"
# Effects in population-sd units; the paper's figures do not list their x-axis values.
EFFECTS = (0.25, 0.5, 0.75, 1.0, 1.5)
VALIDITY_POPS = ("normal", "gamma22", "bimodal")
POWER_POPS = ("normal", "gamma22", "gamma22-mirror", "bimodal")


def run(argv):
    print(" ".join(argv))
    if cli(argv) != 0:
        raise SystemExit(f"failed: {' '.join(argv)}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="results/benchmarks")
    p.add_argument("--seed", default="2013")
    p.add_argument("--threads", default=None)
    p.add_argument("--quick", action="store_true", help="10x fewer replications")
    args = p.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    div = 10 if args.quick else 1
    common = ["--methods", "mirror,shift,t", "--seed", args.seed]
    if args.threads:
        common += ["--threads", args.threads]

    for pop in VALIDITY_POPS:
        run(["grid", "--axis", "n", "--values", N_GRID, "--dist", pop, "--n", "5",
             "--reps", str(10_000 // div), "--out", str(out / f"validity_{pop}.csv")] + common)
    for pop in POWER_POPS:
        for effect in EFFECTS:
            run(["grid", "--axis", "n", "--values", N_GRID, "--dist", pop, "--n", "5",
                 "--mode", "power", "--effect", str(effect), "--reps", str(1_000 // div),
                 "--out", str(out / f"power_{pop}_effect{effect}.csv")] + common)


if __name__ == "__main__":
    main()
