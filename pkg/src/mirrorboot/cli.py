"""Command-line interface.

Subcommands::

    mirrorboot test     --input FILE --mu0 R --method {mirror,shift,t} [--b N] [--alpha R] [--seed N]
    mirrorboot simulate --dist D [--g R --h R] --n N --mode {validity,power} [--effect R]
                        [--reps N] [--b N] [--alpha R] --methods LIST --seed N [--threads N] [--out FILE]
    mirrorboot grid     --axis {g,h,n} --values LIST  <simulate flags>
    mirrorboot dist     --dist D [--g R --h R]

All output is CSV with LF line endings.  Floats are written in shortest
round-trip form, so identical command lines give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from typing import Optional

from . import distributions as dist
from .distributions import DistributionSpec, MomentUndefinedError
from .methods import METHOD_NAMES, DegenerateSampleError, TestSettings, run_method
from .rng import RngStream
from .simulation import (AXES, POWER, VALIDITY, ExperimentConfig, ExperimentResult, GridSpec,
                         default_threads, run_experiment, run_grid)

TEST_HEADER = ("method", "n", "mean", "mu0", "p_value", "reject")
RESULT_COLUMNS = ("dist", "g", "h", "n", "mode", "effect", "method", "reps", "rejections",
                  "rate", "mc_se", "degenerate", "seed")
SIMULATE_HEADER = RESULT_COLUMNS
GRID_HEADER = ("axis", "value") + RESULT_COLUMNS + ("error",)
DIST_HEADER = ("dist", "g", "h", "mean", "sd", "skewness", "kurtosis")

DEFAULT_VALIDITY_REPS = 10_000
DEFAULT_POWER_REPS = 1_000


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# parsing helpers


def _float_list(text: str):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"expected finite numbers: {text!r}")
    return vals


def _methods(text: str):
    methods = tuple(t.strip() for t in text.split(",") if t.strip())
    for m in methods:
        if m not in METHOD_NAMES:
            raise UsageError(f"unknown method {m!r}; choose from {','.join(METHOD_NAMES)}")
    if not methods:
        raise UsageError("--methods is empty")
    return methods


def read_sample(path: str):
    """Parse one decimal literal per line; blank lines are skipped."""
    values = []
    opener = sys.stdin if path == "-" else open(path, encoding="utf-8")
    with opener as fh:
        for k, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise UsageError(f"line {k}: not a number: {text!r}") from None
            if not math.isfinite(v):
                raise UsageError(f"line {k}: not a finite number: {text!r}")
            values.append(v)
    if len(values) < 2:
        raise UsageError(f"need at least 2 observations, got {len(values)}")
    return values


def _spec_from_args(args) -> DistributionSpec:
    if args.dist == dist.GH:
        if args.g is None or args.h is None:
            raise UsageError("--dist gh requires --g and --h")
        try:
            return DistributionSpec.gandh(args.g, args.h)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.g is not None or args.h is not None:
        raise UsageError("--g/--h only apply to --dist gh")
    return DistributionSpec(args.dist)


def _check_mean_defined(spec: DistributionSpec):
    if spec.variant == dist.GH and spec.gh.h >= 1:
        raise UsageError(f"population mean is undefined for h={spec.gh.h!r} (requires h < 1)")


def _config_from_args(args, spec: DistributionSpec) -> ExperimentConfig:
    if args.mode == VALIDITY and args.effect is not None:
        raise UsageError("--effect requires --mode power")
    if args.mode == POWER and args.effect is None:
        raise UsageError("--mode power requires --effect")
    reps = args.reps
    if reps is None:
        reps = DEFAULT_VALIDITY_REPS if args.mode == VALIDITY else DEFAULT_POWER_REPS
    try:
        return ExperimentConfig(
            spec=spec,
            n=args.n,
            reps=reps,
            settings=TestSettings(args.b, args.alpha),
            methods=_methods(args.methods),
            mode=args.mode,
            effect=args.effect or 0.0,
            master_seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _result_rows(res: ExperimentResult, prefix=()):
    cfg = res.config
    gh = cfg.spec.gh
    common = (cfg.spec.variant, gh.g if gh else None, gh.h if gh else None, cfg.n, cfg.mode,
              cfg.effect if cfg.mode == POWER else None)
    rows = []
    for m in sorted(cfg.methods):
        if res.error is not None:
            rows.append(prefix + common + (m, cfg.reps, None, None, None, None,
                                           cfg.master_seed, res.error))
            continue
        r = res.methods[m]
        row = prefix + common + (m, r.reps, r.rejections, r.rate, r.mc_se, r.degenerate,
                                 cfg.master_seed)
        if prefix:
            row += (None,)
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# subcommands


def cmd_test(args) -> str:
    values = read_sample(args.input)
    try:
        settings = TestSettings(args.b, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        out = run_method(args.method, values, args.mu0, settings, RngStream(args.seed))
    except DegenerateSampleError as exc:
        raise UsageError(f"t-test undefined: {exc}") from None
    mean = math.fsum(values) / len(values)
    return _csv(TEST_HEADER, [(out.method, len(values), mean, float(args.mu0), out.p_value,
                               out.reject)])


def cmd_simulate(args) -> str:
    spec = _spec_from_args(args)
    _check_mean_defined(spec)
    config = _config_from_args(args, spec)
    res = run_experiment(config, args.threads)
    return _csv(SIMULATE_HEADER, _result_rows(res))


def cmd_grid(args) -> str:
    values = _float_list(args.values)
    if args.axis in ("g", "h"):
        if args.dist != dist.GH:
            raise UsageError(f"--axis {args.axis} sweeps g-and-h populations; use --dist gh")
        fixed = "h" if args.axis == "g" else "g"
        if getattr(args, args.axis) is not None:
            raise UsageError(f"--{args.axis} is set by --values when sweeping it")
        if getattr(args, fixed) not in (None, 0.0):
            raise UsageError(f"--axis {args.axis} fixes {fixed}=0")
        for v in values:
            g, h = (v, 0.0) if args.axis == "g" else (0.0, v)
            try:
                _check_mean_defined(DistributionSpec.gandh(g, h))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        # Placeholder; every cell replaces the population.
        spec = DistributionSpec.gandh(0.0, 0.0)
    else:
        spec = _spec_from_args(args)
        _check_mean_defined(spec)
    base = _config_from_args(args, spec)
    try:
        grid = GridSpec(args.axis, tuple(int(v) if args.axis == "n" else v for v in values), base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results = run_grid(grid, args.threads)
    order = sorted(range(len(results)), key=lambda k: (results[k].axis_value, k))
    rows = []
    for k in order:
        r = results[k]
        rows.extend(_result_rows(r, prefix=(r.axis, r.axis_value)))
    return _csv(GRID_HEADER, rows)


def cmd_dist(args) -> str:
    spec = _spec_from_args(args)
    try:
        m = dist.moments(spec)
    except MomentUndefinedError as exc:
        raise UsageError(str(exc)) from None
    gh = spec.gh

    def show(v):
        return "undefined" if v is None else v

    return _csv(DIST_HEADER, [(spec.variant, gh.g if gh else None, gh.h if gh else None,
                               m.mean, show(m.sd), show(m.skewness), show(m.kurtosis))])


# ---------------------------------------------------------------------------


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2^64)")
    return v


def _finite(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _add_dist_flags(p):
    p.add_argument("--dist", required=True, choices=dist.VARIANTS)
    p.add_argument("--g", type=_finite)
    p.add_argument("--h", type=_finite)


def _add_sim_flags(p, n_required=True):
    _add_dist_flags(p)
    p.add_argument("--n", type=_positive_int, required=n_required)
    p.add_argument("--mode", choices=(VALIDITY, POWER), default=VALIDITY)
    p.add_argument("--effect", type=_finite)
    p.add_argument("--reps", type=_positive_int,
                   help=f"replications (default {DEFAULT_VALIDITY_REPS} validity, "
                        f"{DEFAULT_POWER_REPS} power)")
    p.add_argument("--b", type=_positive_int, default=1000, help="bootstrap resamples per test")
    p.add_argument("--alpha", type=_finite, default=0.05)
    p.add_argument("--methods", required=True, help="comma-separated subset of mirror,shift,t")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--threads", type=_positive_int, default=default_threads(),
                   help="worker processes; output does not depend on it")
    p.add_argument("--out", help="write CSV here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mirrorboot",
                                     description="Mirror bootstrap test of one mean, baselines, "
                                                 "and Monte Carlo validity/power studies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="test H0: mu = mu0 on a data file")
    p.add_argument("--input", required=True, help="one number per line; '-' for stdin")
    p.add_argument("--mu0", type=_finite, required=True)
    p.add_argument("--method", choices=METHOD_NAMES, required=True)
    p.add_argument("--b", type=_positive_int, default=1000)
    p.add_argument("--alpha", type=_finite, default=0.05)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("simulate", help="one validity or power experiment")
    _add_sim_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("grid", help="sweep g, h, or n")
    p.add_argument("--axis", choices=AXES, required=True)
    p.add_argument("--values", required=True, help="comma-separated axis values")
    _add_sim_flags(p, n_required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("dist", help="population mean, sd, skewness, kurtosis")
    _add_dist_flags(p)
    p.set_defaults(func=cmd_dist)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 1
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
