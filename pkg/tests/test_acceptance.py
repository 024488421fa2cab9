"""Acceptance criteria, at the paper's protocol (B = 1000, alpha = 0.05).

Each test prints one ``[PASS]``/``[FAIL]`` line; the lines are repeated in the
pytest terminal summary.  Criteria 2-8 run through the CLI so criterion 11
can compare the exact CSV bytes across worker counts.
"""

import contextlib
import csv
import functools
import io
import math

import numpy as np
import pytest

from mirrorboot.cli import main
from mirrorboot.distributions import DistributionSpec, population_mean
from mirrorboot.methods import TestSettings, run_method, student_t_cdf
from mirrorboot.rng import RngStream
from tests.oracles import cauchy_cdf, enumerate_p, gh_closed_mean, t2_cdf

SEED = "20240611"
COMMON = ["--seed", SEED]

RUNS = {
    "normal_n30": ["simulate", "--dist", "normal", "--n", "30", "--methods", "mirror,t",
                   "--reps", "10000"],
    "normal_n5": ["simulate", "--dist", "normal", "--n", "5", "--methods", "mirror,shift,t",
                  "--reps", "10000"],
    "gh_pathological": ["simulate", "--dist", "gh", "--g", "0.5", "--h", "0.5", "--n", "30",
                        "--methods", "mirror,t", "--reps", "10000"],
    "g_sweep": ["grid", "--axis", "g", "--values", "0,0.2,0.4", "--dist", "gh", "--n", "30",
                "--methods", "mirror,t", "--reps", "10000"],
    "h_sweep_n10": ["grid", "--axis", "h", "--values", "0.2,0.4", "--dist", "gh", "--n", "10",
                    "--methods", "mirror,t", "--reps", "10000"],
    "h_sweep_n30": ["grid", "--axis", "h", "--values", "0.2,0.4", "--dist", "gh", "--n", "30",
                    "--methods", "mirror,t", "--reps", "10000"],
    "power_n10": ["simulate", "--dist", "normal", "--n", "10", "--mode", "power", "--effect", "1.0",
                  "--methods", "mirror,t", "--reps", "1000"],
}


@functools.lru_cache(maxsize=None)
def cli_csv(name: str, threads: int) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(RUNS[name] + COMMON + ["--threads", str(threads)])
    assert code == 0, name
    return buf.getvalue()


def results(name: str):
    """{(axis value or None, method): (rate, mc_se)} from the single-worker run."""
    out = {}
    for row in csv.DictReader(io.StringIO(cli_csv(name, 1))):
        key = (float(row["value"]) if "value" in row else None, row["method"])
        out[key] = (float(row["rate"]), float(row["mc_se"]))
    return out


def combined_se(a, b):
    return math.hypot(a[1], b[1])


# ---------------------------------------------------------------------------


def test_criterion_01_enumeration_oracle(acceptance_report):
    b = 100_000
    gen = np.random.default_rng(1)
    cases = failures = 0
    worst = 0.0
    for case in range(60):
        n = int(gen.integers(2, 4))
        x = gen.normal(0, 1.5, n).tolist()
        mu0 = float(gen.normal(0, 1))
        for method in ("mirror", "shift"):
            exact = float(enumerate_p(x, mu0, method))
            out = run_method(method, x, mu0, TestSettings(b_reps=b), RngStream(1, (case, len(method))))
            se = math.sqrt(exact * (1 - exact) / b)
            ok = abs(out.p_value - exact) <= 3 * se if se > 0 else out.p_value == exact
            if se > 0:
                worst = max(worst, abs(out.p_value - exact) / se)
            cases += 1
            failures += not ok
    ok = acceptance_report(1, failures == 0 and cases >= 100,
                           f"{cases} (case, method) pairs, {failures} outside 3 se, "
                           f"worst {worst:.2f} se")
    assert ok


def test_criterion_02_normal_validity(acceptance_report):
    r = results("normal_n30")
    mirror, t = r[None, "mirror"][0], r[None, "t"][0]
    ok = 0.04 <= mirror <= 0.06 and 0.04 <= t <= 0.06
    assert acceptance_report(2, ok, f"normal n=30: mirror {mirror:.4f}, t {t:.4f} (need [0.04, 0.06])")


def test_criterion_03_small_sample_conservatism(acceptance_report):
    r = results("normal_n5")
    mirror, t = r[None, "mirror"], r[None, "t"]
    ok = mirror[0] <= t[0] and mirror[0] <= 0.05 + 3 * mirror[1]
    assert acceptance_report(3, ok, f"normal n=5: mirror {mirror[0]:.4f} (se {mirror[1]:.4f}), "
                                    f"t {t[0]:.4f}")


def test_criterion_04_shift_invalidity(acceptance_report):
    rate, se = results("normal_n5")[None, "shift"]
    ok = rate > 0.05 + 4 * se
    assert acceptance_report(4, ok, f"normal n=5: shift {rate:.4f} vs 0.05 + 4 se = "
                                    f"{0.05 + 4 * se:.4f}")


def test_criterion_05_heavy_tail_pathology(acceptance_report):
    r = results("gh_pathological")
    mirror, t = r[None, "mirror"], r[None, "t"]
    in_band = all(0.12 <= v[0] <= 0.28 for v in (mirror, t))
    ok = in_band and mirror[0] <= t[0] + 2 * combined_se(mirror, t)
    assert acceptance_report(5, ok, f"gh(0.5, 0.5) n=30: mirror {mirror[0]:.4f}, t {t[0]:.4f} "
                                    f"(band [0.12, 0.28])")


def test_criterion_06_g_sweep(acceptance_report):
    r = results("g_sweep")
    rates = {g: r[g, "mirror"][0] for g in (0.0, 0.2, 0.4)}
    ok = all(0.03 <= v <= 0.07 for v in rates.values())
    detail = ", ".join(f"g={g}: {v:.4f}" for g, v in rates.items())
    assert acceptance_report(6, ok, f"h=0 n=30 mirror {detail} (need [0.03, 0.07])")


def test_criterion_07_h_sweep(acceptance_report):
    cells = []
    ok = True
    for n in (10, 30):
        r = results(f"h_sweep_n{n}")
        for h in (0.2, 0.4):
            mirror, t = r[h, "mirror"], r[h, "t"]
            ok &= mirror[0] <= t[0] + 2 * combined_se(mirror, t)
            cells.append(f"n={n} h={h}: {mirror[0]:.4f}/{t[0]:.4f}")
    assert acceptance_report(7, ok, "g=0 mirror/t " + "; ".join(cells))


def test_criterion_08_power_convergence(acceptance_report):
    r = results("power_n10")
    mirror, t = r[None, "mirror"][0], r[None, "t"][0]
    ok = abs(mirror - t) <= 0.05
    assert acceptance_report(8, ok, f"normal n=10 effect 1.0: power mirror {mirror:.3f}, "
                                    f"t {t:.3f}, gap {abs(mirror - t):.3f}")


def test_criterion_09_gh_mean(acceptance_report):
    m = population_mean(DistributionSpec.gandh(0.5, 0.5))
    closed = gh_closed_mean(0.5, 0.5)
    ok = 0.79 <= m <= 0.81 and abs(m - closed) <= 1e-6
    assert acceptance_report(9, ok, f"quadrature {m!r}, closed form {closed!r}, "
                                    f"diff {abs(m - closed):.2e}")


def test_criterion_10_t_cdf(acceptance_report):
    grid = np.linspace(-10, 10, 2001)
    err = max(max(abs(student_t_cdf(t, 1) - cauchy_cdf(t)), abs(student_t_cdf(t, 2) - t2_cdf(t)))
              for t in grid)
    sym = max(abs(student_t_cdf(-t, df) + student_t_cdf(t, df) - 1)
              for df in range(1, 201) for t in np.linspace(0, 40, 81))
    ok = err <= 1e-10 and sym <= 1e-12
    assert acceptance_report(10, ok, f"max closed-form error {err:.1e}, max symmetry error {sym:.1e}")


def test_criterion_11_determinism(acceptance_report):
    mismatched = [name for name in RUNS if cli_csv(name, 1) != cli_csv(name, 4)]
    ok = not mismatched
    assert acceptance_report(11, ok, f"{len(RUNS)} runs (criteria 2-8) byte-identical at 1 and 4 "
                                     f"workers" if ok else f"differs: {mismatched}")
