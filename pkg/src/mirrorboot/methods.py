"""One-sample tests of a population mean.

Three two-tailed tests of ``H0: mu = mu0``:

- ``mirror_bootstrap_test``: reflect the sample around ``mu0`` and bootstrap
  size-``n`` resamples from the resulting symmetric ``2n`` population.
- ``shift_bootstrap_test``: translate the sample so its mean is ``mu0`` and
  bootstrap from the translated values.
- ``t_test``: the classical one-sample Student t-test.

The resampling tests report ``p = extreme_count / b_reps`` where a resample is
extreme when its mean is at least as far from ``mu0`` as the sample mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special

from .rng import RngStream

MIRROR = "mirror"
SHIFT = "shift"
T = "t"
METHOD_NAMES = (MIRROR, SHIFT, T)

# Cap on the number of resampled indices materialized at once.
_BLOCK_ELEMENTS = 1 << 20
_EPS = np.finfo(float).eps


class DegenerateSampleError(ValueError):
    """The sample has zero variance, so the t statistic is undefined."""


@dataclass(frozen=True)
class TestSettings:
    __test__ = False  # not a pytest class

    b_reps: int = 1000
    alpha: float = 0.05

    def __post_init__(self):
        if int(self.b_reps) != self.b_reps or self.b_reps < 1:
            raise ValueError(f"b_reps must be a positive integer, got {self.b_reps}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class TestOutcome:
    """Result of one hypothesis test.

    ``statistic`` is the t statistic for the t-test and ``|M - mu0|`` for the
    resampling tests.  ``extreme_count`` and ``b_reps`` are ``None`` for the
    t-test.
    """

    __test__ = False

    method: str
    p_value: float
    reject: bool
    statistic: float
    extreme_count: Optional[int] = None
    b_reps: Optional[int] = None


@dataclass(frozen=True)
class MirrorPopulation:
    values: np.ndarray
    center: float

    def __len__(self):
        return self.values.size


def as_sample(values, min_size: int = 2) -> np.ndarray:
    x = np.asarray(values, dtype=float).ravel()
    if x.size < min_size:
        raise ValueError(f"sample needs at least {min_size} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    return x


def mirror_population(sample, mu0: float) -> MirrorPopulation:
    """Reflect ``sample`` around ``mu0``: ``x_1..x_n, 2 mu0 - x_1..2 mu0 - x_n``."""
    x = as_sample(sample, min_size=1)
    return MirrorPopulation(np.concatenate([x, 2 * mu0 - x]), float(mu0))


def _tie_tolerance(x: np.ndarray, mu0: float) -> float:
    # Resample means that equal the observed mean in exact arithmetic can
    # differ from it by summation rounding; count those as ties.
    scale = max(float(np.max(np.abs(x))), abs(mu0))
    return 4 * (x.size + 1) * _EPS * scale


def _count_extreme(deviations: np.ndarray, n: int, observed: float, tol: float,
                   b_reps: int, rng: RngStream) -> int:
    """Number of size-``n`` resamples of ``deviations`` whose mean has
    absolute value >= ``observed`` (within ``tol``)."""
    gen = rng.generator
    rows = max(1, _BLOCK_ELEMENTS // n)
    threshold = observed - tol
    count = 0
    for start in range(0, b_reps, rows):
        size = min(rows, b_reps - start)
        idx = gen.integers(0, deviations.size, size=(size, n))
        means = deviations[idx].mean(axis=1)
        count += int(np.count_nonzero(np.abs(means) >= threshold))
    return count


def _resampling_outcome(method, count, observed, settings):
    p = count / settings.b_reps
    return TestOutcome(method, p, p < settings.alpha, observed, count, settings.b_reps)


def mirror_bootstrap_test(sample, mu0: float, settings: TestSettings = TestSettings(),
                          rng: Optional[RngStream] = None) -> TestOutcome:
    """Mirror bootstrap test of ``H0: mu = mu0``.

    Resamples are drawn uniformly with replacement from the mirror population
    of ``sample`` about ``mu0``.
    """
    x = as_sample(sample)
    rng = rng if rng is not None else RngStream(0)
    d = x - mu0
    observed = abs(float(d.mean()))
    # Work in deviations from mu0; the mirror population is then +/- d.
    pop = np.concatenate([d, -d])
    count = _count_extreme(pop, x.size, observed, _tie_tolerance(x, mu0), settings.b_reps, rng)
    return _resampling_outcome(MIRROR, count, observed, settings)


def shift_bootstrap_test(sample, mu0: float, settings: TestSettings = TestSettings(),
                         rng: Optional[RngStream] = None) -> TestOutcome:
    """Shift bootstrap test: resample from ``x + (mu0 - M)``."""
    x = as_sample(sample)
    rng = rng if rng is not None else RngStream(0)
    observed = abs(float((x - mu0).mean()))
    # Deviations of the shifted sample from mu0 are x - M.
    pop = x - x.mean()
    count = _count_extreme(pop, x.size, observed, _tie_tolerance(x, mu0), settings.b_reps, rng)
    return _resampling_outcome(SHIFT, count, observed, settings)


def _t_upper_tail2(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    t2 = t * t
    if t2 < df:
        # 1 - x is small here; use the complementary form for accuracy.
        return float(1.0 - special.betainc(0.5, 0.5 * df, t2 / (df + t2)))
    return float(special.betainc(0.5 * df, 0.5, df / (df + t2)))


def student_t_cdf(t: float, df: float) -> float:
    """Student t CDF through the regularized incomplete beta function."""
    if not df > 0:
        raise ValueError(f"df must be positive, got {df}")
    if math.isnan(t):
        return math.nan
    tail = 0.5 * _t_upper_tail2(t, df)
    return 1.0 - tail if t > 0 else tail


def t_test(sample, mu0: float, alpha: float = 0.05) -> TestOutcome:
    x = as_sample(sample)
    n = x.size
    s = float(x.std(ddof=1))
    if s == 0.0:
        raise DegenerateSampleError("sample has zero variance")
    t = float((x.mean() - mu0) / (s / math.sqrt(n)))
    p = min(1.0, _t_upper_tail2(t, n - 1))
    return TestOutcome(T, p, p < alpha, t)


def run_method(method: str, sample, mu0: float, settings: TestSettings,
               rng: Optional[RngStream] = None) -> TestOutcome:
    """Dispatch to one of the three tests by name."""
    if method == MIRROR:
        return mirror_bootstrap_test(sample, mu0, settings, rng)
    if method == SHIFT:
        return shift_bootstrap_test(sample, mu0, settings, rng)
    if method == T:
        return t_test(sample, mu0, settings.alpha)
    raise ValueError(f"unknown method {method!r}; expected one of {METHOD_NAMES}")
