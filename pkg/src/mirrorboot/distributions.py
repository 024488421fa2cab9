"""Populations used in the validity and power studies.

Four benchmark populations, each normalized to mean 0 and standard deviation 1,
plus Tukey's g-and-h family.  Every population can be shifted by a constant to
build alternatives for power runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate

from .rng import RngStream

NORMAL = "normal"
GAMMA22 = "gamma22"
GAMMA22_MIRROR = "gamma22-mirror"
BIMODAL = "bimodal"
GH = "gh"

BENCHMARKS = (NORMAL, GAMMA22, GAMMA22_MIRROR, BIMODAL)
VARIANTS = BENCHMARKS + (GH,)

# Gamma(shape=2, scale=2): mean 4, variance 8.
_GAMMA_SHAPE = 2.0
_GAMMA_SCALE = 2.0
_GAMMA_MEAN = _GAMMA_SHAPE * _GAMMA_SCALE
_GAMMA_SD = math.sqrt(_GAMMA_SHAPE) * _GAMMA_SCALE
# Equal mixture of N(-3, 1) and N(3, 1): variance 1 + 9.
_BIMODAL_OFFSET = 3.0
_BIMODAL_SD = math.sqrt(10.0)

# Integrand magnitude at the truncation point, relative to its peak.
_LOG_TAIL_CUTOFF = -80.0
_QUAD_ABS_TOL = 1e-10
_QUAD_REL_TOL = 1e-9


class SamplingError(RuntimeError):
    """Raised when a population produces a non-finite draw."""


class MomentUndefinedError(ValueError):
    """Raised when a requested moment does not exist for the population."""


@dataclass(frozen=True)
class GhParams:
    g: float = 0.0
    h: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.g) and math.isfinite(self.h)):
            raise ValueError(f"g and h must be finite, got g={self.g}, h={self.h}")
        if self.h < 0:
            raise ValueError(f"h must be >= 0, got {self.h}")

    @property
    def skewness_defined(self) -> bool:
        return self.h < 1 / 3

    @property
    def kurtosis_defined(self) -> bool:
        return self.h < 1 / 4


@dataclass(frozen=True)
class DistributionSpec:
    """A sampleable population, optionally translated by ``shift``."""

    variant: str = NORMAL
    gh: Optional[GhParams] = None
    shift: float = 0.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown distribution {self.variant!r}; expected one of {VARIANTS}")
        if (self.variant == GH) != (self.gh is not None):
            raise ValueError("g-and-h parameters are required for, and only for, the 'gh' variant")
        if not math.isfinite(self.shift):
            raise ValueError(f"shift must be finite, got {self.shift}")

    @classmethod
    def gandh(cls, g: float, h: float, shift: float = 0.0) -> "DistributionSpec":
        return cls(GH, GhParams(float(g), float(h)), float(shift))

    def shifted(self, delta: float) -> "DistributionSpec":
        return replace(self, shift=self.shift + float(delta))

    def label(self) -> str:
        if self.variant == GH:
            return f"gh(g={self.gh.g!r}, h={self.gh.h!r})"
        return self.variant


def gh_transform(z, g: float, h: float):
    """Tukey g-and-h transform of standard normal quantities ``z``.

    ``(exp(g z) - 1) / g * exp(h z^2 / 2)``, with the continuous limit
    ``z * exp(h z^2 / 2)`` at ``g = 0``.  Works on scalars and arrays; extreme
    ``z`` overflows to ``inf`` instead of raising.
    """
    z = np.asarray(z, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        core = z if g == 0 else np.expm1(g * z) / g
        out = core * np.exp(0.5 * h * z * z) if h != 0 else core
    return out[()] if out.ndim == 0 else out


def sample(spec: DistributionSpec, n: int, rng: RngStream) -> np.ndarray:
    """Draw ``n`` independent observations from ``spec``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gen = rng.generator
    v = spec.variant
    if v == NORMAL:
        x = gen.standard_normal(n)
    elif v in (GAMMA22, GAMMA22_MIRROR):
        x = (gen.gamma(_GAMMA_SHAPE, _GAMMA_SCALE, n) - _GAMMA_MEAN) / _GAMMA_SD
        if v == GAMMA22_MIRROR:
            x = -x
    elif v == BIMODAL:
        upper = gen.random(n) < 0.5
        z = gen.standard_normal(n)
        x = (np.where(upper, _BIMODAL_OFFSET, -_BIMODAL_OFFSET) + z) / _BIMODAL_SD
    else:
        x = gh_transform(gen.standard_normal(n), spec.gh.g, spec.gh.h)
        if not np.all(np.isfinite(x)):
            raise SamplingError(f"non-finite draw from {spec.label()}; parameters unusable")
    if spec.shift:
        x = x + spec.shift
    return x


# ---------------------------------------------------------------------------
# moments


class Moments(NamedTuple):
    mean: float
    sd: Optional[float]
    skewness: Optional[float]
    kurtosis: Optional[float]


# (skewness, kurtosis) of the benchmarks; kurtosis is mu4 / mu2^2 (normal = 3).
_BENCHMARK_SHAPE = {
    NORMAL: (0.0, 3.0),
    GAMMA22: (2 / math.sqrt(_GAMMA_SHAPE), 3 + 6 / _GAMMA_SHAPE),
    GAMMA22_MIRROR: (-2 / math.sqrt(_GAMMA_SHAPE), 3 + 6 / _GAMMA_SHAPE),
    # E[(3 + Z)^4] = 81 + 6*9 + 3 = 138 over variance 10 squared.
    BIMODAL: (0.0, 138 / 100),
}


def _log_abs_gh(z: float, g: float, h: float) -> float:
    if z == 0:
        return -math.inf
    core = abs(z) if g == 0 else abs(math.expm1(g * z) / g)
    if core == 0.0:
        # expm1 underflowed for very negative g*z; |core| -> 1/|g|.
        core = 1 / abs(g)
    return math.log(core) + 0.5 * h * z * z


def _central_moment_integrand(k: int, g: float, h: float, center: float):
    log_norm = -0.5 * math.log(2 * math.pi)

    def f(z):
        log_x = _log_abs_gh(z, g, h)
        if log_x > 30.0:
            # |x| dwarfs the center; avoid forming x itself, which may overflow.
            log_dev = log_x
            sign = 1.0 if z > 0 else -1.0
        else:
            dev = float(gh_transform(z, g, h)) - center
            if dev == 0.0:
                return 0.0
            log_dev = math.log(abs(dev))
            sign = math.copysign(1.0, dev)
        return sign**k * math.exp(k * log_dev - 0.5 * z * z + log_norm)

    return f


def _truncation(k: int, g: float, h: float) -> float:
    # Smallest L with -(1 - k h) L^2 / 2 + k |g| L <= cutoff.
    a = 0.5 * (1 - k * h)
    b = k * abs(g)
    c = -_LOG_TAIL_CUTOFF
    return (b + math.sqrt(b * b + 4 * a * c)) / (2 * a)


def _gh_central_moment(k: int, params: GhParams, center: float) -> float:
    g, h = params.g, params.h
    if k * h >= 1:
        raise MomentUndefinedError(f"moment of order {k} is undefined for h={h}")
    f = _central_moment_integrand(k, g, h, center)
    bound = _truncation(k, g, h)
    total = 0.0
    for lo, hi in ((-bound, 0.0), (0.0, bound)):
        val, _ = integrate.quad(f, lo, hi, epsabs=_QUAD_ABS_TOL, epsrel=_QUAD_REL_TOL, limit=500)
        total += val
    return total


def population_mean(spec: DistributionSpec) -> float:
    """Population mean, by adaptive quadrature for g-and-h populations."""
    if spec.variant != GH:
        return 0.0 + spec.shift
    if spec.gh.h >= 1:
        raise MomentUndefinedError(f"the mean is undefined for h={spec.gh.h} (requires h < 1)")
    if spec.gh.g == 0:
        return 0.0 + spec.shift
    return _gh_central_moment(1, spec.gh, 0.0) + spec.shift


def _gh_mean(params: GhParams) -> float:
    return population_mean(DistributionSpec(GH, params))


def standard_deviation(spec: DistributionSpec) -> Optional[float]:
    """Population standard deviation, or ``None`` when the variance is infinite."""
    if spec.variant != GH:
        return 1.0
    if spec.gh.h >= 0.5:
        return None
    return math.sqrt(_gh_central_moment(2, spec.gh, _gh_mean(spec.gh)))


def skewness(spec: DistributionSpec) -> Optional[float]:
    """mu3 / mu2^(3/2) with central moments; ``None`` when h >= 1/3."""
    if spec.variant != GH:
        return _BENCHMARK_SHAPE[spec.variant][0]
    p = spec.gh
    if not p.skewness_defined:
        return None
    if p.g == 0:
        return 0.0
    mu = _gh_mean(p)
    m2 = _gh_central_moment(2, p, mu)
    m3 = _gh_central_moment(3, p, mu)
    return m3 / m2**1.5


def kurtosis(spec: DistributionSpec) -> Optional[float]:
    """mu4 / mu2^2 with central moments (normal = 3); ``None`` when h >= 1/4."""
    if spec.variant != GH:
        return _BENCHMARK_SHAPE[spec.variant][1]
    p = spec.gh
    if not p.kurtosis_defined:
        return None
    mu = _gh_mean(p)
    m2 = _gh_central_moment(2, p, mu)
    m4 = _gh_central_moment(4, p, mu)
    return m4 / (m2 * m2)


def moments(spec: DistributionSpec) -> Moments:
    return Moments(population_mean(spec), standard_deviation(spec), skewness(spec), kurtosis(spec))
