"""Replicated validity and power experiments.

Replication ``i`` of an experiment draws its sample from the stream
``(master_seed, prefix + (i, 0))`` and each resampling method from its own
sub-stream, so results depend only on the configuration and never on how the
replications are scheduled across workers.  Rejections are aggregated as
integer counts.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .distributions import DistributionSpec, population_mean, sample
from .methods import (METHOD_NAMES, MIRROR, SHIFT, T, DegenerateSampleError, TestSettings,
                      run_method)
from .rng import RngStream

VALIDITY = "validity"
POWER = "power"
MODES = (VALIDITY, POWER)

# Sub-stream ids within a replication; fixed per method so that adding or
# removing a method leaves the others' draws unchanged.
_SAMPLE_STREAM = 0
_METHOD_STREAM = {MIRROR: 1, SHIFT: 2, T: 3}

AXES = ("g", "h", "n")


@dataclass(frozen=True)
class ExperimentConfig:
    spec: DistributionSpec
    n: int
    reps: int = 10_000
    settings: TestSettings = TestSettings()
    methods: tuple = (MIRROR, SHIFT, T)
    mode: str = VALIDITY
    effect: float = 0.0
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in METHOD_NAMES:
                raise ValueError(f"unknown method {m!r}; expected one of {METHOD_NAMES}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError(f"duplicate methods in {self.methods}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not math.isfinite(self.effect):
            raise ValueError(f"effect must be finite, got {self.effect}")
        if self.mode == VALIDITY and self.effect != 0:
            raise ValueError("effect is only meaningful in power mode")

    @property
    def null_mean(self) -> float:
        """Hypothesized mean: the true mean of ``spec`` before any power-mode effect."""
        return population_mean(self.spec)

    @property
    def draw_spec(self) -> DistributionSpec:
        return self.spec.shifted(self.effect) if self.mode == POWER else self.spec


@dataclass(frozen=True)
class MethodResult:
    method: str
    rejections: int
    reps: int
    degenerate: int = 0

    @property
    def rate(self) -> float:
        return self.rejections / self.reps

    @property
    def mc_se(self) -> float:
        return mc_standard_error(self.rate, self.reps)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    methods: dict = field(default_factory=dict)
    elapsed: float = 0.0
    axis: Optional[str] = None
    axis_value: Optional[float] = None
    error: Optional[str] = None

    def __getitem__(self, method: str) -> MethodResult:
        return self.methods[method]


def mc_standard_error(rate: float, reps: int) -> float:
    if not 0 <= rate <= 1:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    return math.sqrt(rate * (1 - rate) / reps)


def _run_block(config: ExperimentConfig, mu0: float, prefix: tuple, start: int, stop: int):
    rejections = dict.fromkeys(config.methods, 0)
    degenerate = dict.fromkeys(config.methods, 0)
    spec = config.draw_spec
    for i in range(start, stop):
        stream = RngStream(config.master_seed, prefix + (i,))
        x = sample(spec, config.n, stream.spawn(_SAMPLE_STREAM))
        for m in config.methods:
            try:
                out = run_method(m, x, mu0, config.settings, stream.spawn(_METHOD_STREAM[m]))
            except DegenerateSampleError:
                degenerate[m] += 1
                continue
            rejections[m] += out.reject
    return rejections, degenerate


def _split(reps: int, parts: int):
    parts = max(1, min(parts, reps))
    bounds = [reps * k // parts for k in range(parts + 1)]
    return list(zip(bounds[:-1], bounds[1:]))


def default_threads() -> int:
    return os.cpu_count() or 1


def run_experiment(config: ExperimentConfig, threads: int = 1, *,
                   stream_prefix: Sequence[int] = ()) -> ExperimentResult:
    """Run ``config.reps`` replications and count rejections per method.

    All methods see the same sample in each replication.  ``threads`` is the
    number of worker processes; it has no effect on the result.
    """
    t0 = time.perf_counter()
    mu0 = config.null_mean
    prefix = tuple(int(k) for k in stream_prefix)
    if threads <= 1:
        blocks = [_run_block(config, mu0, prefix, 0, config.reps)]
    else:
        # Several blocks per worker keeps the pool busy when blocks run unevenly.
        ranges = _split(config.reps, 4 * threads)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_block, config, mu0, prefix, a, b) for a, b in ranges]
            blocks = [f.result() for f in futures]
    results = {}
    for m in config.methods:
        results[m] = MethodResult(
            m,
            sum(b[0][m] for b in blocks),
            config.reps,
            sum(b[1][m] for b in blocks),
        )
    return ExperimentResult(config, results, time.perf_counter() - t0)


@dataclass(frozen=True)
class GridSpec:
    """A sweep of one parameter around a base configuration.

    The ``g`` axis uses g-and-h populations with ``h = 0``; the ``h`` axis
    uses ``g = 0``.  The ``n`` axis sweeps sample size for any population.
    """

    axis: str
    values: tuple
    base: ExperimentConfig

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.values:
            raise ValueError("grid needs at least one axis value")
        if self.axis == "n":
            for v in self.values:
                if int(v) != v or v < 2:
                    raise ValueError(f"n-axis values must be integers >= 2, got {v!r}")
        self.cells()  # constructing each cell validates it

    def cell(self, value) -> ExperimentConfig:
        base = self.base
        if self.axis == "n":
            return replace(base, n=int(value))
        shift = base.spec.shift
        if self.axis == "g":
            spec = DistributionSpec.gandh(value, 0.0, shift)
        else:
            spec = DistributionSpec.gandh(0.0, value, shift)
        return replace(base, spec=spec)

    def cells(self):
        return [(v, self.cell(v)) for v in self.values]


def run_grid(grid: GridSpec, threads: int = 1) -> list:
    """Run one experiment per axis value.

    Cell ``k`` uses streams ``(master_seed, (k, i, ...))``.  A failing cell is
    returned with ``error`` set and empty method results; remaining cells
    still run.
    """
    out = []
    for k, (value, cfg) in enumerate(grid.cells()):
        try:
            res = run_experiment(cfg, threads, stream_prefix=(k,))
        except Exception as exc:  # noqa: BLE001 - recorded per cell
            res = ExperimentResult(cfg, error=f"{type(exc).__name__}: {exc}")
        res.axis = grid.axis
        res.axis_value = value
        out.append(res)
    return out
