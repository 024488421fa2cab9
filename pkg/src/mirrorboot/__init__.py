"""Mirror bootstrap test for one population mean, with Shift bootstrap and
t-test baselines and a Monte Carlo harness for validity and power studies."""

from .distributions import (DistributionSpec, GhParams, MomentUndefinedError, SamplingError,
                            gh_transform, kurtosis, moments, population_mean, sample, skewness,
                            standard_deviation)
from .methods import (DegenerateSampleError, MirrorPopulation, TestOutcome, TestSettings,
                      mirror_bootstrap_test, mirror_population, shift_bootstrap_test,
                      student_t_cdf, t_test)
from .rng import RngStream
from .simulation import (ExperimentConfig, ExperimentResult, GridSpec, mc_standard_error,
                         run_experiment, run_grid)

__version__ = "0.1.0"
