"""Empirical Bayes credible bands for equispaced nonparametric regression."""

from .band import Band, build_band
from .ebayes import (
    PosteriorParams,
    credible_radius,
    estimate_alpha,
    fit_posterior,
    log_marginal_likelihood,
    posterior_params,
    sample_posterior,
)
from .harness import SimConfig, SummaryTable, percentile, run_replication, run_simulation
from .metrics import (
    ReplicationMetrics,
    ball_coverage,
    band_widths,
    excess_mass,
    noncoverage_fraction,
    sup_coverage,
)
from .testfns import TestFunction, beta_density, eval_test_function, normalization_constant
from .transform import RegressionData, SequenceObservations, analyze, generate_data, synthesize

__version__ = "0.1.0"
