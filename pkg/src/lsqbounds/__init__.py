"""Closed-form risk distributions and Chebyshev generalization bounds for
least-squares regression, verified by a seeded Monte Carlo engine."""

from .distributions import ChiSquareMixture, gamma_cdf, gamma_pdf, mixture_cdf, mixture_pdf
from .errors import (
    DimensionMismatch,
    DomainError,
    LsqBoundsError,
    NotPositiveDefinite,
    NotSymmetric,
    RankDeficient,
    UnsupportedMixture,
)
from .fixed_design import (
    FixedDesignModel,
    RiskKind,
    RiskSampleSet,
    analytic_risk_distribution,
    naive_cdfs,
    risk_moments,
    sample_risks,
    testing_bound,
)
from .linalg import cholesky, projection, solve_least_squares, spd_inverse
from .montecarlo import EmpiricalDistribution, MCSummary, ecdf, ks_statistic, summarize
from .random_design import (
    ApproxRegime,
    BoundCurve,
    RandomDesignConfig,
    VarianceMode,
    approx_bound,
    bound_curve,
    draw_theta_star,
    gaussian_quartic_moment,
    inv_wishart_trace_moments,
    mean_mse,
    mse_bound,
    printed_mse_bound,
    run_trial,
    run_trials,
    second_moment_mse,
    second_moment_mse_wishart,
    variance_mse,
)
from .rng import chi2_sample, normal_sample, splitmix64, substream

__version__ = "0.1.0"
