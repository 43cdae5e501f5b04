"""Summary statistics, empirical CDFs, and KS distances for Monte Carlo runs.

Seeding/substream derivation lives in `lsqbounds.rng`; sample generation is
owned by the experiment modules. Everything here is a pure function of the
sample values, so all statistics are reproducible bit-for-bit given the
same inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .rng import substream  # re-exported for callers that think in MC terms

__all__ = [
    "MCSummary",
    "EmpiricalDistribution",
    "substream",
    "summarize",
    "ecdf",
    "ks_statistic",
]

#: Default quantile levels recorded by summarize().
DEFAULT_QUANTILE_LEVELS = (0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99)


@dataclass(frozen=True)
class MCSummary:
    n_samples: int
    mean: float
    variance: float  # unbiased, divisor n-1
    std_error_mean: float
    std_error_variance: float  # via sample fourth central moment
    quantiles: dict[float, float] = field(default_factory=dict)


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Sorted sample values backing an empirical CDF."""

    sorted_values: np.ndarray

    @classmethod
    def from_samples(cls, values) -> "EmpiricalDistribution":
        v = np.asarray(values, dtype=float)
        if v.size == 0:
            raise DomainError("need at least one sample")
        if not np.all(np.isfinite(v)):
            raise DomainError("samples must be finite")
        return cls(np.sort(v))


def summarize(values, quantile_levels=DEFAULT_QUANTILE_LEVELS) -> MCSummary:
    """Mean, unbiased variance, standard errors, and quantiles of a sample.

    Means use numpy's pairwise summation. The quantile at level p is the
    order statistic at rank p(n-1)+1 with linear interpolation (numpy's
    "linear" method). The standard error of the variance comes from the
    sample fourth central moment:

        SE(s^2) = sqrt((m4 - s^4 (n-3)/(n-1)) / n).
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    if n < 2:
        raise DomainError("summarize needs at least two samples")
    mean = float(np.mean(v))
    var = float(np.var(v, ddof=1))
    m4 = float(np.mean((v - mean) ** 4))
    se_var_sq = (m4 - var * var * (n - 3) / (n - 1)) / n
    quantiles = {
        float(p): float(np.quantile(v, p, method="linear")) for p in quantile_levels
    }
    return MCSummary(
        n_samples=n,
        mean=mean,
        variance=var,
        std_error_mean=float(np.sqrt(var / n)),
        std_error_variance=float(np.sqrt(max(se_var_sq, 0.0))),
        quantiles=quantiles,
    )


def ecdf(dist: EmpiricalDistribution, x):
    """Fraction of samples <= x; right-continuous step function."""
    v = dist.sorted_values
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    out = np.searchsorted(v, np.atleast_1d(x), side="right") / v.size
    return float(out[0]) if scalar else out


def ks_statistic(dist: EmpiricalDistribution, cdf) -> float:
    """Two-sided Kolmogorov-Smirnov distance between an ECDF and a CDF.

    D = max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|) over the sorted
    sample. `cdf` should accept a numpy array; a scalar-only callable is
    mapped elementwise as a fallback.
    """
    v = dist.sorted_values
    n = v.size
    try:
        f = np.asarray(cdf(v), dtype=float)
        if f.shape != v.shape:
            raise TypeError
    except (TypeError, ValueError):
        f = np.array([float(cdf(x)) for x in v])
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    return float(np.max(np.maximum(np.abs(hi - f), np.abs(lo - f))))
