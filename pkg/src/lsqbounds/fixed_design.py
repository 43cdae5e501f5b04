"""Risk distributions and Chebyshev bounds for the fixed-design setting.

The design matrix A is a constant n x m full-column-rank matrix, the
responses are y = A theta* + sigma z with z ~ N(0, I_n). All sampled and
bounded quantities are expressed in sigma^2-normalized "g-units"
(g = ||.||^2 / sigma^2), which makes every distribution parameter-free:

    training   g = z'(I - P)z          ~ chi2(n - m)
    true       g = z'z                 ~ chi2(n)
    testing    g = ||z_t - P z||^2     ~ 2 chi2(m) + chi2(n - m)

Raw squared-norm units are recovered by multiplying by sigma^2; the
half-loss convention is g / 2. The g realizations are computed directly
from z (theta* and sigma cancel exactly), so sampled values are
bit-identical across sigma.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .distributions import ChiSquareMixture, gamma_cdf
from .errors import DomainError
from .linalg import qr_factor
from .rng import substream

#: Trials per generation chunk in sample_risks.
_CHUNK = 8192


class RiskKind(enum.Enum):
    TRAINING = "training"
    TRUE = "true"
    TESTING = "testing"


@dataclass(frozen=True)
class FixedDesignModel:
    """The (A, theta*, sigma) triple of a fixed-design experiment."""

    design: np.ndarray  # n x m, full column rank
    theta_star: np.ndarray  # m
    sigma: float

    def __post_init__(self):
        a = np.asarray(self.design, dtype=float)
        t = np.asarray(self.theta_star, dtype=float)
        if a.ndim != 2 or a.shape[0] <= a.shape[1]:
            raise DomainError("design must be n x m with n > m")
        if t.shape != (a.shape[1],):
            raise DomainError("theta_star length must match design columns")
        if not self.sigma > 0.0:
            raise DomainError("sigma must be positive")
        qr_factor(a)  # raises RankDeficient on failure
        object.__setattr__(self, "design", a)
        object.__setattr__(self, "theta_star", t)

    @property
    def n(self) -> int:
        return self.design.shape[0]

    @property
    def m(self) -> int:
        return self.design.shape[1]


@dataclass(frozen=True)
class RiskSampleSet:
    kind: RiskKind
    values: np.ndarray  # g-units, one per replication
    n_samples: int


def _check_nm(n: int, m: int) -> None:
    if not (m >= 1 and n > m):
        raise DomainError("need n > m >= 1")


def analytic_risk_distribution(kind: RiskKind, n: int, m: int) -> ChiSquareMixture:
    """Exact law of the g-normalized risk as a scaled chi-square mixture."""
    _check_nm(n, m)
    if kind is RiskKind.TRAINING:
        return ChiSquareMixture(((1.0, n - m),))
    if kind is RiskKind.TRUE:
        return ChiSquareMixture(((1.0, n),))
    return ChiSquareMixture(((2.0, m), (1.0, n - m)))


def risk_moments(kind: RiskKind, n: int, m: int, sigma: float) -> tuple[float, float]:
    """(mean, variance) of the raw squared-norm risk."""
    _check_nm(n, m)
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    mix = analytic_risk_distribution(kind, n, m)
    s2 = sigma * sigma
    return s2 * mix.mean(), s2 * s2 * mix.variance()


def testing_bound(n: int, m: int, delta: float) -> float:
    """Chebyshev upper bound on the g-normalized testing risk.

    With probability at least 1 - delta,
        g <= n + m + sqrt((6m + 2n) / delta).
    """
    _check_nm(n, m)
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must be in (0, 1)")
    return n + m + np.sqrt((6.0 * m + 2.0 * n) / delta)


def naive_cdfs(n: int, m: int, x) -> tuple[float, float]:
    """CDFs of the naive chi2(n+m) and chi2(n+2m) approximations at x.

    Neither is the true testing law; both are provided only for
    comparison curves.
    """
    if n < 1 or m < 1:
        raise DomainError("need n, m >= 1")
    return (
        gamma_cdf((n + m) / 2.0, 2.0, x),
        gamma_cdf((n + 2 * m) / 2.0, 2.0, x),
    )


def sample_risks(
    model: FixedDesignModel,
    kind: RiskKind,
    n_samples: int,
    master_seed: int,
) -> RiskSampleSet:
    """Monte Carlo replications of the g-normalized risk.

    Replication i draws z (and z_t for the testing risk) from
    substream(master_seed, i), fits least squares, and records the
    squared residual norm in g-units. Because g is computed directly
    from z, the output is bit-identical for any sigma and any worker
    count.
    """
    if n_samples < 1:
        raise DomainError("n_samples must be positive")
    n, m = model.n, model.m
    q, _ = qr_factor(model.design)
    need_zt = kind is RiskKind.TESTING
    values = np.empty(n_samples)
    for start in range(0, n_samples, _CHUNK):
        stop = min(start + _CHUNK, n_samples)
        b = stop - start
        z = np.empty((b, n))
        zt = np.empty((b, n)) if need_zt else None
        for i in range(b):
            stream = substream(master_seed, start + i)
            z[i] = stream.standard_normal(n)
            if need_zt:
                zt[i] = stream.standard_normal(n)
        if kind is RiskKind.TRUE:
            g = np.einsum("ij,ij->i", z, z)
        else:
            fitted = (z @ q) @ q.T  # P z, with P = Q Q'
            resid = (zt - fitted) if need_zt else (z - fitted)
            g = np.einsum("ij,ij->i", resid, resid)
        values[start:stop] = g
    return RiskSampleSet(kind=kind, values=values, n_samples=n_samples)
