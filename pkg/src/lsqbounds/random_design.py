"""Generalization error of OLS with random Gaussian features.

Features are sampled directly as phi = L q with q ~ N(0, I_m) and
Sigma_phi = L L'; responses are y = Phi theta* + sigma z. For the
well-specified model the out-of-sample squared error collapses to

    l = sigma^2 (zhat - phihat' Phi^+ z)^2,

which is free of theta* and of the feature covariance (both cancel
exactly), so trials are computed through this identity. Closed forms for
the mean, second moment and variance of l follow from inverse-Wishart
trace moments; two variance polynomials are carried side by side:

    PAPER_POLYNOMIAL - the variance polynomial as published alongside the
        boxed Chebyshev bound (it equals E[l^2] minus the square of the
        mean *without* its additive sigma^2 term, and therefore
        overstates the variance by sigma^4 (n+m-1)/(n-m-1));
    CORRECTED - E[l^2] - E[l]^2 with the consistent mean.

Both give valid (conservative) Chebyshev tail bounds; the Monte Carlo
engine adjudicates which one matches the sample variance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, RankDeficient
from .linalg import RANK_RTOL, cholesky
from .rng import splitmix64, substream

#: Trials per generation chunk in run_trials.
_CHUNK = 4096

#: Dedicated substream index for the once-per-experiment theta* draw.
_THETA_STAR_INDEX = 2**63

#: Spec of a random unit-norm true parameter vector.
RANDOM_UNIT = "random_unit"


class VarianceMode(enum.Enum):
    PAPER_POLYNOMIAL = "paper"
    CORRECTED = "corrected"


class ApproxRegime(enum.Enum):
    LARGE_N = "large_n"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class RandomDesignConfig:
    """Configuration of one random-design experiment.

    theta_star_spec is either an explicit m-vector or RANDOM_UNIT, in
    which case theta* = t/||t||, t ~ N(0, I_m), drawn once per experiment
    from a dedicated substream. sigma = 0 is allowed (the loss is then
    exactly zero for every trial); the CLI additionally requires
    sigma > 0.
    """

    n: int
    m: int
    sigma: float
    master_seed: int
    feature_cov: np.ndarray | None = None  # Sigma_phi; None means identity
    theta_star_spec: np.ndarray | str = RANDOM_UNIT

    def __post_init__(self):
        if not self.n > self.m + 3:
            raise DomainError("need n > m + 3 for all variance formulas")
        if self.sigma < 0.0:
            raise DomainError("sigma must be non-negative")
        if self.feature_cov is not None:
            cov = np.asarray(self.feature_cov, dtype=float)
            if cov.shape != (self.m, self.m):
                raise DomainError("feature_cov must be m x m")
            cholesky(cov)  # SPD check
            object.__setattr__(self, "feature_cov", cov)
        if not isinstance(self.theta_star_spec, str):
            t = np.asarray(self.theta_star_spec, dtype=float)
            if t.shape != (self.m,):
                raise DomainError("theta_star_spec vector must have length m")
            object.__setattr__(self, "theta_star_spec", t)
        elif self.theta_star_spec != RANDOM_UNIT:
            raise DomainError(f"unknown theta_star_spec {self.theta_star_spec!r}")

    def cholesky_factor(self) -> np.ndarray | None:
        """Lower Cholesky factor of Sigma_phi, or None for the identity."""
        if self.feature_cov is None:
            return None
        return cholesky(self.feature_cov)


def draw_theta_star(config: RandomDesignConfig) -> np.ndarray:
    """The experiment's true parameter vector.

    Inert for the loss values (l does not depend on theta*), but drawn
    from a dedicated substream for protocol fidelity and reporting.
    """
    spec = config.theta_star_spec
    if not isinstance(spec, str):
        return spec
    stream = substream(config.master_seed, _THETA_STAR_INDEX)
    t = stream.standard_normal(config.m)
    return t / np.linalg.norm(t)


def _batch_losses(config, chol, indices, seed):
    """Losses for the given trial indices, plus a rank-failure mask.

    All per-trial arithmetic uses per-slice LAPACK/einsum operations, so
    values are independent of how trials are grouped into batches.
    """
    n, m = config.n, config.m
    b = len(indices)
    q = np.empty((b, m, n))
    z = np.empty((b, n))
    qhat = np.empty((b, m))
    zhat = np.empty(b)
    for i, idx in enumerate(indices):
        stream = substream(seed, int(idx))
        q[i] = stream.standard_normal((m, n))
        z[i] = stream.standard_normal(n)
        qhat[i] = stream.standard_normal(m)
        zhat[i] = stream.standard_normal()
    phi = np.swapaxes(q, 1, 2) if chol is None else np.swapaxes(q, 1, 2) @ chol.T
    phihat = qhat if chol is None else qhat @ chol.T
    qf, r = np.linalg.qr(phi)
    diag = np.abs(np.diagonal(r, axis1=1, axis2=2))
    bad = diag.min(axis=1) <= RANK_RTOL * diag.max(axis=1)
    t = np.linalg.solve(r, np.einsum("bnm,bn->bm", qf, z)[..., None])[..., 0]
    err = zhat - np.einsum("bm,bm->b", phihat, t)
    return config.sigma**2 * err * err, bad


def _losses_with_retry(config, chol, indices) -> np.ndarray:
    losses, bad = _batch_losses(config, chol, indices, config.master_seed)
    if bad.any():
        # Probability-zero event: retry failed trials once on a fresh
        # substream family, then abort.
        retry_idx = np.asarray(indices)[bad]
        retried, still_bad = _batch_losses(config, chol, retry_idx, splitmix64(config.master_seed))
        if still_bad.any():
            raise RankDeficient("random design matrix is numerically rank deficient")
        losses[bad] = retried
    return losses


def run_trial(config: RandomDesignConfig, trial_index: int) -> float:
    """Out-of-sample squared error of one seeded trial.

    Draw order per trial: Q (m x n), z (n), qhat (m), zhat, all from
    substream(master_seed, trial_index).
    """
    return float(_losses_with_retry(config, config.cholesky_factor(), [trial_index])[0])


def run_trials(config: RandomDesignConfig, n_trials: int) -> np.ndarray:
    """Losses of trials 0..n_trials-1; identical values to the scalar
    run_trial path for every index, computed in batches for throughput."""
    if n_trials < 1:
        raise DomainError("n_trials must be positive")
    chol = config.cholesky_factor()
    losses = np.empty(n_trials)
    for start in range(0, n_trials, _CHUNK):
        stop = min(start + _CHUNK, n_trials)
        losses[start:stop] = _losses_with_retry(config, chol, range(start, stop))
    return losses


def _check_mean_domain(n: int, m: int) -> None:
    if m < 0 or n <= m + 1:
        raise DomainError("need n > m + 1 and m >= 0")


def _check_var_domain(n: int, m: int) -> None:
    if m < 0 or n <= m + 3:
        raise DomainError("need n > m + 3 and m >= 0")


def mean_mse(n: int, m: int, sigma: float) -> float:
    """E[l] = sigma^2 (1 + m/(n-m-1)) = sigma^2 (n-1)/(n-m-1)."""
    _check_mean_domain(n, m)
    return sigma**2 * (n - 1) / (n - m - 1)


def second_moment_mse(n: int, m: int, sigma: float) -> float:
    """E[l^2] = sigma^4 3(n-1)(n-3) / ((n-m-1)(n-m-3))."""
    _check_var_domain(n, m)
    return sigma**4 * 3.0 * (n - 1) * (n - 3) / ((n - m - 1) * (n - m - 3))


def variance_mse(n: int, m: int, sigma: float, mode: VarianceMode) -> float:
    """Variance of l under the selected polynomial.

    PAPER_POLYNOMIAL:
        sigma^4 [m^3 - m^2(n-3) - 3m(n-3)(n-1) + 3(n-3)(n-1)^2]
               / [(n-m-1)^2 (n-m-3)]
    CORRECTED (= E[l^2] - E[l]^2):
        2 sigma^4 (n-1)[(n-1)(n-3) - m(n-4)] / [(n-m-1)^2 (n-m-3)]

    The two differ by exactly sigma^4 (n+m-1)/(n-m-1).
    """
    _check_var_domain(n, m)
    denom = (n - m - 1) ** 2 * (n - m - 3)
    if mode is VarianceMode.PAPER_POLYNOMIAL:
        num = m**3 - m**2 * (n - 3) - 3 * m * (n - 3) * (n - 1) + 3 * (n - 3) * (n - 1) ** 2
    else:
        num = 2 * (n - 1) * ((n - 1) * (n - 3) - m * (n - 4))
    return sigma**4 * num / denom


def mse_bound(n: int, m: int, sigma: float, delta: float, mode: VarianceMode) -> float:
    """Chebyshev tail bound: E[l] + sqrt(Var(l)) / sqrt(delta).

    Holds with probability at least 1 - delta for either variance mode
    (the published polynomial is never smaller than the corrected one).
    """
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must be in (0, 1)")
    return mean_mse(n, m, sigma) + np.sqrt(variance_mse(n, m, sigma, mode) / delta)


def printed_mse_bound(n: int, m: int, sigma: float, delta: float) -> float:
    """The boxed bound exactly as published:

        sigma^2/(n-m-1) [m + sqrt(num_paper/(n-m-3)) / sqrt(delta)].

    This equals mse_bound(PAPER_POLYNOMIAL) minus the additive sigma^2
    of the mean, i.e. the published bracket drops the noise-floor term.
    """
    return mse_bound(n, m, sigma, delta, VarianceMode.PAPER_POLYNOMIAL) - sigma**2


def approx_bound(
    alpha: float,
    sigma: float,
    delta: float,
    regime: ApproxRegime,
    include_mean: bool = False,
) -> float:
    """Large-n approximations of the tail bound, alpha = n/m.

    LARGE_N:     sigma^2/(alpha-1) * [1 + sqrt((3 alpha^2 - 1)/delta)]
    ASYMPTOTIC:  sigma^2 sqrt(3/delta)            (alpha -> infinity)

    The printed forms above drop the additive sigma^2 of the mean
    (mu_l ~ alpha sigma^2/(alpha-1) = sigma^2 + sigma^2/(alpha-1));
    include_mean=True restores it.
    """
    if not alpha > 1.0:
        raise DomainError("alpha must exceed 1")
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must be in (0, 1)")
    s2 = sigma**2
    if regime is ApproxRegime.LARGE_N:
        base = s2 / (alpha - 1.0) * (1.0 + np.sqrt((3.0 * alpha**2 - 1.0) / delta))
    else:
        base = s2 * np.sqrt(3.0 / delta)
    return base + s2 if include_mean else base


def inv_wishart_trace_moments(n: int, m: int) -> tuple[float, float, float]:
    """(E[Tr W^-1], E[Tr W^-2], E[(Tr W^-1)^2]) for W ~ Wishart_m(I, n).

    t1 = m/(n-m-1)
    t2 = (n-1) m / ((n-m-3)(n-m-1)(n-m))
    t11 = m (m(n-m-2) + 2) / ((n-m-3)(n-m-1)(n-m))
    """
    _check_var_domain(n, m)
    k = n - m
    t1 = m / (k - 1)
    t2 = (n - 1) * m / ((k - 3) * (k - 1) * k)
    t11 = m * (m * (k - 2) + 2) / ((k - 3) * (k - 1) * k)
    return t1, t2, t11


def second_moment_mse_wishart(n: int, m: int, sigma: float) -> float:
    """E[l^2] through the unsimplified four-term trace expression:

        sigma^4 (3 + 6 t1 + 6 t2 + 3 t11).

    Must agree with second_moment_mse to roundoff; kept as an
    independent route for verification.
    """
    t1, t2, t11 = inv_wishart_trace_moments(n, m)
    return sigma**4 * (3.0 + 6.0 * t1 + 6.0 * t2 + 3.0 * t11)


def gaussian_quartic_moment(a_mat, a_vec) -> float:
    """E[((A x + a)'(A x + a))^2] for x ~ N(0, I):

        2 Tr((AA')^2) + 4 a'AA'a + (Tr(AA') + a'a)^2.
    """
    a_mat = np.asarray(a_mat, dtype=float)
    a_vec = np.asarray(a_vec, dtype=float)
    if a_mat.ndim != 2 or a_vec.ndim != 1 or a_mat.shape[0] != a_vec.shape[0]:
        raise DimensionMismatch("A must be 2-d with as many rows as a has entries")
    g = a_mat @ a_mat.T
    tr = np.trace(g)
    return float(
        2.0 * np.trace(g @ g) + 4.0 * a_vec @ g @ a_vec + (tr + a_vec @ a_vec) ** 2
    )


@dataclass(frozen=True)
class BoundCurve:
    """Tail-bound curve: (delta, bound) pairs for one variance mode."""

    mode: VarianceMode
    points: tuple[tuple[float, float], ...]


def bound_curve(n: int, m: int, sigma: float, deltas, mode: VarianceMode) -> BoundCurve:
    points = tuple((float(d), mse_bound(n, m, sigma, d, mode)) for d in deltas)
    if any(b1 <= b2 for (_, b1), (_, b2) in zip(points, points[1:])) and all(
        d1 < d2 for (d1, _), (d2, _) in zip(points, points[1:])
    ):
        raise DomainError("bound must be strictly decreasing in delta")
    return BoundCurve(mode=mode, points=points)
