"""Gamma/chi-square special functions and scaled chi-square mixtures.

All analytic risk laws in this package reduce to sums of independent
scaled chi-square variables. A single scaled component is a gamma
distribution; a two-component sum is evaluated by one-dimensional
convolution quadrature. Sums with different scale coefficients are *not*
chi-square themselves, which is the whole reason this module exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammainc, gammaln

from .errors import DomainError, UnsupportedMixture
from .rng import chi2_sample

#: Number of Gauss-Legendre nodes for the two-component convolution.
_GL_NODES = 256
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_NODES)

#: Row-chunk size when evaluating mixture pdf/cdf on large grids.
_CHUNK = 4096


def _check_gamma_params(shape: float, scale: float) -> None:
    if not (shape > 0.0 and scale > 0.0):
        raise DomainError("gamma shape and scale must be positive")


def gamma_pdf(shape: float, scale: float, x):
    """Density of the gamma distribution; 0 for x < 0.

    At x = 0 the density is 0 for shape > 1, 1/scale for shape = 1, and
    +inf for shape < 1.
    """
    _check_gamma_params(shape, scale)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.zeros_like(x)
    pos = x > 0.0
    xp = x[pos]
    with np.errstate(divide="ignore"):
        out[pos] = np.exp(
            (shape - 1.0) * np.log(xp) - xp / scale - gammaln(shape) - shape * np.log(scale)
        )
    zero = x == 0.0
    if np.any(zero):
        if shape < 1.0:
            out[zero] = np.inf
        elif shape == 1.0:
            out[zero] = 1.0 / scale
    return float(out[0]) if scalar else out


def gamma_cdf(shape: float, scale: float, x):
    """Regularized lower incomplete gamma P(shape, x/scale); 0 for x <= 0."""
    _check_gamma_params(shape, scale)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    out = gammainc(shape, np.maximum(np.atleast_1d(x), 0.0) / scale)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ChiSquareMixture:
    """Sum of independent scaled chi-squares, sum_i scale_i * chi2(dof_i).

    Components with dof = 0 contribute a point mass at zero and are
    dropped from density evaluation. At most two components with dof > 0
    are supported for pdf/cdf (all risk laws here need at most two).
    """

    components: tuple[tuple[float, int], ...]

    def __post_init__(self):
        comps = tuple((float(c), int(k)) for c, k in self.components)
        for c, k in comps:
            if c <= 0.0:
                raise DomainError("mixture scales must be positive")
            if k < 0:
                raise DomainError("mixture dofs must be non-negative")
        object.__setattr__(self, "components", comps)

    @property
    def nonzero(self) -> tuple[tuple[float, int], ...]:
        return tuple((c, k) for c, k in self.components if k > 0)

    def mean(self) -> float:
        return sum(c * k for c, k in self.components)

    def variance(self) -> float:
        return sum(2.0 * c * c * k for c, k in self.components)

    def sample_array(self, stream: np.random.Generator, size: int) -> np.ndarray:
        """Vectorized draws; component order is fixed, so results are
        deterministic for a given stream state."""
        out = np.zeros(size)
        for c, k in self.nonzero:
            out += c * stream.chisquare(k, size=size)
        return out

    def sample(self, stream: np.random.Generator) -> float:
        return sum(c * chi2_sample(k, stream) for c, k in self.components)

    def pdf(self, x):
        return self._evaluate(x, cdf=False)

    def cdf(self, x):
        return self._evaluate(x, cdf=True)

    def quantile(self, p: float) -> float:
        """Inverse cdf by bracketing + Brent; p in (0, 1)."""
        if not 0.0 < p < 1.0:
            raise DomainError("quantile level must be in (0, 1)")
        if not self.nonzero:
            return 0.0
        hi = self.mean() + 10.0 * np.sqrt(self.variance())
        while self.cdf(hi) < p:
            hi *= 2.0
        return brentq(lambda t: self.cdf(t) - p, 0.0, hi, xtol=1e-12, rtol=1e-14)

    def _evaluate(self, x, cdf: bool):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        comps = self.nonzero
        if len(comps) == 0:
            # Point mass at zero.
            if cdf:
                out = (x >= 0.0).astype(float)
            else:
                out = np.where(x == 0.0, np.inf, 0.0)
        elif len(comps) == 1:
            c, k = comps[0]
            fn = gamma_cdf if cdf else gamma_pdf
            out = fn(k / 2.0, 2.0 * c, x)
        elif len(comps) == 2:
            out = _convolve_two(comps, x, cdf)
        else:
            raise UnsupportedMixture("pdf/cdf supports at most two nonzero components")
        return float(out[0]) if scalar else out


def _convolve_two(comps, x: np.ndarray, cdf: bool) -> np.ndarray:
    """Gauss-Legendre evaluation of the two-component convolution.

    With X the larger-scale component and Y the other,
      F(t) = int_0^t f_X(s) F_Y(t - s) ds   (cdf)
      f(t) = int_0^t f_X(s) f_Y(t - s) ds   (pdf).
    """
    (cx, kx), (cy, ky) = sorted(comps, key=lambda ck: -ck[0])
    shape_x, scale_x = kx / 2.0, 2.0 * cx
    shape_y, scale_y = ky / 2.0, 2.0 * cy
    out = np.zeros_like(x)
    pos = np.flatnonzero(x > 0.0)
    for start in range(0, pos.size, _CHUNK):
        idx = pos[start : start + _CHUNK]
        t = x[idx][:, None]
        s = 0.5 * t * (_GL_X[None, :] + 1.0)
        fx = gamma_pdf(shape_x, scale_x, s)
        if cdf:
            gy = gamma_cdf(shape_y, scale_y, t - s)
        else:
            gy = gamma_pdf(shape_y, scale_y, t - s)
        out[idx] = 0.5 * x[idx] * ((fx * gy) @ _GL_W)
    return out


def mixture_pdf(mix: ChiSquareMixture, x):
    """Density of the mixture at x (functional form of ChiSquareMixture.pdf)."""
    return mix.pdf(x)


def mixture_cdf(mix: ChiSquareMixture, x):
    """CDF of the mixture at x (functional form of ChiSquareMixture.cdf)."""
    return mix.cdf(x)
