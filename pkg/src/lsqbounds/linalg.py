"""Small dense linear algebra used by both regression settings.

Thin, validating wrappers around LAPACK (via numpy/scipy): Cholesky
factorization, full-rank least squares through Householder QR, explicit
projection matrices, and SPD inversion. Problem sizes are desk scale, so
everything is dense and formed explicitly.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import NotPositiveDefinite, NotSymmetric, RankDeficient

#: Relative tolerance for the symmetry precondition of SPD operations.
SYMMETRY_RTOL = 1e-12

#: Relative tolerance on R-diagonal magnitudes below which a design matrix
#: is declared rank deficient.
RANK_RTOL = 1e-10


def _as_2d(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _check_symmetric(s: np.ndarray) -> None:
    scale = np.abs(s).max()
    if scale == 0.0 or np.abs(s - s.T).max() > SYMMETRY_RTOL * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")


def cholesky(s) -> np.ndarray:
    """Lower-triangular L with S = L @ L.T for symmetric positive definite S.

    Raises NotSymmetric or NotPositiveDefinite when the preconditions fail.
    """
    s = _as_2d(s)
    if s.shape[0] != s.shape[1]:
        raise ValueError("matrix must be square")
    _check_symmetric(s)
    try:
        return np.linalg.cholesky(s)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from exc


def qr_factor(a) -> tuple[np.ndarray, np.ndarray]:
    """Reduced Householder QR of a full-column-rank n x m matrix (n >= m).

    Returns (Q, R) with Q n x m orthonormal and R m x m upper triangular.
    Raises RankDeficient when min |R_ii| <= RANK_RTOL * max |R_ii|.
    """
    a = _as_2d(a)
    n, m = a.shape
    if n < m:
        raise ValueError("need at least as many rows as columns")
    q, r = np.linalg.qr(a)
    diag = np.abs(np.diag(r))
    if diag.min() <= RANK_RTOL * diag.max():
        raise RankDeficient("design matrix is numerically rank deficient")
    return q, r


def solve_least_squares(phi, y) -> np.ndarray:
    """Unique minimizer of ||y - phi @ theta||^2 via Householder QR."""
    phi = _as_2d(phi)
    y = np.asarray(y, dtype=float)
    if y.shape != (phi.shape[0],):
        raise ValueError("y length must match the number of rows of phi")
    q, r = qr_factor(phi)
    return scipy.linalg.solve_triangular(r, q.T @ y)


def projection(a) -> np.ndarray:
    """Orthogonal projector onto the column space of a: a (a^T a)^-1 a^T."""
    q, _ = qr_factor(a)
    return q @ q.T


def spd_inverse(s) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix via Cholesky."""
    l = cholesky(s)
    return scipy.linalg.cho_solve((l, True), np.eye(l.shape[0]))
