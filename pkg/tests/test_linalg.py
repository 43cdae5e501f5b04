import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsqbounds import linalg
from lsqbounds.errors import NotPositiveDefinite, NotSymmetric, RankDeficient

DEMO_A = np.array([[1.0, 0.6], [3.2, -2.0], [4.0, 1.0], [3.1, -1.0]])


class TestCholesky:
    def test_identity(self):
        np.testing.assert_array_equal(linalg.cholesky(np.eye(2)), np.eye(2))

    def test_diagonal(self):
        l = linalg.cholesky(np.diag([4.0, 9.0]))
        np.testing.assert_allclose(l, np.diag([2.0, 3.0]))

    def test_two_by_two(self):
        # Hand expansion: L00 = sqrt(2), L10 = 1/sqrt(2), L11 = sqrt(3/2).
        s = np.array([[2.0, 1.0], [1.0, 2.0]])
        l = linalg.cholesky(s)
        np.testing.assert_allclose(
            l, [[1.41421356, 0.0], [0.70710678, 1.22474487]], atol=5e-9
        )
        np.testing.assert_allclose(l @ l.T, s, rtol=1e-10)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            linalg.cholesky([[1.0, 0.5], [0.0, 1.0]])

    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefinite):
            linalg.cholesky([[1.0, 2.0], [2.0, 1.0]])

    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_random_spd(self, dim, seed):
        r = np.random.default_rng(seed).standard_normal((dim, dim))
        s = r.T @ r + np.eye(dim)
        l = linalg.cholesky(s)
        assert np.abs(l @ l.T - s).max() <= 1e-10 * np.abs(s).max()
        assert np.all(np.diag(l) > 0)
        assert np.allclose(np.triu(l, 1), 0.0)


class TestSolveLeastSquares:
    def test_identity_design(self):
        y = np.array([1.0, 2.0, 3.0])
        np.testing.assert_allclose(linalg.solve_least_squares(np.eye(3), y), y)

    def test_mean_of_two_points(self):
        theta = linalg.solve_least_squares([[1.0], [1.0]], [1.0, 3.0])
        np.testing.assert_allclose(theta, [2.0])

    def test_noiseless_recovery_demo_design(self):
        theta = np.array([0.3, -2.0])
        est = linalg.solve_least_squares(DEMO_A, DEMO_A @ theta)
        np.testing.assert_allclose(est, theta, atol=1e-12)

    def test_residual_orthogonal(self):
        rng = np.random.default_rng(3)
        phi = rng.standard_normal((12, 4))
        y = rng.standard_normal(12)
        resid = y - phi @ linalg.solve_least_squares(phi, y)
        assert np.abs(phi.T @ resid).max() <= 1e-8 * np.linalg.norm(y)

    def test_rank_deficient(self):
        phi = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        with pytest.raises(RankDeficient):
            linalg.solve_least_squares(phi, [1.0, 2.0, 3.0])

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_recovers_any_theta(self, seed):
        rng = np.random.default_rng(seed)
        phi = rng.standard_normal((10, 3)) + np.vstack([np.eye(3)] * 3 + [np.zeros(3)])
        theta = rng.standard_normal(3)
        est = linalg.solve_least_squares(phi, phi @ theta)
        assert np.abs(est - theta).max() <= 1e-8


class TestProjection:
    def test_identity(self):
        np.testing.assert_allclose(linalg.projection(np.eye(2)), np.eye(2))

    def test_first_axis(self):
        p = linalg.projection([[1.0], [0.0]])
        np.testing.assert_allclose(p, [[1.0, 0.0], [0.0, 0.0]], atol=1e-15)

    def test_demo_design_trace(self):
        # Independent route: P = A (A'A)^-1 A' with the 2x2 inverse formed
        # by the closed-form adjugate.
        g = DEMO_A.T @ DEMO_A
        det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        ginv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det
        p_direct = DEMO_A @ ginv @ DEMO_A.T
        p = linalg.projection(DEMO_A)
        np.testing.assert_allclose(p, p_direct, atol=1e-12)
        assert abs(np.trace(p) - 2.0) <= 1e-8

    @given(st.integers(1, 4), st.integers(5, 9), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_idempotent_symmetric(self, m, n, seed):
        a = np.random.default_rng(seed).standard_normal((n, m))
        p = linalg.projection(a)
        assert np.abs(p - p.T).max() <= 1e-8
        assert np.abs(p @ p - p).max() <= 1e-8
        assert abs(np.trace(p) - m) <= 1e-8
        # eigenvalues are 0/1: trace(P^2) must equal trace(P)
        assert abs(np.trace(p @ p) - m) <= 1e-8


class TestSpdInverse:
    def test_identity(self):
        np.testing.assert_allclose(linalg.spd_inverse(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        np.testing.assert_allclose(
            linalg.spd_inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25])
        )

    def test_two_by_two_closed_form(self):
        inv = linalg.spd_inverse([[2.0, 1.0], [1.0, 2.0]])
        np.testing.assert_allclose(
            inv, [[2 / 3, -1 / 3], [-1 / 3, 2 / 3]], rtol=1e-12
        )

    def test_product_is_identity(self):
        rng = np.random.default_rng(11)
        r = rng.standard_normal((5, 5))
        s = r.T @ r + np.eye(5)
        assert np.abs(s @ linalg.spd_inverse(s) - np.eye(5)).max() <= 1e-8
