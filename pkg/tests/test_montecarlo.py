import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsqbounds.errors import DomainError
from lsqbounds.montecarlo import EmpiricalDistribution, ecdf, ks_statistic, summarize
from lsqbounds.rng import splitmix64, substream, substream_key


class TestSubstream:
    def test_deterministic(self):
        a = substream(3, 5).standard_normal(8)
        b = substream(3, 5).standard_normal(8)
        np.testing.assert_array_equal(a, b)

    def test_distinct_indices_differ(self):
        assert substream(3, 5).standard_normal() != substream(3, 6).standard_normal()
        assert substream_key(3, 5) != substream_key(3, 6)

    def test_distinct_seeds_differ(self):
        assert substream(3, 5).standard_normal() != substream(4, 5).standard_normal()

    def test_splitmix_bijection_known_values(self):
        assert splitmix64(0) != splitmix64(1)
        assert 0 <= splitmix64(2**64 - 1) < 2**64

    def test_pairwise_correlation(self):
        a = substream(17, 0).standard_normal(100_000)
        b = substream(17, 1).standard_normal(100_000)
        corr = np.corrcoef(a, b)[0, 1]
        assert abs(corr) < 0.01


class TestSummarize:
    def test_constant(self):
        s = summarize([1.0, 1.0, 1.0])
        assert s.mean == 1.0
        assert s.variance == 0.0

    def test_unbiased_variance(self):
        s = summarize([0.0, 2.0])
        assert s.mean == 1.0
        assert s.variance == 2.0

    def test_median_interpolation(self):
        s = summarize([1.0, 2.0, 3.0, 4.0], quantile_levels=(0.5,))
        assert s.quantiles[0.5] == 2.5

    def test_too_few(self):
        with pytest.raises(DomainError):
            summarize([1.0])

    def test_std_errors(self):
        v = np.random.default_rng(0).standard_normal(10_000)
        s = summarize(v)
        assert s.std_error_mean == pytest.approx(np.sqrt(s.variance / v.size), rel=1e-12)
        assert s.std_error_variance > 0.0

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_permutation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(20_000)
        s1 = summarize(v)
        s2 = summarize(rng.permutation(v))
        assert s1.mean == pytest.approx(s2.mean, rel=1e-12, abs=1e-12)
        assert s1.variance == pytest.approx(s2.variance, rel=1e-12)


class TestEcdf:
    def test_below_min(self):
        d = EmpiricalDistribution.from_samples([1.0, 2.0, 3.0])
        assert ecdf(d, 0.5) == 0.0

    def test_at_max(self):
        d = EmpiricalDistribution.from_samples([1.0, 2.0, 3.0])
        assert ecdf(d, 3.0) == 1.0
        assert ecdf(d, 10.0) == 1.0

    def test_counting(self):
        d = EmpiricalDistribution.from_samples([1.0, 2.0, 3.0])
        assert ecdf(d, 2.0) == pytest.approx(2 / 3)

    def test_right_continuity(self):
        d = EmpiricalDistribution.from_samples([1.0, 2.0])
        assert ecdf(d, 1.0) == 0.5
        assert ecdf(d, 1.0 - 1e-12) == 0.0


class TestKsStatistic:
    def test_single_sample_half(self):
        d = EmpiricalDistribution.from_samples([1.0])
        assert ks_statistic(d, lambda x: np.full_like(np.asarray(x, float), 0.5)) == 0.5

    def test_step_function(self):
        d = EmpiricalDistribution.from_samples([1.0, 2.0])
        step = lambda x: (np.asarray(x, float) >= 1.5).astype(float)
        assert ks_statistic(d, step) == 0.5

    def test_samples_from_f_itself(self):
        from scipy.special import ndtr

        draws = substream(99, 0).standard_normal(100_000)
        d = EmpiricalDistribution.from_samples(draws)
        assert ks_statistic(d, ndtr) <= 0.01

    def test_ks_of_own_ecdf_bounded(self):
        v = np.random.default_rng(4).standard_normal(1000)
        d = EmpiricalDistribution.from_samples(v)
        assert ks_statistic(d, lambda x: ecdf(d, x)) <= 1.0 / v.size + 1e-12

    def test_scalar_cdf_fallback(self):
        d = EmpiricalDistribution.from_samples([1.0, 2.0])
        assert ks_statistic(d, lambda x: 0.5 if x < 1.5 else 1.0) == 0.5
