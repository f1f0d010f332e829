import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from patstat.moments import exact_variance, expectation
from patstat.montecarlo import (SimConfig, Standardization, histogram, ks_statistic, normal_cdf,
                                sample_counts, sample_moments, simulate, standardize_counts)
from patstat.perm import Permutation

SEED = 20261017


def test_normal_cdf_accuracy():
    for x in np.linspace(-8, 8, 161):
        ref = 0.5 * math.erfc(-x / math.sqrt(2))
        assert abs(normal_cdf(x) - ref) < 1e-15
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    for x in (-6.5, -1.2345, 0.0, 0.5, 3.3):
        ref = float(mpmath.ncdf(x))
        assert abs(normal_cdf(x) - ref) < 1e-12


def test_standardize_counts():
    assert standardize_counts([3], 3, 2).tolist() == [0.0]
    assert standardize_counts([5, 1], 3, 2).tolist() == [1.0, -1.0]
    for sd in (0, -1):
        with pytest.raises(ValueError):
            standardize_counts([1], 0, sd)


def test_ks_examples():
    assert ks_statistic([0.0]) == 0.5
    assert ks_statistic([0.0] * 7) == 0.5
    z = np.random.default_rng(SEED).standard_normal(100_000)
    assert ks_statistic(z) < 0.01
    with pytest.raises(ValueError):
        ks_statistic([])


def brute_ks(x):
    # sup over a dense grid plus both sides of every sample point
    xs = np.sort(np.asarray(x))
    grid = np.concatenate([xs, xs - 1e-12, np.linspace(-10, 10, 2001)])
    ecdf = np.searchsorted(xs, grid, side="right") / xs.size
    return float(np.max(np.abs(ecdf - normal_cdf(grid))))


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=40))
def test_ks_matches_grid_search(values):
    x = np.array(values, dtype=float) / 7
    assert abs(ks_statistic(x) - brute_ks(x)) < 1e-9
    assert 0 <= ks_statistic(x) <= 1


def test_sample_moments_against_formulas():
    x = np.random.default_rng(1).exponential(size=1000)
    mean, var, skew, kurt = sample_moments(x)
    n = x.size
    d = x - x.mean()
    m2, m3, m4 = (d**2).mean(), (d**3).mean(), (d**4).mean()
    assert math.isclose(var, x.var(ddof=1))
    assert math.isclose(skew, m3 / m2**1.5 * math.sqrt(n * (n - 1)) / (n - 2))
    g2 = m4 / m2**2 - 3
    assert math.isclose(kurt, ((n + 1) * g2 + 6) * (n - 1) / ((n - 2) * (n - 3)))
    assert all(math.isnan(v) for v in sample_moments(np.ones(5))[2:])


def test_histogram_clips_into_end_bins():
    z = np.array([-7.0, -5.0, 0.0, 4.99, 5.0, 9.0])
    edges, counts, under, over = histogram(z, bins=10)
    assert counts.sum() == z.size
    assert (under, over) == (1, 1)
    assert counts[0] == 2 and counts[-1] == 3
    assert edges[0] == -5 and edges[-1] == 5


def test_bernoulli_case():
    q = Permutation((2, 3, 1))
    counts = sample_counts(SimConfig(q, 3, 30000, SEED))
    assert set(counts) <= {0, 1}
    p = 1 / 6
    assert abs(np.mean(counts) - p) < 4 * math.sqrt(p * (1 - p) / 30000)


def test_mean_of_inversion_pattern():
    cfg = SimConfig(Permutation((1, 2)), 10, 100_000, SEED)
    counts = np.array(sample_counts(cfg), dtype=float)
    se = math.sqrt(float(exact_variance(10, cfg.pattern)) / counts.size)
    assert abs(counts.mean() - float(expectation(10, 2))) < 3 * se
    assert float(expectation(10, 2)) == 22.5


def test_sample_counts_deterministic_and_worker_independent():
    cfg = SimConfig(Permutation((1, 3, 2)), 30, 400, SEED)
    first = sample_counts(cfg)
    assert first == sample_counts(cfg)
    assert first == sample_counts(SimConfig(cfg.pattern, 30, 400, SEED, workers=3))
    assert first != sample_counts(SimConfig(cfg.pattern, 30, 400, SEED + 1))


def test_simulate_worker_independence():
    base = SimConfig(Permutation((2, 4, 1, 3)), 20, 300, SEED)
    a = simulate(base).to_json()
    b = simulate(SimConfig(base.pattern, 20, 300, SEED, workers=4)).to_json()
    assert a == b


@pytest.mark.parametrize("bad", [dict(samples=0), dict(n=2), dict(workers=0), dict(seed=-1), dict(bins=0)])
def test_config_validation(bad):
    args = dict(pattern=Permutation((1, 2, 3)), n=10, samples=10, seed=1)
    args.update(bad)
    with pytest.raises(ValueError):
        SimConfig(**args)


def test_degenerate_small_n_is_far_from_normal():
    s = simulate(SimConfig(Permutation((1, 2, 3)), 3, 5000, SEED))
    assert s.ks_distance > 0.2


def test_empirical_standardization():
    s = simulate(SimConfig(Permutation((1, 3, 2)), 40, 5000, SEED, standardization="empirical_moments"))
    assert s.standardization is Standardization.EMPIRICAL
    assert s.exact_variance is None
    assert s.center == pytest.approx(s.mean) and s.scale == pytest.approx(math.sqrt(s.variance))
    z = standardize_counts(np.zeros(1), s.center, s.scale)
    assert z.shape == (1,)


@pytest.mark.parametrize("q", [(1, 2), (1, 3, 2), (2, 4, 1, 3)])
def test_moment_agreement(q):
    q = Permutation(q)
    s = simulate(SimConfig(q, 40, 20000, SEED))
    exact = float(s.exact_variance)
    rel_se = math.sqrt((2 + s.excess_kurtosis * (s.samples - 1) / s.samples) / (s.samples - 1))
    assert abs(s.variance / exact - 1) < 5 * rel_se
    assert abs(s.mean - float(s.exact_mean)) < 5 * math.sqrt(exact / s.samples)


def test_standardized_sample_is_centered():
    s = simulate(SimConfig(Permutation((1, 3, 2)), 60, 20000, SEED))
    z_mean = (s.mean - s.center) / s.scale
    assert abs(z_mean) < 4 / math.sqrt(s.samples)
    assert abs(s.variance / s.scale**2 - 1) < 0.05


def test_ks_improves_with_n_for_acceptance_seed():
    # seed-specific observation, not a theorem
    q = Permutation((1, 3, 2))
    small = simulate(SimConfig(q, 20, 20000, SEED)).ks_distance
    large = simulate(SimConfig(q, 200, 20000, SEED)).ks_distance
    assert large <= small


def test_summary_serialization():
    s = simulate(SimConfig(Permutation((1, 2)), 12, 500, SEED, bins=8))
    obj = s.to_json()
    assert obj["schema"] == "patstat/1"
    assert sum(obj["histogram"]["counts"]) == 500
    assert obj["exact_variance"] == {"num": str(s.exact_variance.numerator),
                                     "den": str(s.exact_variance.denominator)}
    assert s.exact_variance == Fraction(12 * 11 * 29, 72)
    csv = s.histogram_csv().splitlines()
    assert csv[0] == "bin_left,bin_right,count"
    assert len(csv) == 9
    assert sum(int(r.split(",")[2]) for r in csv[1:]) == 500
