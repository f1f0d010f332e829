"""Seeded sampling of pattern counts and normality diagnostics.

Sample i is always drawn from ``random_permutation(n, seed, stream=i)``, so a
run is reproducible bit for bit and does not depend on how samples are split
across worker processes.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Sequence

import numpy as np
from scipy.special import ndtr

from . import _json
from .counting import CountPlan
from .moments import DEFAULT_MAX_K, PatternTooLong, expectation, exact_variance
from .perm import SEED_MAX, Pattern, _random_array

__all__ = [
    "Standardization", "SimConfig", "SimSummary", "sample_counts",
    "standardize_counts", "normal_cdf", "ks_statistic", "sample_moments",
    "histogram", "simulate",
]


class Standardization(str, enum.Enum):
    EXACT = "exact_moments"
    EMPIRICAL = "empirical_moments"


@dataclass(frozen=True)
class SimConfig:
    pattern: Pattern
    n: int
    samples: int
    seed: int
    workers: int = 1
    standardization: Standardization = Standardization.EXACT
    bins: int = 60
    hist_range: tuple[float, float] = (-5.0, 5.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "standardization", Standardization(self.standardization))
        if self.samples < 1:
            raise ValueError(f"samples must be at least 1, got {self.samples}")
        if self.n < len(self.pattern):
            raise ValueError(f"n={self.n} is shorter than the pattern (k={len(self.pattern)})")
        if len(self.pattern) < 1:
            raise ValueError("pattern must be non-empty")
        if not 0 <= self.seed <= SEED_MAX:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        if self.bins < 1:
            raise ValueError(f"bins must be positive, got {self.bins}")
        lo, hi = self.hist_range
        if not lo < hi:
            raise ValueError(f"empty histogram range {self.hist_range}")
        if comb(self.n, len(self.pattern)) >= 2**53:
            raise ValueError("C(n, k) exceeds 2^53; counts would lose precision as floats")


def _count_block(pattern: Pattern, n: int, seed: int, start: int, stop: int) -> np.ndarray:
    plan = CountPlan(pattern)
    out = np.empty(stop - start, dtype=np.int64)
    for i in range(start, stop):
        out[i - start] = plan.count_array(_random_array(n, seed, i))
    return out


def _sample_array(cfg: SimConfig) -> np.ndarray:
    if cfg.workers == 1 or cfg.samples < 2 * cfg.workers:
        return _count_block(cfg.pattern, cfg.n, cfg.seed, 0, cfg.samples)
    edges = np.linspace(0, cfg.samples, cfg.workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        parts = pool.map(_count_block, [cfg.pattern] * cfg.workers, [cfg.n] * cfg.workers,
                         [cfg.seed] * cfg.workers, edges[:-1].tolist(), edges[1:].tolist())
        return np.concatenate(list(parts))


def sample_counts(cfg: SimConfig) -> list[int]:
    """Occurrence counts of ``cfg.pattern`` in ``cfg.samples`` random permutations."""
    return _sample_array(cfg).tolist()


def standardize_counts(counts: Sequence[float], mean: float, sd: float) -> np.ndarray:
    """(x - mean)/sd elementwise."""
    if not sd > 0:
        raise ValueError(f"standard deviation must be positive, got {sd}")
    return (np.asarray(counts, dtype=float) - float(mean)) / float(sd)


def normal_cdf(x):
    """Standard normal CDF, Cephes ``ndtr`` (relative error around 1e-16)."""
    return ndtr(x)


def ks_statistic(standardized: Sequence[float]) -> float:
    """sup_x |F_N(x) - Phi(x)| for the empirical CDF F_N of the sample.

    Both sides of every jump are checked: i/N - Phi(x_i) and
    Phi(x_i) - (i-1)/N over the sorted sample.  Ties need no special care
    because the first and last member of a tied run give the extremes.
    """
    x = np.sort(np.asarray(standardized, dtype=float))
    size = x.size
    if size == 0:
        raise ValueError("KS statistic of an empty sample")
    cdf = normal_cdf(x)
    i = np.arange(1, size + 1)
    above = np.max(i / size - cdf)
    below = np.max(cdf - (i - 1) / size)
    return float(min(1.0, max(above, below)))


def sample_moments(x: np.ndarray) -> tuple[float, float, float, float]:
    """Mean, variance (ddof=1), skewness G1 and excess kurtosis G2.

    G1 = sqrt(N(N-1))/(N-2) * m3/m2^1.5 and
    G2 = (N-1)/((N-2)(N-3)) * ((N+1) m4/m2^2 - 3(N-1)), with m_r the
    central moments about the sample mean (divisor N).  NaN where
    undefined (N too small or zero spread).
    """
    size = x.size
    mean = float(np.mean(x))
    d = x - mean
    m2 = float(np.mean(d * d))
    m3 = float(np.mean(d ** 3))
    m4 = float(np.mean(d ** 4))
    var = m2 * size / (size - 1) if size > 1 else math.nan
    if size < 3 or m2 == 0:
        skew = math.nan
    else:
        skew = math.sqrt(size * (size - 1)) / (size - 2) * m3 / m2 ** 1.5
    if size < 4 or m2 == 0:
        kurt = math.nan
    else:
        kurt = (size - 1) / ((size - 2) * (size - 3)) * ((size + 1) * m4 / (m2 * m2) - 3 * (size - 1))
    return mean, var, skew, kurt


def histogram(z: np.ndarray, bins: int = 60, hist_range: tuple[float, float] = (-5.0, 5.0)):
    """Counts over equal bins; values outside the range land in the end bins.

    Returns ``(edges, counts, underflow, overflow)`` where the last two count
    the clipped values (already included in ``counts``).
    """
    lo, hi = hist_range
    underflow = int(np.count_nonzero(z < lo))
    overflow = int(np.count_nonzero(z > hi))
    counts, edges = np.histogram(np.clip(z, lo, hi), bins=bins, range=(lo, hi))
    return edges, counts, underflow, overflow


def _float(x: float) -> float | None:
    return None if math.isnan(x) else x


@dataclass(frozen=True)
class SimSummary:
    pattern: Pattern
    n: int
    samples: int
    seed: int
    standardization: Standardization
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    ks_distance: float
    center: float
    scale: float
    hist_edges: tuple[float, ...]
    hist_counts: tuple[int, ...]
    underflow: int
    overflow: int
    exact_mean: Fraction | None
    exact_variance: Fraction | None

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": _json.SCHEMA,
            "pattern": list(self.pattern.values),
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "standardization": self.standardization.value,
            "moment_formulas": "mean; variance ddof=1; skewness adjusted Fisher-Pearson G1; "
                               "excess kurtosis bias-corrected G2",
            "mean": self.mean,
            "variance": self.variance,
            "skewness": _float(self.skewness),
            "excess_kurtosis": _float(self.excess_kurtosis),
            "ks_distance": self.ks_distance,
            "standardized_with": {"center": self.center, "scale": self.scale},
            "exact_mean": None if self.exact_mean is None else _json.rational(self.exact_mean),
            "exact_variance": None if self.exact_variance is None else _json.rational(self.exact_variance),
            "histogram": {
                "edges": list(self.hist_edges),
                "counts": list(self.hist_counts),
                "underflow": self.underflow,
                "overflow": self.overflow,
            },
        }

    def histogram_csv(self) -> str:
        rows = ["bin_left,bin_right,count"]
        for left, right, c in zip(self.hist_edges, self.hist_edges[1:], self.hist_counts):
            rows.append(f"{left!r},{right!r},{c}")
        return "\n".join(rows) + "\n"


def simulate(cfg: SimConfig) -> SimSummary:
    """Sample, standardize and summarize ``cfg.samples`` pattern counts."""
    exact_mean = exact_var = None
    k = len(cfg.pattern)
    if cfg.standardization is Standardization.EXACT:
        if k > DEFAULT_MAX_K:
            raise PatternTooLong(
                f"exact standardization needs k <= {DEFAULT_MAX_K}; use empirical moments")
        exact_mean = expectation(cfg.n, k)
        exact_var = exact_variance(cfg.n, cfg.pattern)
    raw = _sample_array(cfg).astype(float)
    mean, var, skew, kurt = sample_moments(raw)
    if exact_var is not None:
        if exact_var <= 0:
            raise ValueError(f"exact variance is zero for n={cfg.n}, k={k}; nothing to standardize")
        center, scale = float(exact_mean), math.sqrt(exact_var)
    else:
        if not var > 0:
            raise ValueError("sample variance is zero; nothing to standardize")
        center, scale = mean, math.sqrt(var)
    z = standardize_counts(raw, center, scale)
    edges, counts, under, over = histogram(z, cfg.bins, cfg.hist_range)
    return SimSummary(
        cfg.pattern, cfg.n, cfg.samples, cfg.seed, cfg.standardization,
        mean, var, skew, kurt, ks_statistic(z), center, scale,
        tuple(float(e) for e in edges), tuple(int(c) for c in counts), under, over,
        exact_mean, exact_var,
    )
