"""
Normal limit, empirically
=========================

Standardize X_{n,q} with its exact mean and variance and compare with the
standard normal.  Skewness shrinks like n^(-1/2), visibly so for 123.
"""

import numpy as np

from patstat import Permutation, SimConfig, simulate

for q in [(1, 2), (1, 2, 3), (1, 3, 2)]:
    s = simulate(SimConfig(Permutation(q), n=100, samples=10_000, seed=20261017))
    print(f"{''.join(map(str, q)):>4}  ks={s.ks_distance:.4f}  skew={s.skewness:+.3f}  "
          f"kurt={s.excess_kurtosis:+.3f}")

for n in (25, 100, 400):
    s = simulate(SimConfig(Permutation((1, 2, 3)), n=n, samples=40_000, seed=1))
    print(f"123 at n={n}: skew {s.skewness:+.3f}, sqrt(n)*skew {np.sqrt(n) * s.skewness:.2f}")

# text histogram of the standardized counts
s = simulate(SimConfig(Permutation((1, 3, 2)), n=100, samples=10_000, seed=3, bins=20,
                       hist_range=(-4.0, 4.0)))
for left, c in zip(s.hist_edges, s.hist_counts):
    print(f"{left:+5.1f} {'#' * (c // 40)}")
