"""
Janson's ratio
==============

With N = C(n,k) indicators, dependency degree Delta and standard deviation
sigma, the ratio N Delta^(m-1) / sigma^m behaves like n^(1 - m/2), so it
vanishes for m >= 3.
"""

from patstat import Permutation, janson_sweep

q = Permutation((1, 3, 2))
for m in range(1, 5):
    sweep = janson_sweep(3, m, n_start=100, doublings=6, q=q)
    print(f"m={m}  slope {sweep.slope:+.3f}  expected {sweep.exponent:+.1f}  "
          f"vanishing={sweep.vanishing}")

sweep = janson_sweep(3, 3, q=q)
for a in sweep.points:
    print(a.n, f"{a.ratio:.4g}")
