"""
Exact mean and variance
=======================

E[X] = C(n,k)/k! for every pattern of length k.  The variance depends on
q through how two occurrences can overlap, and is a polynomial in n.
"""

from patstat import (Permutation, brute_force_moments, exact_moments,
                     variance_polynomial)

for q in [(1, 2, 3), (1, 3, 2)]:
    q = Permutation(q)
    print(q, "n=4:", exact_moments(4, q).variance, "brute force:",
          brute_force_moments(4, q).variance)

# inversions: the classical n(n-1)(2n+5)/72
inv = Permutation((2, 1))
print([str(exact_moments(n, inv).variance) for n in range(2, 8)])

# the polynomial itself, in powers of n
poly = variance_polynomial(Permutation((1, 3, 2)))
for d, c in enumerate(poly.power_basis()):
    if c:
        print(f"n^{d}: {c}")
print("leading coefficient:", poly.leading_coefficient())
