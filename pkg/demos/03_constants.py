"""
The constants S_k and c_k
=========================

S_k sums squared one-overlap weights; c_k = S_k/(2k-1)!^2 - k^2/k!^4.
Cauchy-Schwarz against the Vandermonde total shows c_k > 0.
"""

from patstat import Permutation, c_k, cauchy_gap, s_sum, vandermonde_check, variance_polynomial
from patstat.asymptotics import easy_term_coefficient

print(f"{'k':>2} {'S_k':>10} {'vandermonde':>12} {'gap':>10}  c_k")
for k in range(2, 9):
    lhs, rhs = vandermonde_check(k)
    print(f"{k:>2} {s_sum(k):>10} {rhs:>12} {str(cauchy_gap(k)):>10}  {c_k(k)}")

print("easy term, k=3:", easy_term_coefficient(3))

# c_k is the leading variance coefficient only for monotone q
for q in [(1, 2, 3), (1, 3, 2), (2, 3, 1)]:
    print(q, variance_polynomial(Permutation(q)).leading_coefficient(), "vs c_3 =", c_k(3))
