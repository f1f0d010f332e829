"""Occurrences of permutation patterns in random permutations.

Exact counting, exact mean and variance of the occurrence count, the
constants of the asymptotic-normality argument, and seeded Monte Carlo
checks of the normal limit.
"""

__version__ = "0.1.0"

from .asymptotics import (binomial, c_k, cauchy_gap, delta_bound, easy_term_coefficient,
                          janson_assess, janson_sweep, one_overlap_probability, s_sum,
                          vandermonde_check)
from .counting import CountMethod, CountResult, contains, count_fast, count_naive
from .moments import (MomentReport, OverlapScheme, VariancePolynomial, brute_force_moments,
                      disjoint_pair_sum, enumerate_schemes, exact_moments, exact_variance,
                      expectation, joint_count, variance_polynomial)
from .montecarlo import SimConfig, SimSummary, ks_statistic, sample_counts, simulate, standardize_counts
from .perm import (Pattern, Permutation, make_permutation, random_permutation, remove_entry,
                   restrict, standardize, symmetry)
