"""Exact mean and variance of the occurrence count of a pattern.

Write X = sum of indicators X_I over k-subsets I of positions of a uniform
random permutation of length n.  Expanding Var(X) over ordered pairs (I, J):

* I == J contributes E(X_I) - E(X_I)^2 = 1/k! - 1/k!^2 per subset;
* disjoint I, J are independent and contribute exactly 0;
* |I & J| == j with 1 <= j <= k-1 depends only on the relative layout of
  I and J inside their union of u = 2k - j positions (an overlap scheme s),
  contributing A(s)/u! - 1/k!^2, where A(s) counts the words of length u
  that show q on both I and J.

Each union window is chosen in C(n, u) ways, so

    Var(X) = (1/k! - 1/k!^2) C(n, k) + sum_j T_j C(n, 2k - j)

with T_j = sum over schemes of overlap j of (A(s)/u! - 1/k!^2).  The
coefficients do not depend on n, which is why the polynomial is kept in
this binomial basis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Any

import numpy as np

from . import _json, _poly
from .counting import count_naive
from .perm import Pattern, Permutation

__all__ = [
    "DEFAULT_MAX_K", "BRUTE_FORCE_MAX_N", "PatternTooLong",
    "OverlapScheme", "VariancePolynomial", "MomentReport",
    "expectation", "enumerate_schemes", "joint_count", "variance_polynomial",
    "exact_variance", "exact_moments", "brute_force_moments", "disjoint_pair_sum",
]

DEFAULT_MAX_K = 5
BRUTE_FORCE_MAX_N = 8


class PatternTooLong(ValueError):
    """The requested computation would enumerate too many words."""


@dataclass(frozen=True)
class OverlapScheme:
    """Relative layout of two k-subsets inside their union window {1..u}.

    ``first`` and ``second`` are 1-based sorted tuples.  Pairs are ordered;
    ``first == second`` (overlap k) is accepted as the degenerate diagonal.
    """

    union_size: int
    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.first)
        if len(self.second) != k or k == 0:
            raise ValueError("both subsets must be non-empty and of equal size")
        if set(self.first) | set(self.second) != set(range(1, self.union_size + 1)):
            raise ValueError(f"subsets must cover 1..{self.union_size} exactly")
        if list(self.first) != sorted(set(self.first)) or list(self.second) != sorted(set(self.second)):
            raise ValueError("subsets must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.first)

    @property
    def overlap(self) -> int:
        return len(set(self.first) & set(self.second))


def expectation(n: int, k: int) -> Fraction:
    """E(X) = C(n, k)/k!: each k-subset shows q with probability 1/k!."""
    if k < 1:
        raise ValueError(f"pattern length must be at least 1, got {k}")
    return Fraction(comb(n, k), factorial(k))


def enumerate_schemes(k: int, j: int) -> list[OverlapScheme]:
    """All ordered overlap schemes of two k-subsets sharing exactly j positions.

    ``first`` ranges over k-subsets of {1..2k-j}; ``second`` must hold the
    k-j positions ``first`` misses plus j of the positions it has, so there
    are C(2k-j, k) * C(k, j) schemes.
    """
    if not 1 <= j <= k - 1:
        raise ValueError(f"overlap must be in 1..{k - 1} for k={k}, got {j}")
    u = 2 * k - j
    window = range(1, u + 1)
    schemes = []
    for first in combinations(window, k):
        rest = tuple(x for x in window if x not in first)
        for shared in combinations(first, j):
            second = tuple(sorted(rest + shared))
            schemes.append(OverlapScheme(u, first, second))
    return schemes


@lru_cache(maxsize=None)
def _all_words(u: int) -> np.ndarray:
    """Every permutation of 0..u-1 as rows of a read-only int8 array."""
    words = np.array(list(permutations(range(u))), dtype=np.int8).reshape(-1, u)
    words.setflags(write=False)
    return words


def _shows_pattern(words: np.ndarray, positions: tuple[int, ...], q: Pattern) -> np.ndarray:
    # read the positions in increasing order of q's ranks; the word must increase
    by_rank = [positions[i] - 1 for i in sorted(range(len(q)), key=q.values.__getitem__)]
    mask = np.ones(words.shape[0], dtype=bool)
    for a, b in zip(by_rank, by_rank[1:]):
        mask &= words[:, a] < words[:, b]
    return mask


def joint_count(s: OverlapScheme, q: Pattern) -> int:
    """A(s): words of length u showing ``q`` on both subsets of the scheme."""
    if s.k != len(q):
        raise ValueError(f"scheme has k={s.k} but pattern has length {len(q)}")
    words = _all_words(s.union_size)
    both = _shows_pattern(words, s.first, q) & _shows_pattern(words, s.second, q)
    return int(np.count_nonzero(both))


@dataclass(frozen=True)
class VariancePolynomial:
    """Var(X_{n,q}) = diag_coeff*C(n,k) + sum_j overlap_coeffs[j-1]*C(n, 2k-j)."""

    pattern: Pattern
    diag_coeff: Fraction
    overlap_coeffs: tuple[Fraction, ...]

    @property
    def k(self) -> int:
        return len(self.pattern)

    def evaluate(self, n: int) -> Fraction:
        k = self.k
        total = self.diag_coeff * comb(n, k)
        for j, t in enumerate(self.overlap_coeffs, start=1):
            total += t * comb(n, 2 * k - j)
        return total

    def power_basis(self) -> list[Fraction]:
        """Coefficients in powers of n, lowest first (trailing zeros dropped)."""
        k = self.k
        poly = _poly.scale(_poly.binomial_poly(k), self.diag_coeff)
        for j, t in enumerate(self.overlap_coeffs, start=1):
            poly = _poly.add(poly, _poly.scale(_poly.binomial_poly(2 * k - j), t))
        return poly

    def leading_coefficient(self) -> Fraction:
        """Coefficient of n^(2k-1)."""
        return _poly.coefficient(self.power_basis(), 2 * self.k - 1)

    def to_json(self) -> dict[str, Any]:
        k = self.k
        return {
            "schema": _json.SCHEMA,
            "pattern": list(self.pattern.values),
            "basis": [f"C(n,{k})"] + [f"C(n,{2 * k - j})" for j in range(1, k)],
            "diag_coeff": _json.rational(self.diag_coeff),
            "overlap_coeffs": [
                {"j": j, "union_size": 2 * k - j, "coeff": _json.rational(t)}
                for j, t in enumerate(self.overlap_coeffs, start=1)
            ],
            "leading_coeff": _json.rational(self.leading_coefficient()),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> VariancePolynomial:
        return cls(
            Permutation(tuple(obj["pattern"])),
            _json.parse_rational(obj["diag_coeff"]),
            tuple(_json.parse_rational(c["coeff"]) for c in obj["overlap_coeffs"]),
        )


@dataclass(frozen=True)
class MomentReport:
    n: int
    pattern: Pattern
    mean: Fraction
    variance: Fraction

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": _json.SCHEMA,
            "n": self.n,
            "pattern": list(self.pattern.values),
            "mean": _json.rational(self.mean),
            "variance": _json.rational(self.variance),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> MomentReport:
        return cls(
            obj["n"], Permutation(tuple(obj["pattern"])),
            _json.parse_rational(obj["mean"]), _json.parse_rational(obj["variance"]),
        )


def _check_k(k: int, max_k: int) -> None:
    if max_k > DEFAULT_MAX_K:
        warnings.warn(
            f"raising the exact-moment cap to k={max_k}; joint counts enumerate "
            f"up to {2 * max_k - 1}! words per scheme", RuntimeWarning, stacklevel=3)
    if k > max_k:
        raise PatternTooLong(f"pattern length {k} exceeds the exact-moment cap {max_k}")


@lru_cache(maxsize=None)
def _variance_polynomial(q: Pattern) -> VariancePolynomial:
    k = len(q)
    if k == 0:
        raise ValueError("pattern must be non-empty")
    inv = Fraction(1, factorial(k))
    coeffs = []
    for j in range(1, k):
        u = 2 * k - j
        words = _all_words(u)
        masks: dict[tuple[int, ...], np.ndarray] = {}

        def mask(positions):
            if positions not in masks:
                masks[positions] = _shows_pattern(words, positions, q)
            return masks[positions]

        hits = 0
        schemes = enumerate_schemes(k, j)
        for s in schemes:
            hits += int(np.count_nonzero(mask(s.first) & mask(s.second)))
        coeffs.append(Fraction(hits, factorial(u)) - len(schemes) * inv * inv)
    return VariancePolynomial(q, inv - inv * inv, tuple(coeffs))


def variance_polynomial(q: Pattern, *, max_k: int = DEFAULT_MAX_K) -> VariancePolynomial:
    """Exact variance of the occurrence count of ``q`` as a polynomial in n.

    >>> from patstat.perm import Permutation
    >>> vp = variance_polynomial(Permutation((1, 2)))
    >>> vp.diag_coeff, vp.overlap_coeffs
    (Fraction(1, 4), (Fraction(1, 6),))
    """
    _check_k(len(q), max_k)
    return _variance_polynomial(q)


def exact_variance(n: int, q: Pattern, *, max_k: int = DEFAULT_MAX_K) -> Fraction:
    return variance_polynomial(q, max_k=max_k).evaluate(n)


def exact_moments(n: int, q: Pattern, *, max_k: int = DEFAULT_MAX_K) -> MomentReport:
    return MomentReport(n, q, expectation(n, len(q)), exact_variance(n, q, max_k=max_k))


def brute_force_moments(n: int, q: Pattern, *, max_n: int = BRUTE_FORCE_MAX_N) -> MomentReport:
    """Mean and variance by counting ``q`` in every permutation of length n."""
    if n > max_n:
        raise ValueError(f"brute force over S_n is limited to n <= {max_n} (got n={n})")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    s1 = s2 = 0
    for w in permutations(range(1, n + 1)):
        c = count_naive(Permutation._trusted(w), q).count
        s1 += c
        s2 += c * c
    total = factorial(n)
    mean = Fraction(s1, total)
    return MomentReport(n, q, mean, Fraction(s2, total) - mean * mean)


def disjoint_pair_sum(n: int, k: int) -> Fraction:
    """Sum of E(X_I X_J) over ordered disjoint pairs: C(n,k) C(n-k,k)/k!^2."""
    return Fraction(comb(n, k) * comb(max(n - k, 0), k), factorial(k) ** 2)
