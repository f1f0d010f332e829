"""Closed-form constants behind the normality argument.

Everything here is exact integer/rational arithmetic except the Janson
ratio sweep, which needs logarithms for the slope fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Literal

import numpy as np

from . import _json, _poly
from .moments import exact_variance
from .perm import Pattern

__all__ = [
    "binomial", "delta_bound", "delta_bound_by_overlap", "one_overlap_probability",
    "one_overlap_probability_simplified", "s_sum", "vandermonde_check", "cauchy_gap",
    "c_k", "easy_term_coefficient", "easy_term_polynomial",
    "JansonAssessment", "JansonSweep", "janson_assess", "janson_sweep", "identity_row",
]


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def delta_bound(n: int, k: int) -> int:
    """Number of k-subsets of {1..n} meeting a fixed k-subset, other than itself.

    This bounds the maximum degree of the dependency graph joining
    overlapping position sets: C(n,k) - C(n-k,k) - 1.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    return binomial(n, k) - binomial(n - k, k) - 1


def delta_bound_by_overlap(n: int, k: int) -> int:
    """The same bound summed by overlap size: sum_{j=1}^{k-1} C(k,j) C(n-k,k-j)."""
    if not 1 <= k <= n:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    return sum(binomial(k, j) * binomial(n - k, k - j) for j in range(1, k))


def _check_ab(k: int, a: int, b: int) -> None:
    if k < 1 or not (1 <= a <= k and 1 <= b <= k):
        raise ValueError(f"need 1 <= a, b <= k, got k={k}, a={a}, b={b}")


def one_overlap_probability_simplified(k: int, a: int, b: int) -> Fraction:
    _check_ab(k, a, b)
    return Fraction(comb(a + b - 2, a - 1) * comb(2 * k - a - b, k - a), factorial(2 * k - 1))


def one_overlap_probability(k: int, a: int, b: int) -> Fraction:
    """P(both occurrences show q) when two k-subsets share one entry x.

    x is the a-th smallest of the first occurrence and the b-th smallest of
    the second.  Product of three independent events: x has rank a+b-1 in
    the union (1/(2k-1)); the a+b-2 entries forced below x sit below the
    2k-a-b entries forced above it (1/C(2k-2, a+b-2)); and each of the four
    groups is internally ordered like the matching part of q.
    """
    _check_ab(k, a, b)
    product = (Fraction(1, 2 * k - 1)
               * Fraction(1, comb(2 * k - 2, a + b - 2))
               * Fraction(1, factorial(a - 1) * factorial(b - 1)
                          * factorial(k - a) * factorial(k - b)))
    simplified = one_overlap_probability_simplified(k, a, b)
    if product != simplified:
        raise ArithmeticError(f"product form {product} != simplified form {simplified} at k={k}, a={a}, b={b}")
    return product


def _weights(k: int):
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            yield a, b, comb(a + b - 2, a - 1) * comb(2 * k - a - b, k - a)


def s_sum(k: int) -> int:
    """sum over 1 <= a, b <= k of C(a+b-2, a-1)^2 C(2k-a-b, k-a)^2."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return sum(w * w for _, _, w in _weights(k))


def vandermonde_check(k: int) -> tuple[int, int]:
    """(sum_{a,b} C(a+b-2,a-1) C(2k-a-b,k-a), (2k-1) C(2k-2,k-1)); equal by Vandermonde."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    lhs = sum(w for _, _, w in _weights(k))
    return lhs, (2 * k - 1) * comb(2 * k - 2, k - 1)


def cauchy_gap(k: int) -> Fraction:
    """S_k minus its Cauchy-Schwarz lower bound (sum of weights)^2 / k^2.

    Strictly positive because the k^2 weights are not all equal for k >= 2.
    """
    if k < 2:
        raise ValueError(f"the weights are all equal for k < 2 (got k={k})")
    _, total = vandermonde_check(k)
    return s_sum(k) - Fraction(total * total, k * k)


def c_k(k: int) -> Fraction:
    """S_k/(2k-1)!^2 - k^2/k!^4: the n^(2k-1) coefficient of Var(X_{n,q}) for monotone q."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return Fraction(s_sum(k), factorial(2 * k - 1) ** 2) - Fraction(k * k, factorial(k) ** 4)


def easy_term_polynomial(k: int) -> list[Fraction]:
    """C(n,k) C(n-k,k)/k!^2 - C(n,k)^2/k!^2 expanded in powers of n."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    first = _poly.binomial_poly(k)
    disjoint = _poly.mul(first, _poly.binomial_poly(k, shift=k))
    square = _poly.mul(first, first)
    diff = _poly.add(disjoint, _poly.scale(square, -1))
    return _poly.scale(diff, Fraction(1, factorial(k) ** 2))


def easy_term_coefficient(k: int) -> Fraction:
    """Coefficient of n^(2k-1) in :func:`easy_term_polynomial`; equals -k^2/k!^4."""
    return _poly.coefficient(easy_term_polynomial(k), 2 * k - 1)


def identity_row(k: int) -> dict[str, Any]:
    lhs, rhs = vandermonde_check(k)
    gap = cauchy_gap(k)
    ck = c_k(k)
    easy = easy_term_coefficient(k)
    return {
        "k": k,
        "S_k": str(s_sum(k)),
        "vandermonde_lhs": str(lhs),
        "vandermonde_rhs": str(rhs),
        "cauchy_gap": _json.rational(gap),
        "c_k": _json.rational(ck),
        "easy_term_coeff": _json.rational(easy),
        "ok": lhs == rhs and gap > 0 and ck > 0 and easy == Fraction(-k * k, factorial(k) ** 4),
    }


def _log(x: int | Fraction) -> float:
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class JansonAssessment:
    """Terms of N * Delta^(m-1) * (A/sigma)^m for the pattern-count indicators."""

    n: int
    k: int
    m: int
    N_n: int
    delta_n: int
    sigma_n: float
    A_n: int = 1
    sigma_sq: Fraction | None = None
    ratio: float = field(default=math.nan)
    ratio_exact: Fraction | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n, "k": self.k, "m": self.m,
            "N_n": str(self.N_n), "delta_n": str(self.delta_n), "A_n": self.A_n,
            "sigma_n": self.sigma_n,
            "sigma_sq": None if self.sigma_sq is None else _json.rational(self.sigma_sq),
            "ratio": self.ratio,
            "ratio_exact": None if self.ratio_exact is None else _json.rational(self.ratio_exact),
        }


SigmaSource = Literal["exact", "scaling"]


def janson_assess(n: int, k: int, m: int, sigma_source: SigmaSource = "exact",
                  q: Pattern | None = None, scale: float | None = None) -> JansonAssessment:
    """Evaluate the Janson ratio at one n.

    ``sigma_source="exact"`` takes sigma from the exact variance of ``q``;
    ``"scaling"`` uses ``scale * n^(k-1/2)`` with ``scale`` defaulting to
    sqrt(c_k).  The exact rational ratio is only available when m is even
    and sigma is exact.
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    N = binomial(n, k)
    delta = delta_bound(n, k)
    if sigma_source == "exact":
        if q is None or len(q) != k:
            raise ValueError("exact sigma needs a pattern q of length k")
        var = exact_variance(n, q)
        if var <= 0:
            raise ValueError(f"variance is zero for q={q} at n={n}; the ratio is undefined")
        log_sigma = 0.5 * _log(var)
        ratio_exact = Fraction(N * delta ** (m - 1)) / var ** (m // 2) if m % 2 == 0 else None
        sigma_sq: Fraction | None = var
    elif sigma_source == "scaling":
        c = math.sqrt(c_k(k)) if scale is None else scale
        if c <= 0:
            raise ValueError(f"scaling constant must be positive (k={k} gives {c})")
        log_sigma = math.log(c) + (k - 0.5) * math.log(n)
        ratio_exact, sigma_sq = None, None
    else:
        raise ValueError(f"unknown sigma source {sigma_source!r}")
    log_ratio = _log(N) + (m - 1) * _log(delta) - m * log_sigma
    return JansonAssessment(n, k, m, N, delta, math.exp(log_sigma), 1, sigma_sq,
                            math.exp(log_ratio), ratio_exact)


@dataclass(frozen=True)
class JansonSweep:
    m: int
    points: tuple[JansonAssessment, ...]
    slope: float
    exponent: float

    @property
    def vanishing(self) -> bool:
        """Whether the ratio tends to 0, i.e. the exponent 1 - m/2 is negative."""
        return self.exponent < 0

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": _json.SCHEMA,
            "m": self.m,
            "points": [{"n": a.n, "ratio": a.ratio} for a in self.points],
            "fitted_slope": self.slope,
            "expected_exponent": self.exponent,
            "vanishing": self.vanishing,
        }


def janson_sweep(k: int, m: int, n_start: int = 100, doublings: int = 6,
                 sigma_source: SigmaSource = "exact", q: Pattern | None = None,
                 scale: float | None = None) -> JansonSweep:
    """Ratio at n_start * 2^i for i = 0..doublings and its least-squares log-log slope."""
    if doublings < 1:
        raise ValueError("need at least one doubling to fit a slope")
    points = tuple(janson_assess(n_start * 2**i, k, m, sigma_source, q, scale)
                   for i in range(doublings + 1))
    x = np.log([a.n for a in points])
    y = np.log([a.ratio for a in points])
    slope = float(np.polyfit(x, y, 1)[0])
    return JansonSweep(m, points, slope, 1 - m / 2)
