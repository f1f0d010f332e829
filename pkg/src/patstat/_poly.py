"""Exact univariate polynomials as coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

Poly = list[Fraction]


def trim(a: Sequence[Fraction]) -> Poly:
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    size = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)])


def scale(a: Sequence[Fraction], c) -> Poly:
    return trim([Fraction(c) * x for x in a])


def mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def evaluate(a: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def binomial_poly(m: int, shift: int = 0) -> Poly:
    """C(n - shift, m) as a polynomial in n: (n-shift)(n-shift-1)...(n-shift-m+1)/m!."""
    out: Poly = [Fraction(1)]
    for i in range(m):
        out = mul(out, [Fraction(-(shift + i)), Fraction(1)])
    return scale(out, Fraction(1, factorial(m)))


def coefficient(a: Sequence[Fraction], degree: int) -> Fraction:
    return a[degree] if 0 <= degree < len(a) else Fraction(0)
