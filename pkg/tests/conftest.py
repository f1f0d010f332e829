from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import strategies as st

from patstat.perm import Permutation


def brute_count(p, q):
    """Occurrences by pairwise comparison of every k-subset (independent of count_naive)."""
    k = len(q)
    total = 0
    for idx in combinations(range(len(p)), k):
        w = [p[i] for i in idx]
        if all((w[a] < w[b]) == (q[a] < q[b]) for a in range(k) for b in range(a + 1, k)):
            total += 1
    return total


def brute_variance(n, q):
    s1 = s2 = 0
    for w in permutations(range(n)):
        c = brute_count(w, q)
        s1 += c
        s2 += c * c
    mean = Fraction(s1, factorial(n))
    return Fraction(s2, factorial(n)) - mean * mean


@st.composite
def perms(draw, min_size=0, max_size=10):
    n = draw(st.integers(min_size, max_size))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@pytest.fixture
def P():
    return lambda *v: Permutation(tuple(v))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
