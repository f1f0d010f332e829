from itertools import permutations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from patstat.counting import CountMethod, CountPlan, contains, count_fast, count_naive
from patstat.perm import Permutation, random_permutation, symmetry

from conftest import brute_count, perms

ALL_UP_TO_4 = [Permutation(w) for k in range(1, 5) for w in permutations(range(1, k + 1))]


@pytest.mark.parametrize("p, q, expected", [
    ((2, 3, 1), (2, 1), 2),
    ((1, 2, 3, 4, 5), (1, 2), 10),
    ((1, 4, 3, 2), (1, 3, 2), 3),
    ((2, 3, 1), (1, 2), 1),
    ((1, 2), (1, 2, 3), 0),
])
def test_count_naive_examples(p, q, expected):
    assert count_naive(Permutation(p), Permutation(q)).count == expected
    assert count_fast(Permutation(p), Permutation(q)).count == expected


def test_count_fast_examples(P):
    ident = Permutation(tuple(range(1, 101)))
    r = count_fast(ident, P(1, 2, 3))
    assert r.count == 161700 and r.method is CountMethod.MONOTONE_DP
    assert count_fast(P(5, 4, 3, 2, 1), P(1, 2)).count == 0
    p = random_permutation(60, seed=11)
    q = P(2, 4, 1, 3)
    r = count_fast(p, q)
    assert r.method is CountMethod.PRUNED
    assert r.count == count_naive(p, q).count == brute_count(p.values, q.values)


@pytest.mark.parametrize("q, method", [
    ((1,), CountMethod.MONOTONE_DP),
    ((2, 1), CountMethod.MONOTONE_DP),
    ((4, 3, 2, 1), CountMethod.MONOTONE_DP),
    ((2, 3, 1), CountMethod.PREFIX_SUFFIX),
    ((1, 3, 2, 4), CountMethod.PRUNED),
])
def test_dispatch(q, method):
    assert CountPlan(Permutation(q)).method is method


def test_empty_and_singleton_patterns(P):
    p = random_permutation(30, seed=3)
    assert count_naive(p, P()).count == count_fast(p, P()).count == 1
    assert count_naive(p, P(1)).count == count_fast(p, P(1)).count == 30
    assert count_fast(P(), P(1)).count == 0


def test_oracle_equivalence_seeded():
    rng = np.random.default_rng(20261017)
    for trial in range(200):
        n = int(rng.integers(0, 11))
        k = int(rng.integers(1, 6))
        p = random_permutation(n, seed=1, stream=trial)
        q = Permutation(tuple(int(v) for v in rng.permutation(k) + 1))
        assert count_fast(p, q).count == count_naive(p, q).count, (p, q)


@given(perms(max_size=9))
def test_all_small_patterns_match_brute_force(p):
    for q in ALL_UP_TO_4:
        expected = brute_count(p.values, q.values)
        assert count_naive(p, q).count == expected
        assert count_fast(p, q).count == expected


@given(perms(min_size=1, max_size=9), st.sampled_from(ALL_UP_TO_4))
def test_symmetry_equivariance(p, q):
    c = count_fast(p, q).count
    for which in ("reverse", "complement", "inverse"):
        assert count_fast(symmetry(p, which), symmetry(q, which)).count == c


@given(perms(max_size=40))
def test_length3_sum_rule(p):
    total = sum(count_fast(p, Permutation(w)).count for w in permutations((1, 2, 3)))
    assert total == comb(len(p), 3)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_fast_paths_agree_on_medium_permutations(stream):
    p = random_permutation(80, seed=5, stream=stream)
    for q in [(1, 2, 3), (1, 3, 2), (3, 1, 2), (2, 1, 3), (2, 3, 1), (3, 2, 1)]:
        q = Permutation(q)
        pruned = CountPlan(q)._pruned(p.array, 0)
        assert count_fast(p, q).count == pruned


def test_large_counts_use_exact_fallbacks(monkeypatch):
    import patstat.counting as counting
    p = random_permutation(40, seed=9)
    q_mono, q_gen = Permutation((1, 2, 3, 4)), Permutation((2, 4, 1, 3))
    expected = [count_fast(p, q_mono).count, count_fast(p, q_gen).count]
    monkeypatch.setattr(counting, "INT64_SAFE", 1)
    assert [CountPlan(q_mono).count_array(p.array), CountPlan(q_gen).count_array(p.array)] == expected


def test_scan_path_without_table(monkeypatch):
    import patstat.counting as counting
    p = random_permutation(50, seed=4)
    q = Permutation((3, 1, 4, 2))
    expected = count_naive(p, q).count
    monkeypatch.setattr(counting, "TABLE_MAX_N", 10)
    assert CountPlan(q).count_array(p.array) == expected


def test_monotone_count_exceeding_int64():
    n = 200
    ident = Permutation(tuple(range(1, n + 1)))
    assert count_fast(ident, Permutation(tuple(range(1, 31)))).count == comb(n, 30)


def test_contains(P):
    assert contains(P(3, 5, 1, 4, 2), P(3, 5, 1, 4, 2))
    assert not contains(P(1, 2, 3), P(3, 2, 1))
    assert not contains(P(2, 4, 1, 3), P(1, 2, 3))
    assert contains(P(2, 4, 1, 3), P())
    assert not contains(P(1), P(1, 2))


@given(perms(max_size=8), st.sampled_from(ALL_UP_TO_4))
def test_contains_agrees_with_count(p, q):
    assert contains(p, q) == (count_naive(p, q).count > 0)
