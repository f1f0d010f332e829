from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from patstat.perm import (DuplicateRank, NonPositiveRank, Permutation, PositionError, RankGap,
                          child_seed_sequence, format_permutation, make_permutation,
                          parse_permutation, random_permutation, read_permutations,
                          remove_entry, restrict, standardize, symmetry)

from conftest import perms


def test_make_permutation_round_trip(P):
    assert make_permutation([3, 1, 2]) == P(3, 1, 2)
    assert len(make_permutation([])) == 0


@pytest.mark.parametrize("values, exc, index", [
    ([1, 1, 2], DuplicateRank, "index 2"),
    ([0, 1], NonPositiveRank, "index 1"),
    ([2, -1], NonPositiveRank, "index 2"),
    ([1, 4, 2], RankGap, "index 2"),
])
def test_make_permutation_rejects(values, exc, index):
    with pytest.raises(exc, match=index):
        make_permutation(values)


def test_make_permutation_rejects_non_integers():
    with pytest.raises(ValueError):
        make_permutation([1.0, 2])
    with pytest.raises(ValueError):
        make_permutation([True])


@pytest.mark.parametrize("word, expected", [
    ([4, 7, 2], (2, 3, 1)),
    ([3, 5, 1, 4, 2], (3, 5, 1, 4, 2)),
    ([10], (1,)),
    ([], ()),
])
def test_standardize(word, expected):
    assert standardize(word).values == expected


def test_standardize_rejects_duplicates():
    with pytest.raises(DuplicateRank):
        standardize([5, 2, 5])


@given(st.lists(st.integers(-1000, 1000), unique=True, max_size=12))
def test_standardize_idempotent(word):
    once = standardize(word)
    assert standardize(once.values) == once


@given(perms(max_size=9), st.data())
def test_restriction_standardizes_to_pattern(p, data):
    positions = sorted(data.draw(st.sets(st.integers(1, max(len(p), 1)), max_size=len(p))))
    positions = [i for i in positions if i <= len(p)]
    q = standardize(restrict(p, positions))
    assert len(q) == len(positions)
    assert sorted(q.values) == list(range(1, len(q) + 1))


def test_restrict(P):
    assert restrict(P(3, 5, 1, 4, 2), [1, 3, 5]) == (3, 1, 2)
    assert restrict(P(1, 2, 3), []) == ()
    assert restrict(P(2, 1), [1, 2]) == (2, 1)
    with pytest.raises(PositionError):
        restrict(P(2, 1), [3])
    with pytest.raises(PositionError):
        restrict(P(2, 1, 3), [2, 1])


def test_remove_entry(P):
    assert remove_entry(P(3, 5, 1, 4, 2), 3) == standardize([5, 1, 4, 2]) == P(4, 1, 3, 2)
    assert remove_entry(P(1, 2), 1) == P(1)
    assert remove_entry(P(2, 1), 2) == P(1)
    with pytest.raises(ValueError):
        remove_entry(P(2, 1), 3)


def test_random_permutation_small_cases():
    assert random_permutation(0, seed=1).values == ()
    assert random_permutation(1, seed=1).values == (1,)


def test_random_permutation_is_uniform_on_s3():
    freq = Counter(random_permutation(3, seed=2026, stream=i).values for i in range(60000))
    assert len(freq) == 6
    for c in freq.values():
        assert abs(c - 10000) <= 400


def test_random_permutation_reproducible():
    a = [random_permutation(50, seed=7, stream=s) for s in range(5)]
    b = [random_permutation(50, seed=7, stream=s) for s in range(5)]
    assert a == b
    assert len(set(a)) == 5
    assert random_permutation(50, seed=7, stream=0) != random_permutation(50, seed=8, stream=0)


def test_child_seed_matches_spawn():
    spawned = np.random.SeedSequence(99).spawn(4)[3]
    assert child_seed_sequence(99, 3).generate_state(4).tolist() == spawned.generate_state(4).tolist()
    with pytest.raises(ValueError):
        child_seed_sequence(-1, 0)
    with pytest.raises(ValueError):
        child_seed_sequence(2**64, 0)


def test_symmetries(P):
    assert symmetry(P(1, 2, 3), "reverse") == P(3, 2, 1)
    assert symmetry(P(1, 3, 2), "complement") == P(3, 1, 2)
    assert symmetry(P(2, 3, 1), "inverse") == P(3, 1, 2)
    with pytest.raises(ValueError):
        symmetry(P(1), "rotate")


@given(perms(max_size=12))
def test_symmetries_are_involutions(p):
    for which in ("reverse", "complement", "inverse"):
        assert symmetry(symmetry(p, which), which) == p
    inv = symmetry(p, "inverse")
    assert [p[inv[i] - 1] for i in range(len(p))] == list(range(1, len(p) + 1))


def test_text_format(P):
    assert format_permutation(P(3, 5, 1, 4, 2)) == "3 5 1 4 2"
    assert parse_permutation("3 5 1 4 2") == P(3, 5, 1, 4, 2)
    lines = ["2 1", "", "1 2 3"]
    assert [(i, p.values) for i, p in read_permutations(lines)] == [(1, (2, 1)), (3, (1, 2, 3))]
    with pytest.raises(ValueError, match="line 2"):
        list(read_permutations(["1", "1 1"]))
    with pytest.raises(ValueError):
        parse_permutation("1 x")
