"""Counting occurrences of a pattern in a permutation.

``count_naive`` is the definition: enumerate every k-subset of positions and
test order-isomorphism.  ``count_fast`` dispatches on the pattern:

* monotone patterns use a Fenwick-tree dynamic program, O(n k log n);
* the four non-monotone patterns of length 3 are recovered from per-entry
  "smaller before / greater after" counts;
* everything else goes through a depth-first search over positions that
  prunes branches which cannot be completed.

Counts are exact Python integers.  The compiled kernels work in ``int64``
and are only used when C(n, k) fits; otherwise an equivalent pure-Python
path runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from operator import itemgetter

import numpy as np

from . import _kernels
from .perm import Pattern, Permutation

__all__ = ["CountMethod", "CountResult", "CountPlan", "count_naive", "count_fast", "contains"]

INT64_SAFE = 2**62
# O(n^2) int32 lookup table for the last DFS level; above this, scan instead
TABLE_MAX_N = 3000


class CountMethod(str, enum.Enum):
    NAIVE = "naive"
    MONOTONE_DP = "monotone_dp"
    PREFIX_SUFFIX = "prefix_suffix"
    PRUNED = "pruned"


@dataclass(frozen=True)
class CountResult:
    count: int
    method: CountMethod

    def __int__(self) -> int:
        return self.count


def count_naive(p: Permutation, q: Pattern) -> CountResult:
    """Count k-subsets of positions whose entries are order-isomorphic to ``q``."""
    k, n = len(q), len(p)
    if k == 0:
        return CountResult(1, CountMethod.NAIVE)
    if k > n:
        return CountResult(0, CountMethod.NAIVE)
    if k == 1:
        return CountResult(n, CountMethod.NAIVE)
    # w matches q iff reading w in the order of q's ranks gives an increasing word
    by_rank = itemgetter(*sorted(range(k), key=q.values.__getitem__))
    total = sum(1 for w in combinations(p.values, k) if list(by_rank(w)) == sorted(w))
    return CountResult(total, CountMethod.NAIVE)


def _exact_sum(arr: np.ndarray) -> int:
    """Sum of a non-negative int64 array without overflow."""
    if arr.size == 0:
        return 0
    top = int(arr.max())
    if top == 0:
        return 0
    block = max(1, (2**63 - 1) // top)
    if block >= arr.size:
        return int(arr.sum())
    return sum(int(arr[i:i + block].sum()) for i in range(0, arr.size, block))


def _pairs(a: np.ndarray) -> np.ndarray:
    return a * (a - 1) // 2


def _length3_counts(p: np.ndarray) -> dict[tuple[int, ...], int]:
    """Occurrence counts of all six length-3 patterns.

    With L = smaller-before, G = greater-after, S = smaller-after for each
    entry, taken as the appropriate extreme of a triple:
    123 = sum L*G, 321 = sum (greater-before)*S,
    132 + 123 = sum C(G, 2), 213 + 123 = sum C(L, 2),
    312 + 321 = sum C(S, 2), 132 + 231 = sum L*S.
    """
    n = p.shape[0]
    j = np.arange(n, dtype=np.int64)
    smaller_before = _kernels.smaller_before(p)
    greater_before = j - smaller_before
    smaller_after = (p - 1) - smaller_before
    greater_after = (n - p) - greater_before
    c123 = _exact_sum(smaller_before * greater_after)
    c321 = _exact_sum(greater_before * smaller_after)
    c132 = _exact_sum(_pairs(greater_after)) - c123
    c213 = _exact_sum(_pairs(smaller_before)) - c123
    c312 = _exact_sum(_pairs(smaller_after)) - c321
    c231 = _exact_sum(smaller_before * smaller_after) - c132
    return {(1, 2, 3): c123, (3, 2, 1): c321, (1, 3, 2): c132,
            (2, 1, 3): c213, (3, 1, 2): c312, (2, 3, 1): c231}


class _Fenwick:
    """Prefix sums over 1..size with arbitrary-precision values."""

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, index: int, value: int) -> None:
        while index <= self.size:
            self.tree[index] += value
            index += index & -index

    def prefix(self, index: int) -> int:
        s = 0
        while index > 0:
            s += self.tree[index]
            index -= index & -index
        return s


def _increasing_count_py(values: tuple[int, ...], k: int) -> int:
    n = len(values)
    ways = [1] * n
    for _ in range(k - 1):
        tree = _Fenwick(n)
        nxt = []
        for v, w in zip(values, ways):
            nxt.append(tree.prefix(v - 1))
            tree.add(v, w)
        ways = nxt
    return sum(ways)


def _pruned_count_py(values: tuple[int, ...], lo_idx, hi_idx, stop_at: int = 0) -> int:
    """Pure-Python twin of ``_kernels.pruned_count`` for counts beyond int64."""
    n, k = len(values), len(lo_idx)
    chosen = [0] * k
    total = 0

    def descend(d: int, start: int) -> bool:
        nonlocal total
        lo = values[chosen[lo_idx[d]]] if lo_idx[d] >= 0 else 0
        hi = values[chosen[hi_idx[d]]] if hi_idx[d] >= 0 else n + 1
        for i in range(start, n - (k - d) + 1):
            if lo < values[i] < hi:
                if d == k - 1:
                    total += 1
                    if stop_at and total >= stop_at:
                        return True
                else:
                    chosen[d] = i
                    if descend(d + 1, i + 1):
                        return True
        return False

    descend(0, 0)
    return total


class CountPlan:
    """Precomputed dispatch for one pattern, reusable across many permutations."""

    def __init__(self, q: Pattern):
        self.q = q
        self.k = k = len(q)
        vals = q.values
        if k <= 1 or vals == tuple(range(1, k + 1)):
            self.method, self._flip = CountMethod.MONOTONE_DP, False
        elif vals == tuple(range(k, 0, -1)):
            self.method, self._flip = CountMethod.MONOTONE_DP, True
        elif k == 3:
            self.method, self._flip = CountMethod.PREFIX_SUFFIX, False
        else:
            self.method, self._flip = CountMethod.PRUNED, False
        lo = np.full(k, -1, np.int64)
        hi = np.full(k, -1, np.int64)
        for d in range(k):
            below = [t for t in range(d) if vals[t] < vals[d]]
            above = [t for t in range(d) if vals[t] > vals[d]]
            if below:
                lo[d] = max(below, key=vals.__getitem__)
            if above:
                hi[d] = min(above, key=vals.__getitem__)
        self._lo, self._hi = lo, hi

    def count_array(self, p: np.ndarray) -> int:
        """Count occurrences in a 1-based ``int64`` rank array (not validated)."""
        n, k = p.shape[0], self.k
        if k == 0:
            return 1
        if k > n:
            return 0
        if self.method is CountMethod.MONOTONE_DP:
            arr = p[::-1] if self._flip else p
            if comb(n, min(k, n // 2)) < INT64_SAFE:
                return int(_kernels.increasing_count(np.ascontiguousarray(arr), k))
            return _increasing_count_py(tuple(arr.tolist()), k)
        if self.method is CountMethod.PREFIX_SUFFIX:
            return _length3_counts(p)[self.q.values]
        return self._pruned(p, 0)

    def _pruned(self, p: np.ndarray, stop_at: int) -> int:
        n = p.shape[0]
        if comb(n, self.k) >= INT64_SAFE:
            return _pruned_count_py(tuple(p.tolist()), self._lo.tolist(), self._hi.tolist(), stop_at)
        if n <= TABLE_MAX_N:
            table = _kernels.suffix_rank_table(p)
            return int(_kernels.pruned_count(p, self._lo, self._hi, table, True, stop_at))
        dummy = np.zeros((1, 1), np.int32)
        return int(_kernels.pruned_count(p, self._lo, self._hi, dummy, False, stop_at))

    def contains_array(self, p: np.ndarray) -> bool:
        if self.k > p.shape[0]:
            return False
        if self.k == 0:
            return True
        return self._pruned(p, 1) > 0


@lru_cache(maxsize=256)
def _plan(q: Pattern) -> CountPlan:
    return CountPlan(q)


def count_fast(p: Permutation, q: Pattern) -> CountResult:
    """Same count as :func:`count_naive`, using the fastest applicable method."""
    plan = _plan(q)
    return CountResult(plan.count_array(p.array), plan.method)


def contains(p: Permutation, q: Pattern) -> bool:
    """Whether ``p`` has at least one occurrence of ``q``; stops at the first."""
    return _plan(q).contains_array(p.array)
