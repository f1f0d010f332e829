"""Compiled inner loops for pattern counting.

All kernels take 1-based rank arrays (``int64``) and return ``int64``
results.  Callers guarantee the true value fits in 63 bits; anything larger
goes through the pure-Python fallbacks in :mod:`patstat.counting`.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def smaller_before(p):
    """For every position j, the number of i < j with p[i] < p[j] (Fenwick tree)."""
    n = p.shape[0]
    tree = np.zeros(n + 1, np.int64)
    out = np.empty(n, np.int64)
    for j in range(n):
        v = p[j]
        s = 0
        i = v - 1
        while i > 0:
            s += tree[i]
            i -= i & -i
        out[j] = s
        i = v
        while i <= n:
            tree[i] += 1
            i += i & -i
    return out


@njit(cache=True)
def weighted_smaller_before(p, w):
    """out[j] = sum of w[i] over i < j with p[i] < p[j]."""
    n = p.shape[0]
    tree = np.zeros(n + 1, np.int64)
    out = np.empty(n, np.int64)
    for j in range(n):
        v = p[j]
        s = 0
        i = v - 1
        while i > 0:
            s += tree[i]
            i -= i & -i
        out[j] = s
        i = v
        while i <= n:
            tree[i] += w[j]
            i += i & -i
    return out


@njit(cache=True)
def increasing_count(p, k):
    """Number of increasing subsequences of length k, via k-1 Fenwick passes."""
    n = p.shape[0]
    if k == 0:
        return 1
    if k > n:
        return 0
    ways = np.ones(n, np.int64)
    for _ in range(k - 1):
        ways = weighted_smaller_before(p, ways)
    total = 0
    for j in range(n):
        total += ways[j]
    return total


@njit(cache=True)
def suffix_rank_table(p):
    """table[i, v] = number of positions t >= i with p[t] < v, for v in 0..n+1."""
    n = p.shape[0]
    table = np.zeros((n + 1, n + 2), np.int32)
    for i in range(n - 1, -1, -1):
        for v in range(n + 2):
            table[i, v] = table[i + 1, v]
        for v in range(p[i] + 1, n + 2):
            table[i, v] += 1
    return table


@njit(cache=True)
def pruned_count(p, lo_idx, hi_idx, table, use_table, stop_at):
    """Depth-first occurrence count, ordered by position.

    Level d picks the position of the d-th pattern entry.  Its value must lie
    strictly between the values already placed for the nearest smaller and
    nearest larger pattern entries (``lo_idx``/``hi_idx``, -1 when absent),
    which is enough for order-isomorphism by transitivity.  The last level is
    counted in O(1) from ``table`` when ``use_table`` is set.  A positive
    ``stop_at`` returns as soon as the running total reaches it.
    """
    n = p.shape[0]
    k = lo_idx.shape[0]
    if k == 0:
        return 1
    if k > n:
        return 0
    pos = np.empty(k, np.int64)
    total = 0
    d = 0
    pos[0] = -1
    while d >= 0:
        if d == k - 1:
            start = pos[d - 1] + 1 if d > 0 else 0
            lo = p[pos[lo_idx[d]]] if lo_idx[d] >= 0 else 0
            hi = p[pos[hi_idx[d]]] if hi_idx[d] >= 0 else n + 1
            if hi > lo + 1:
                if use_table:
                    total += table[start, hi] - table[start, lo + 1]
                else:
                    for t in range(start, n):
                        if lo < p[t] < hi:
                            total += 1
            if stop_at > 0 and total >= stop_at:
                return total
            d -= 1
            continue
        pos[d] += 1
        i = pos[d]
        if i > n - (k - d):
            d -= 1
            continue
        v = p[i]
        if lo_idx[d] >= 0 and v < p[pos[lo_idx[d]]]:
            continue
        if hi_idx[d] >= 0 and v > p[pos[hi_idx[d]]]:
            continue
        d += 1
        pos[d] = i
    return total
