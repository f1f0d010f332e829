"""
Counting pattern occurrences
============================

An occurrence of a pattern q in a permutation p is a set of positions whose
entries appear in the same relative order as q.  Four counting routes exist;
they all agree, and differ only in speed.
"""

import time

from patstat import Permutation, count_fast, count_naive, random_permutation

p = Permutation((2, 3, 1))
print("21 in 231:", count_naive(p, Permutation((2, 1))).count)
print("12 in 231:", count_naive(p, Permutation((1, 2))).count)

# monotone patterns use a Fenwick-tree DP, length 3 a prefix/suffix split,
# everything else a pruned search
p = random_permutation(200, seed=7)
for q in [(1, 2), (1, 2, 3), (1, 3, 2), (2, 4, 1, 3)]:
    q = Permutation(q)
    fast = count_fast(p, q)
    print(f"{str(q):>8}  {fast.count:>10}  via {fast.method.value}")

# the naive route gets slow quickly; compare one k=4 count
q = Permutation((2, 4, 1, 3))
t = time.perf_counter()
naive = count_naive(random_permutation(80, seed=7), q).count
print(f"naive 2413 on n=80: {naive} in {time.perf_counter() - t:.2f}s")

big = random_permutation(10**6, seed=1)
count_fast(random_permutation(10, seed=0), Permutation((1, 2, 3)))
t = time.perf_counter()
print("123 in a random permutation of length 10^6:",
      count_fast(big, Permutation((1, 2, 3))).count,
      f"({time.perf_counter() - t:.2f}s)")
