"""Permutations and patterns in one-line notation.

Ranks are 1-based everywhere a caller can see them: ``Permutation((3, 1, 2))``
maps position 1 to rank 3.  Patterns use the same type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

__all__ = [
    "Permutation", "Pattern", "PermutationError", "DuplicateRank",
    "NonPositiveRank", "RankGap", "PositionError",
    "make_permutation", "standardize", "restrict", "remove_entry",
    "random_permutation", "child_seed_sequence", "symmetry",
    "reverse", "complement", "inverse",
    "parse_permutation", "format_permutation", "read_permutations",
]

SEED_MAX = 2**64 - 1


class PermutationError(ValueError):
    """Base class for invalid permutation input."""


class DuplicateRank(PermutationError):
    pass


class NonPositiveRank(PermutationError):
    pass


class RankGap(PermutationError):
    """A rank exceeds the length, so some smaller rank is missing."""


class PositionError(PermutationError, IndexError):
    pass


def _validate(values: tuple[int, ...]) -> None:
    n = len(values)
    seen: dict[int, int] = {}
    for idx, v in enumerate(values, start=1):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise PermutationError(f"entry at index {idx} is not an integer: {v!r}")
        if v <= 0:
            raise NonPositiveRank(f"non-positive rank {v} at index {idx}")
        if v in seen:
            raise DuplicateRank(f"rank {v} at index {idx} duplicates index {seen[v]}")
        if v > n:
            raise RankGap(f"rank {v} at index {idx} exceeds length {n}")
        seen[v] = idx


@dataclass(frozen=True)
class Permutation:
    """A rearrangement of 1..n, validated on construction."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(self.values)
        _validate(values)
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    @classmethod
    def _trusted(cls, values: Iterable[int]) -> Permutation:
        # skips validation; only for values produced by this package
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", tuple(int(v) for v in values))
        return obj

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({', '.join(map(str, self.values))})"

    @property
    def n(self) -> int:
        return len(self.values)

    @cached_property
    def array(self) -> np.ndarray:
        """The ranks as a read-only ``int64`` array."""
        arr = np.fromiter(self.values, dtype=np.int64, count=len(self.values))
        arr.setflags(write=False)
        return arr

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.values, start=1))


Pattern = Permutation


def make_permutation(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


def standardize(word: Sequence[int]) -> Pattern:
    """Replace each entry of ``word`` by its rank within ``word``.

    >>> standardize([4, 7, 2])
    Permutation(2, 3, 1)
    """
    word = tuple(word)
    order = sorted(range(len(word)), key=word.__getitem__)
    ranks = [0] * len(word)
    for r, idx in enumerate(order, start=1):
        if r > 1 and word[idx] == word[order[r - 2]]:
            raise DuplicateRank(f"duplicate entry {word[idx]!r} at index {idx + 1}")
        ranks[idx] = r
    return Permutation._trusted(ranks)


def restrict(p: Permutation, positions: Iterable[int]) -> tuple[int, ...]:
    """Entries of ``p`` at the given 1-based, strictly increasing positions."""
    out = []
    prev = 0
    for i in positions:
        if not 1 <= i <= len(p):
            raise PositionError(f"position {i} outside 1..{len(p)}")
        if i <= prev:
            raise PositionError(f"positions must be strictly increasing ({prev} then {i})")
        out.append(p.values[i - 1])
        prev = i
    return tuple(out)


def remove_entry(q: Pattern, rank: int) -> Pattern:
    """Delete the ``rank``-th smallest entry of ``q`` and re-standardize."""
    if not 1 <= rank <= len(q):
        raise PermutationError(f"rank {rank} outside 1..{len(q)}")
    return Permutation._trusted(v - (v > rank) for v in q.values if v != rank)


def child_seed_sequence(seed: int, stream: int) -> np.random.SeedSequence:
    """Seed sequence for stream ``stream`` of master ``seed``.

    Equal to ``SeedSequence(seed).spawn(stream + 1)[stream]``: numpy hashes
    the pair (seed, stream) into the generator state, so each stream is
    reproducible on its own without knowing how many streams exist.
    """
    if not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if stream < 0:
        raise ValueError(f"stream index must be non-negative, got {stream}")
    return np.random.SeedSequence(seed, spawn_key=(stream,))


def _random_array(n: int, seed: int, stream: int = 0) -> np.ndarray:
    rng = np.random.default_rng(child_seed_sequence(seed, stream))
    return rng.permutation(n).astype(np.int64) + 1


def random_permutation(n: int, seed: int, stream: int = 0) -> Permutation:
    """Uniform random permutation of length ``n``.

    Uses numpy's Fisher-Yates shuffle on a PCG64 generator seeded from
    ``child_seed_sequence(seed, stream)``.
    """
    if n < 0:
        raise ValueError(f"length must be non-negative, got {n}")
    return Permutation._trusted(_random_array(n, seed, stream).tolist())


def reverse(p: Permutation) -> Permutation:
    return Permutation._trusted(p.values[::-1])


def complement(p: Permutation) -> Permutation:
    n = len(p)
    return Permutation._trusted(n + 1 - v for v in p.values)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p.values, start=1):
        inv[v - 1] = i
    return Permutation._trusted(inv)


_SYMMETRIES = {"reverse": reverse, "complement": complement, "inverse": inverse}


def symmetry(p: Permutation, which: Literal["reverse", "complement", "inverse"]) -> Permutation:
    try:
        return _SYMMETRIES[which](p)
    except KeyError:
        raise ValueError(f"unknown symmetry {which!r}; expected one of {sorted(_SYMMETRIES)}") from None


def parse_permutation(line: str) -> Permutation:
    """Parse ``"3 5 1 4 2"`` (whitespace separated, 1-based)."""
    tokens = line.split()
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise PermutationError(f"not an integer list: {line.strip()!r}") from exc
    return Permutation(tuple(values))


def format_permutation(p: Permutation) -> str:
    return " ".join(map(str, p.values))


def read_permutations(stream: Iterable[str]) -> Iterator[tuple[int, Permutation]]:
    """Yield ``(line_number, permutation)`` for each non-blank line."""
    for lineno, line in enumerate(stream, start=1):
        if line.strip():
            try:
                yield lineno, parse_permutation(line)
            except PermutationError as exc:
                raise PermutationError(f"line {lineno}: {exc}") from exc
