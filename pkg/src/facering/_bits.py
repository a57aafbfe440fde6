"""Small helpers for vertex sets stored as integer bitmasks."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on sorted indices."""
    b = bits(mask)
    return (len(b), b)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def masks_by_size(n: int, size: int) -> Iterator[int]:
    """Subsets of range(n) of the given size, in lexicographic order."""
    for combo in combinations(range(n), size):
        yield from_indices(combo)


def canonical_subsets(n: int) -> Iterator[int]:
    """Every subset of range(n) ordered by (cardinality, lex)."""
    for size in range(n + 1):
        yield from masks_by_size(n, size)


def maximal(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal members of ``masks`` (duplicates merged)."""
    uniq = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return kept
