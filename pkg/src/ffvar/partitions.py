"""Integer partitions, Young diagram geometry and Gelfand-Tsetlin patterns.

Partitions are plain tuples of positive integers in weakly decreasing
order. The empty tuple is the unique partition of 0.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

Partition = Tuple[int, ...]


def is_partition(parts) -> bool:
    parts = tuple(parts)
    if any((not isinstance(p, int)) or p < 1 for p in parts):
        return False
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def check_partition(parts) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"{parts} is not a partition")
    return parts


def _rev_lex(n: int, max_part: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _rev_lex(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(_rev_lex(n, n))


def weight(lam: Partition) -> int:
    return sum(lam)


def dual(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def to_frequency(lam: Partition) -> Dict[int, int]:
    """Frequency form: part size -> multiplicity."""
    return dict(sorted(Counter(lam).items()))


def from_frequency(freq: Dict[int, int]) -> Partition:
    parts: List[int] = []
    for size in sorted(freq, reverse=True):
        m = freq[size]
        if size < 1 or m < 1:
            raise ValueError(f"bad frequency entry {size}: {m}")
        parts.extend([size] * m)
    return tuple(parts)


def hook_lengths(lam: Partition) -> Dict[Tuple[int, int], int]:
    lamd = dual(lam)
    return {
        (i, j): lam[i - 1] + lamd[j - 1] - i - j + 1
        for i in range(1, len(lam) + 1)
        for j in range(1, lam[i - 1] + 1)
    }


def contents(lam: Partition) -> Dict[Tuple[int, int], int]:
    # column minus row; the other sign breaks the hook-content formula
    return {
        (i, j): j - i
        for i in range(1, len(lam) + 1)
        for j in range(1, lam[i - 1] + 1)
    }


def hooks_and_contents(lam: Partition):
    """Per-cell (hook length, content) keyed by 1-based (row, column)."""
    if not lam:
        raise ValueError("hooks_and_contents needs a nonempty partition")
    hooks = hook_lengths(lam)
    cont = contents(lam)
    return {cell: (hooks[cell], cont[cell]) for cell in hooks}


def _interlacing_rows(row: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    # rows y of length len(row)-1 with row[j] >= y[j] >= row[j+1]
    if len(row) <= 1:
        yield ()
        return
    ranges = [range(row[j + 1], row[j] + 1) for j in range(len(row) - 1)]

    def rec(j):
        if j == len(ranges):
            yield ()
            return
        for v in ranges[j]:
            for tail in rec(j + 1):
                yield (v,) + tail

    yield from rec(0)


@lru_cache(maxsize=None)
def _gt_from_row(row: Tuple[int, ...]) -> int:
    if len(row) <= 1:
        return 1
    return sum(_gt_from_row(nxt) for nxt in _interlacing_rows(row))


def gt_pattern_count(lam: Partition, k: int) -> int:
    """Number of Gelfand-Tsetlin patterns with top row ``lam`` padded to ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    if len(lam) > k:
        return 0
    top = tuple(lam) + (0,) * (k - len(lam))
    return _gt_from_row(top)
