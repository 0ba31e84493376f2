"""Brute-force integer partition enumeration used as a combinatorial oracle.

Counts here come from direct generation of the partitions themselves, never
from generating functions, so they can independently confirm q-series
coefficients.  Partitions are tuples of weakly decreasing positive parts.
"""

from __future__ import annotations

import enum
from typing import Iterator, Sequence

__all__ = ["PartitionPredicate", "satisfies", "iter_partitions", "iter_matching", "count_partitions"]


class PartitionPredicate(enum.Enum):
    DISTINCT_NONCONSECUTIVE = "distinct-nonconsecutive"
    PARTS_1_4_MOD_5 = "parts-1-4-mod-5"
    DISTINCT_NONCONSECUTIVE_MIN2 = "distinct-nonconsecutive-min2"
    PARTS_2_3_MOD_5 = "parts-2-3-mod-5"


def satisfies(parts: Sequence[int], predicate: PartitionPredicate) -> bool:
    """Decide the predicate on an explicit partition (decreasing parts)."""
    if predicate is PartitionPredicate.PARTS_1_4_MOD_5:
        return all(p % 5 in (1, 4) for p in parts)
    if predicate is PartitionPredicate.PARTS_2_3_MOD_5:
        return all(p % 5 in (2, 3) for p in parts)
    min_part = 1 if predicate is PartitionPredicate.DISTINCT_NONCONSECUTIVE else 2
    if parts and parts[-1] < min_part:
        return False
    return all(parts[i] - parts[i + 1] >= 2 for i in range(len(parts) - 1))


def iter_partitions(n: int, max_part: int | None = None) -> Iterator[tuple]:
    """All partitions of n with parts <= max_part, weakly decreasing."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for p in range(min(max_part, n), 0, -1):
        for rest in iter_partitions(n - p, p):
            yield (p,) + rest


def _iter_gap2(n: int, max_part: int, min_part: int) -> Iterator[tuple]:
    # strictly decreasing parts with gaps >= 2 and smallest part >= min_part
    if n == 0:
        yield ()
        return
    for p in range(min(max_part, n), min_part - 1, -1):
        for rest in _iter_gap2(n - p, p - 2, min_part):
            yield (p,) + rest


def _iter_residues(n: int, max_part: int, residues: tuple) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for p in range(min(max_part, n), 0, -1):
        if p % 5 in residues:
            for rest in _iter_residues(n - p, p, residues):
                yield (p,) + rest


def iter_matching(n: int, predicate: PartitionPredicate) -> Iterator[tuple]:
    """Partitions of n satisfying the predicate, generated with pruning.

    The pruning only encodes the predicate's own hereditary structure
    (allowed residues / minimum gap), so the enumeration remains a direct
    realization of the combinatorial definition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if predicate is PartitionPredicate.PARTS_1_4_MOD_5:
        return _iter_residues(n, n, (1, 4))
    if predicate is PartitionPredicate.PARTS_2_3_MOD_5:
        return _iter_residues(n, n, (2, 3))
    if predicate is PartitionPredicate.DISTINCT_NONCONSECUTIVE:
        return _iter_gap2(n, n, 1)
    return _iter_gap2(n, n, 2)


def count_partitions(n: int, predicate: PartitionPredicate) -> int:
    """Number of partitions of n satisfying the predicate (n = 0 counts 1)."""
    return sum(1 for _ in iter_matching(n, predicate))
