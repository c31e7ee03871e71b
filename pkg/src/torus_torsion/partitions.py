"""Set partitions of ``{0, ..., N-1}`` without singleton blocks.

Generated as restricted growth strings ``a`` (``a[0] = 0``,
``a[i] <= 1 + max(a[:i])``) in lexicographic order, pruning any prefix
that leaves more singleton blocks than there are elements left to fill
them.  Term indices are 0-based throughout the package.
"""

from __future__ import annotations

from typing import Iterator

Partition = tuple[tuple[int, ...], ...]


def enumerate_partitions_min2(N: int) -> Iterator[Partition]:
    """Yield every partition of ``range(N)`` whose blocks all have size >= 2.

    Blocks are sorted tuples, ordered by their smallest element.  Nothing
    is yielded for N < 2.
    """
    if N < 2:
        return
    blocks: list[list[int]] = []

    def rec(i: int, singles: int):
        if singles > N - i:
            return
        if i == N:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, singles - (len(b) == 2))
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, singles + 1)
        blocks.pop()

    yield from rec(0, 0)


def count_partitions_min2(N: int) -> int:
    return sum(1 for _ in enumerate_partitions_min2(N))
