"""Integer lattices as row spans: row Hermite normal form and coordinates in an HNF basis."""

from __future__ import annotations

from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]


class NotInLattice(ValueError):
    """The vector is not an integer combination of the basis rows."""


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form of M with zero rows removed.

    Pivots are positive and move strictly right going down; entries above
    a pivot lie in ``[0, pivot)``.  The rows of the result are a basis of the
    lattice spanned by the rows of M.
    """
    rows = [list(map(int, r)) for r in M if any(r)]
    if not rows:
        return ()
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    r = 0
    pivots = []
    for c in range(ncols):
        if r == len(rows):
            break
        # fold every row below r into row r with unimodular 2x2 steps
        for i in range(r + 1, len(rows)):
            b = rows[i][c]
            if b == 0:
                continue
            a = rows[r][c]
            g, x, y = _xgcd(a, b)
            ra, rb = rows[r], rows[i]
            u, v = a // g, b // g
            rows[r] = [x * s + y * t for s, t in zip(ra, rb)]
            rows[i] = [u * t - v * s for s, t in zip(ra, rb)]
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-s for s in rows[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [s - q * t for s, t in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows[:r])


def pivot_columns(H: IntMatrix) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in H]


def coords_in_basis(H: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """Integer x with ``x . H == v`` for H in HNF, else :class:`NotInLattice`."""
    v = list(v)
    x = []
    for row, c in zip(H, pivot_columns(H)):
        q, rem = divmod(v[c], row[c])
        if rem:
            raise NotInLattice(f"{tuple(v)} fails at pivot column {c}")
        x.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        raise NotInLattice(f"residual {tuple(v)} is outside the row span")
    return tuple(x)


def is_hnf(H: IntMatrix) -> bool:
    """Shape check only: echelon, positive pivots, reduced entries above pivots."""
    prev = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz or nz[0] <= prev:
            return False
        c = nz[0]
        if row[c] <= 0:
            return False
        if any(not 0 <= H[k][c] < row[c] for k in range(i)):
            return False
        prev = c
    return True
