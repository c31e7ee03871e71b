"""Slow, independent references for differential testing.

Nothing here touches partitions or the Q_N candidate sets.  Dense
cyclotomic polynomials back the sparse divisibility test for small m.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache, reduce
from typing import Iterator

import numpy as np

from . import _kernels
from .core import LacunaryPoly, TorsionCoset, TorsionPoint
from .cyclotest import cyclotomic_divides_general
from .numbth import prime_divisors

DENSE_CHECK_LIMIT = 30


# -- dense integer polynomials, coefficient lists lowest degree first ---------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def dense_divmod(num, den):
    """Quotient and remainder of integer polynomials with monic ``den``."""
    num = list(num)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    dd = len(den) - 1
    q = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j, a in enumerate(den):
                num[i - dd + j] -= c * a
    return _trim(q), _trim(num[:dd])


@lru_cache(maxsize=None)
def dense_cyclotomic(m: int) -> tuple[int, ...]:
    """``Phi_m`` as a coefficient tuple, from ``X^m - 1`` divided by ``Phi_d`` for ``d | m, d < m``."""
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p, r = dense_divmod(p, dense_cyclotomic(d))
            assert not r
    return tuple(p)


def dense_divides(m: int, F: LacunaryPoly) -> bool:
    """``Phi_m | F`` by dense long division (F univariate, shifted to nonnegative exponents)."""
    terms = F.univariate_terms()
    if not terms:
        return True
    lo = min(e for _, e in terms)
    dense = [0] * (max(e for _, e in terms) - lo + 1)
    for c, e in terms:
        dense[e - lo] += c
    _, r = dense_divmod(dense, dense_cyclotomic(m))
    return not r


# -- univariate ----------------------------------------------------------------


def brute_force_cyclotomic(F: LacunaryPoly, max_m: int | None = None) -> list[int]:
    """Every m <= max_m (default ``3 * deg F``) with ``Phi_m | F``, tested one m at a time."""
    if F.is_zero:
        raise ValueError("the zero polynomial is divisible by everything")
    if max_m is None:
        max_m = 3 * max(F.degree, 1)
    found = []
    for m in range(1, max_m + 1):
        hit = cyclotomic_divides_general(m, F, prime_divisors(m))
        if m <= DENSE_CHECK_LIMIT and F.degree <= 10_000:
            assert hit == dense_divides(m, F), f"sparse and dense tests disagree at m={m}"
        if hit:
            found.append(m)
    return found


# -- torsion points ------------------------------------------------------------


def enumerate_torsion_points(n: int, max_order: int) -> Iterator[TorsionPoint]:
    """All points of ``mu_infty^n`` of order <= max_order, ordered by order, then residues."""
    for m in range(1, max_order + 1):
        for d in itertools.product(range(m), repeat=n):
            if reduce(math.gcd, d, m) == 1:
                yield TorsionPoint(d, m)


def coset_contains(c: TorsionCoset, p: TorsionPoint) -> bool:
    """Whether ``p^L == omega``, compared exactly as fractions of a turn."""
    if len(p.residues) != c.num_vars:
        raise ValueError("dimension mismatch")
    m, mc = p.modulus, c.omega_modulus.value
    for row, w in zip(c.matrix, c.omega_residues):
        s = sum(a * d for a, d in zip(row, p.residues))
        if (s * mc - w * m) % (m * mc):
            return False
    return True


def sample_coset_points(c: TorsionCoset, max_order: int) -> list[TorsionPoint]:
    return [p for p in enumerate_torsion_points(c.num_vars, max_order) if coset_contains(c, p)]


# -- batched versions of the above, for large sweeps ---------------------------


@lru_cache(maxsize=256)
def points_of_order(n: int, m: int) -> np.ndarray:
    """(P, n) int64 array of residue vectors of the points of order exactly m."""
    grid = np.indices((m,) * n, dtype=np.int64).reshape(n, -1).T
    g = np.full(len(grid), m, dtype=np.int64)
    for col in grid.T:
        g = np.gcd(g, col)
    out = np.ascontiguousarray(grid[g == 1])
    out.flags.writeable = False
    return out


def vanishing_points(F: LacunaryPoly, max_order: int) -> set[tuple[int, tuple[int, ...]]]:
    """``{(m, d)}`` for every torsion point of order <= max_order where F vanishes."""
    out = set()
    for m in range(1, max_order + 1):
        pts = points_of_order(F.num_vars, m)
        if F.is_zero:
            mask = np.ones(len(pts), dtype=bool)
        else:
            exps = np.array([[x % m for x in e] for e in F.exponents], dtype=np.int64)
            mask = _kernels.vanishing_mask(exps, F.coeffs, m, prime_divisors(m), pts)
        out.update((m, tuple(d)) for d in pts[mask].tolist())
    return out


def coset_points(c: TorsionCoset, max_order: int) -> set[tuple[int, tuple[int, ...]]]:
    """``{(m, d)}`` for every torsion point of order <= max_order in the coset."""
    mc = c.omega_modulus.value
    out = set()
    for m in range(1, max_order + 1):
        pts = points_of_order(c.num_vars, m)
        mask = np.ones(len(pts), dtype=bool)
        for row, w in zip(c.matrix, c.omega_residues):
            lr = np.array([x % m for x in row], dtype=np.int64)
            s = pts @ lr
            mask &= (s * mc - w * m) % (m * mc) == 0
        out.update((m, tuple(d)) for d in pts[mask].tolist())
    return out
