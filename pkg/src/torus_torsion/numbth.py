"""Small number theory: sieve, Psi, the candidate orders Q_N, CRT, trial division."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache, reduce

import numpy as np

from .core import FactoredSquarefree

DEFAULT_FACTOR_BOUND = 10**6


def psi(m: FactoredSquarefree) -> int:
    """Conway-Jones invariant ``2 + sum_{p | m} (p - 2)``."""
    return 2 + sum(p - 2 for p in m.primes)


def primes_upto(B: int) -> list[int]:
    """Primes <= B in increasing order (sieve of Eratosthenes)."""
    if B < 2:
        return []
    sieve = np.ones(B + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(B) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


@lru_cache(maxsize=None)
def _qn(N: int) -> tuple[FactoredSquarefree, ...]:
    budget = N - 2  # sum of (p - 2) allowed
    if budget < 0:
        return ()
    primes = primes_upto(N)
    out = []

    def extend(start, chosen, spent):
        out.append(FactoredSquarefree.from_primes(chosen))
        for i in range(start, len(primes)):
            cost = primes[i] - 2
            if spent + cost > budget:
                break  # primes ascending, so every later prime costs more
            extend(i + 1, chosen + [primes[i]], spent + cost)

    extend(0, [], 0)
    return tuple(sorted(out))


def compute_QN(N: int) -> list[FactoredSquarefree]:
    """All squarefree m with ``psi(m) <= N``, sorted by value, each with its factorization."""
    return list(_qn(N))


def enumerate_order_tuples(m: FactoredSquarefree, k: int) -> list[tuple[int, ...]]:
    """Residue vectors ``d`` in ``[0, m)^k`` whose root-of-unity tuple has order exactly m.

    For squarefree m that is the condition ``gcd(d_1, ..., d_k, m) == 1``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    mv = m.value
    assert math.prod(m.primes) == mv, "order tuples need a squarefree modulus"
    return [
        d for d in itertools.product(range(mv), repeat=k) if reduce(math.gcd, d, mv) == 1
    ]


def order_tuples_array(m: FactoredSquarefree, k: int) -> np.ndarray:
    """Same set as :func:`enumerate_order_tuples`, as an int64 array in the same order."""
    mv = m.value
    grid = np.indices((mv,) * k, dtype=np.int64).reshape(k, -1).T
    g = np.full(len(grid), mv, dtype=np.int64)
    for col in grid.T:
        g = np.gcd(g, col)
    return np.ascontiguousarray(grid[g == 1])


def crt(residues, moduli) -> int:
    """Least nonnegative x with ``x = residues[i] (mod moduli[i])`` for every i."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    x, M = 0, 1
    for r, q in zip(residues, moduli):
        if q < 1:
            raise ValueError(f"modulus {q} is not positive")
        if math.gcd(M, q) != 1:
            raise ValueError(f"moduli are not pairwise coprime (at {q})")
        # x + M*t = r (mod q)
        t = (r - x) * pow(M, -1, q) % q if q > 1 else 0
        x += M * t
        M *= q
    return x % M


def trial_factor(x: int, bound: int = DEFAULT_FACTOR_BOUND):
    """Strip all prime factors ``<= bound`` from x.

    Returns ``(factors, cofactor)`` with ``factors`` a list of
    ``(prime, multiplicity)``; a cofactor > 1 means the factorization is
    incomplete.
    """
    if x < 1:
        raise ValueError("x must be positive")
    factors = []
    p = 2
    while p <= bound and p * p <= x:
        if x % p == 0:
            k = 0
            while x % p == 0:
                x //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if 1 < x <= bound:
        factors.append((x, 1))
        x = 1
    return factors, x


def prime_divisors(m: int) -> tuple[int, ...]:
    """Distinct primes of m, by trial division all the way (m is expected to be modest)."""
    factors, cof = trial_factor(m, max(2, m))
    assert cof == 1
    return tuple(p for p, _ in factors)


def radical_factorization(m: int) -> FactoredSquarefree:
    return FactoredSquarefree.from_primes(prime_divisors(m))


def divisors_from_factorization(factors) -> list[int]:
    divs = [1]
    for p, k in factors:
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)
