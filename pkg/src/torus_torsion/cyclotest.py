"""Sparse test for ``Phi_m(X) | G(X)`` that never expands G densely in its degree.

Uses the equivalence

    Phi_m | G   <=>   X^m - 1 | G(X) * prod_{p | m} (X^{m/p} - 1),

so after reducing G's exponents mod m the work only depends on m and the
number of terms.  The zero polynomial is divisible by every ``Phi_m``.
"""

from __future__ import annotations

from . import _kernels
from .core import FactoredSquarefree, LacunaryPoly, canonicalize


def group_exponents_mod(G: LacunaryPoly, m: int) -> LacunaryPoly:
    """Reduce G modulo ``X^m - 1``: exponents taken mod m, coefficients summed."""
    if m < 1:
        raise ValueError("m must be positive")
    return canonicalize([(c, (e % m,)) for c, e in G.univariate_terms()], 1)


def _divides(m: int, primes, G: LacunaryPoly) -> bool:
    if G.is_zero:
        return True
    reduced = group_exponents_mod(G, m)
    if reduced.is_zero:
        return True
    res = [e for _, (e,) in reduced.terms]
    return _kernels.divides_reduced(res, reduced.coeffs, m, tuple(primes))


def cyclotomic_divides(m: FactoredSquarefree, G: LacunaryPoly) -> bool:
    """Whether ``Phi_m`` divides G, for squarefree m given with its factorization."""
    return _divides(m.value, m.primes, G)


def cyclotomic_divides_general(m: int, G: LacunaryPoly, primes) -> bool:
    """Same test for arbitrary m; ``primes`` must be exactly the distinct primes of m.

    The equivalence above holds for every m, not only squarefree ones; this
    entry point exists for oracles and point evaluation.
    """
    primes = tuple(sorted(primes))
    rest = m
    for p in primes:
        if rest % p:
            raise ValueError(f"{p} does not divide {m}")
        while rest % p == 0:
            rest //= p
    if rest != 1:
        raise ValueError(f"{primes} are not all the prime divisors of {m}")
    return _divides(m, primes, G)
