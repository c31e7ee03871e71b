"""Domain types and exact evaluation of lacunary polynomials at torsion points.

A polynomial is stored as its list of nonzero terms ``(coeff, exponent)``,
sorted lexicographically by exponent vector.  Exponents are plain Python
ints and may be arbitrarily large (or negative, for Laurent polynomials).

Torsion points are stored as ``(residues, modulus)`` standing for the tuple
``(exp(2 pi i d_1/m), ..., exp(2 pi i d_n/m))``.  Nothing here ever touches
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence


class WholeTorus(Exception):
    """Raised when a solver is handed the zero polynomial."""


@dataclass(frozen=True, order=True)
class FactoredSquarefree:
    """A squarefree positive integer together with its sorted prime divisors."""

    value: int
    primes: tuple[int, ...] = field(compare=False)

    def __post_init__(self):
        primes = tuple(self.primes)
        object.__setattr__(self, "primes", primes)
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError(f"primes must be strictly increasing: {primes}")
        if math.prod(primes) != self.value:
            raise ValueError(f"{self.value} is not the product of {primes}")

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> FactoredSquarefree:
        primes = tuple(sorted(primes))
        return cls(math.prod(primes), primes)

    def divide_out(self, other: int) -> FactoredSquarefree:
        """Return ``self / gcd(self, other)``; the factorization is inherited."""
        return FactoredSquarefree.from_primes(p for p in self.primes if other % p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FactoredSquarefree({self.value})"


Exponent = tuple[int, ...]
Term = tuple[int, Exponent]


@dataclass(frozen=True)
class LacunaryPoly:
    """Sparse (Laurent) polynomial with integer coefficients in ``num_vars`` variables.

    Always build through :func:`canonicalize` (or the helper constructors);
    the raw constructor trusts its input.
    """

    num_vars: int
    terms: tuple[Term, ...]

    @classmethod
    def from_terms(cls, raw_terms, num_vars: int | None = None) -> LacunaryPoly:
        raw_terms = list(raw_terms)
        if num_vars is None:
            if not raw_terms:
                raise ValueError("cannot infer num_vars from an empty term list")
            num_vars = len(_as_exponent(raw_terms[0][1]))
        return canonicalize(raw_terms, num_vars)

    @classmethod
    def univariate(cls, coeffs_by_exp) -> LacunaryPoly:
        """Build a one-variable polynomial from ``{exp: coeff}`` or ``[(coeff, exp), ...]``."""
        if isinstance(coeffs_by_exp, dict):
            raw = [(c, (e,)) for e, c in coeffs_by_exp.items()]
        else:
            raw = [(c, (e,)) for c, e in coeffs_by_exp]
        return canonicalize(raw, 1)

    def __len__(self):
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def coeffs(self) -> list[int]:
        return [c for c, _ in self.terms]

    @property
    def exponents(self) -> list[Exponent]:
        return [e for _, e in self.terms]

    @property
    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.exponents), default=-1)

    @property
    def height(self) -> float:
        """max log|a_i| over the terms (0 for the zero polynomial)."""
        return max((math.log(abs(c)) for c in self.coeffs), default=0.0)

    def univariate_terms(self) -> list[tuple[int, int]]:
        if self.num_vars != 1:
            raise ValueError(f"expected a univariate polynomial, got {self.num_vars} variables")
        return [(c, e[0]) for c, e in self.terms]

    def scale(self, c: int) -> LacunaryPoly:
        return canonicalize([(c * a, e) for a, e in self.terms], self.num_vars)

    def shift(self, beta: Sequence[int]) -> LacunaryPoly:
        """Multiply by the monomial ``X^beta``."""
        beta = tuple(beta)
        return canonicalize(
            [(a, tuple(x + y for x, y in zip(e, beta))) for a, e in self.terms],
            self.num_vars,
        )

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["X"] if self.num_vars == 1 else [f"X{i + 1}" for i in range(self.num_vars)]
        parts = []
        for c, e in self.terms:
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_exponent(e) -> Exponent:
    if isinstance(e, int):
        return (e,)
    return tuple(int(x) for x in e)


def canonicalize(raw_terms, n: int) -> LacunaryPoly:
    """Merge equal exponents, drop zero coefficients and sort lexicographically."""
    acc: dict[Exponent, int] = {}
    for c, e in raw_terms:
        e = _as_exponent(e)
        if len(e) != n:
            raise ValueError(f"exponent {e} does not have length {n}")
        acc[e] = acc.get(e, 0) + int(c)
    terms = tuple((c, e) for e, c in sorted(acc.items()) if c)
    return LacunaryPoly(n, terms)


@dataclass(frozen=True, order=True)
class TorsionPoint:
    """The point ``(zeta_m^{d_1}, ..., zeta_m^{d_n})``, stored in lowest terms.

    On construction residues are reduced mod ``modulus`` and the common gcd
    is divided out, so ``modulus`` is the order of the point and ``==``
    compares points, not representations.
    """

    modulus: int
    residues: tuple[int, ...]

    def __init__(self, residues: Sequence[int], modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        residues = tuple(int(d) % modulus for d in residues)
        g = reduce(math.gcd, residues, modulus)
        object.__setattr__(self, "modulus", modulus // g)
        object.__setattr__(self, "residues", tuple(d // g for d in residues))

    @property
    def order(self) -> int:
        return self.modulus

    def __repr__(self):
        return f"TorsionPoint({self.residues}, {self.modulus})"


@dataclass(frozen=True, order=True)
class CyclotomicPair:
    """The factor ``Phi_m(X^e)``: its roots are the x with ``x^e`` of exact order m."""

    m: FactoredSquarefree
    e: int

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("e must be positive")

    def contains_order(self, order: int) -> bool:
        """Whether roots of unity of this order are roots of ``Phi_m(X^e)``."""
        return order // math.gcd(order, self.e) == self.m.value

    def __repr__(self):
        return f"({self.m.value}, {self.e})"


@dataclass(frozen=True)
class TorsionCoset:
    """``B(L, omega) = {x : x^L = omega}`` with ``omega_t = zeta_{m'}^{r_t}``.

    ``matrix`` is a k x n integer matrix in row Hermite normal form; the
    empty matrix (k = 0) is the whole torus.
    """

    matrix: tuple[tuple[int, ...], ...]
    omega_residues: tuple[int, ...]
    omega_modulus: FactoredSquarefree
    num_vars: int

    def __post_init__(self):
        if len(self.omega_residues) != len(self.matrix):
            raise ValueError("need one omega residue per matrix row")
        if any(len(row) != self.num_vars for row in self.matrix):
            raise ValueError("matrix rows must have num_vars entries")
        m = self.omega_modulus.value
        if any(not 0 <= r < m for r in self.omega_residues):
            raise ValueError("omega residues must lie in [0, modulus)")
        if reduce(math.gcd, self.omega_residues, m) != 1:
            raise ValueError("omega must have exact order omega_modulus")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def dimension(self) -> int:
        return self.num_vars - self.rank

    def sort_key(self):
        return (self.rank, self.matrix, self.omega_modulus.value, self.omega_residues)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @classmethod
    def whole_torus(cls, n: int) -> TorsionCoset:
        return cls((), (), FactoredSquarefree(1, ()), n)


def eval_vanishes_at(F: LacunaryPoly, p: TorsionPoint) -> bool:
    """Exact test of ``F(p) == 0``.

    Every term collapses onto a power of one primitive root ``zeta_m``; the
    question is then whether ``Phi_m`` divides the resulting univariate
    polynomial.
    """
    from .cyclotest import cyclotomic_divides_general
    from .numbth import prime_divisors

    if len(p.residues) != F.num_vars:
        raise ValueError(
            f"point has {len(p.residues)} coordinates, polynomial has {F.num_vars} variables"
        )
    m = p.modulus
    G = canonicalize(
        [(c, (sum(a * d for a, d in zip(e, p.residues)) % m,)) for c, e in F.terms], 1
    )
    return cyclotomic_divides_general(m, G, prime_divisors(m))
