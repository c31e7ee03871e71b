"""Torsion points of sparse polynomial systems.

Both solvers follow the same plan.  Any vanishing sum of roots of unity
splits into minimal vanishing subsums, so we loop over all partitions of
the terms into blocks of size >= 2, factor each block through the lattice
(or, in one variable, the gcd) of its exponent differences, and only try
root-of-unity orders allowed by the Conway-Jones bound ``psi(m') <= N - 2(s-1)``.

``cyclotomic_pairs`` handles one variable and reports pairs ``(m, e)``
standing for ``Phi_m(X^e)``; ``torsion_cosets`` / ``torsion_cosets_variety``
handle any number of variables and report torsion cosets ``B(L, omega)``.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from . import _kernels
from .core import (
    CyclotomicPair,
    FactoredSquarefree,
    LacunaryPoly,
    TorsionCoset,
    WholeTorus,
    canonicalize,
)
from .cyclotest import cyclotomic_divides
from .intlinalg import IntMatrix, NotInLattice, coords_in_basis, hnf
from .numbth import (
    DEFAULT_FACTOR_BOUND,
    compute_QN,
    crt,
    divisors_from_factorization,
    order_tuples_array,
    trial_factor,
)
from .partitions import enumerate_partitions_min2


class IncompleteFactorization(ArithmeticError):
    """Trial division could not fully factor an exponent."""


# ---------------------------------------------------------------------------
# block factorizations


@dataclass(frozen=True)
class UnivariateBlock:
    """``F_j(X) = X^shift * G_j(X^stride)`` with G_j primitive and ``G_j(0) != 0``."""

    shift: int
    stride: int
    primitive: LacunaryPoly


@dataclass(frozen=True)
class LatticeBlock:
    """``F_j(X) = X^base * G_j(X^basis[0], ..., X^basis[k-1])``.

    ``basis`` is the HNF basis of the lattice spanned by the exponent
    differences; ``primitive`` is a Laurent polynomial in ``len(basis)``
    variables containing the constant term.
    """

    base: tuple[int, ...]
    basis: IntMatrix
    primitive: LacunaryPoly


def block_factor_univariate(F_block: LacunaryPoly) -> UnivariateBlock:
    terms = F_block.univariate_terms()
    if len(terms) < 2:
        raise ValueError("a block needs at least two terms")
    b = min(e for _, e in terms)
    stride = reduce(math.gcd, (e - b for _, e in terms))
    G = LacunaryPoly.univariate([(c, (e - b) // stride) for c, e in terms])
    return UnivariateBlock(b, stride, G)


def block_factor_multivariate(F_block: LacunaryPoly) -> LatticeBlock:
    if len(F_block) < 2:
        raise ValueError("a block needs at least two terms")
    base = F_block.terms[0][1]
    diffs = [tuple(a - b for a, b in zip(e, base)) for _, e in F_block.terms]
    basis = hnf(diffs)
    try:
        coords = [coords_in_basis(basis, v) for v in diffs]
    except NotInLattice as exc:  # pragma: no cover - impossible by construction
        raise AssertionError(f"exponent difference outside its own lattice: {exc}") from exc
    G = canonicalize([(c, x) for (c, _), x in zip(F_block.terms, coords)], len(basis))
    return LatticeBlock(base, basis, G)


def _sub_poly(F: LacunaryPoly, idx: Sequence[int]) -> LacunaryPoly:
    return LacunaryPoly(F.num_vars, tuple(F.terms[i] for i in idx))


# ---------------------------------------------------------------------------
# shared driver


def _pooled_partitions(polys):
    """Partitions of every polynomial, combined; each block is ``(poly_index, term_indices)``."""
    per_poly = [enumerate_partitions_min2(len(F)) for F in polys]
    for combo in itertools.product(*per_poly):
        yield tuple((i, blk) for i, part in enumerate(combo) for blk in part)


def log_output_bound(N: int, k: int, n: int) -> float:
    """log of ``(N!)^k * exp(3(n+1) sqrt(kN log kN))``."""
    kN = k * N
    return k * math.lgamma(N + 1) + 3 * (n + 1) * math.sqrt(kN * math.log(kN) if kN > 1 else 0.0)


def _check_output_size(count: int, polys) -> None:
    if count == 0:
        return
    N = max(len(F) for F in polys)
    bound = log_output_bound(N, len(polys), polys[0].num_vars)
    assert math.log(count) <= bound + 1e-9, (
        f"{count} outputs exceed the torsion coset count bound exp({bound:.3f})"
    )


def _new_stats():
    return {"partitions": 0, "orders_tried": 0, "points_tried": 0, "block_tests": 0}


def _merge_stats(into, other):
    for key, val in other.items():
        into[key] = into.get(key, 0) + val


def _run(worker, payload, partitions, threads):
    """Apply ``worker(payload, chunk)`` over partitions; returns merged (results, stats)."""
    results, stats = set(), _new_stats()
    if threads <= 1 or len(partitions) < 2:
        chunks_out = [worker(payload, partitions)]
    else:
        nchunks = min(len(partitions), threads * 4)
        chunks = [partitions[i::nchunks] for i in range(nchunks)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks_out = list(pool.map(worker, itertools.repeat(payload), chunks))
    for res, st in chunks_out:
        results |= res
        _merge_stats(stats, st)
    return results, stats


def _clean(polys, num_vars=None):
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    n = polys[0].num_vars if num_vars is None else num_vars
    if any(F.num_vars != n for F in polys):
        raise ValueError("all polynomials must have the same number of variables")
    return [F for F in polys if not F.is_zero], n


# ---------------------------------------------------------------------------
# one variable


def _pairs_worker(polys, partitions):
    total_terms = sum(len(F) for F in polys)
    facts: dict = {}
    tests: dict = {}
    found = set()
    stats = _new_stats()
    for part in partitions:
        stats["partitions"] += 1
        blocks = []
        for key in part:
            if key not in facts:
                facts[key] = block_factor_univariate(_sub_poly(polys[key[0]], key[1]))
            blocks.append((key, facts[key]))
        e = reduce(math.gcd, (bf.stride for _, bf in blocks))
        s = len(blocks)
        for mprime in compute_QN(total_terms - 2 * (s - 1)):
            stats["orders_tried"] += 1
            for key, bf in blocks:
                mj = mprime.divide_out(bf.stride // e)
                tk = (key, mj.value)
                if tk not in tests:
                    stats["block_tests"] += 1
                    tests[tk] = cyclotomic_divides(mj, bf.primitive)
                if not tests[tk]:
                    break
            else:
                found.add((mprime.primes, e))
    return found, stats


def _vp(x: int, p: int) -> int:
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def _strip(x: int, primes) -> int:
    for p in primes:
        while x % p == 0:
            x //= p
    return x


def pair_contained_in(inner: CyclotomicPair, outer: CyclotomicPair) -> bool:
    """Whether every root of ``Phi_m(X^e)`` (inner) is a root of the outer factor.

    A root x of ``Phi_m(X^e)`` has order ``m * e1 * d`` with ``d | e2``
    (``e1`` the part of e on the primes of m); the condition is checked prime
    by prime, which only needs the factorizations of the two m's.
    """
    mp = set(inner.m.primes)
    if not set(outer.m.primes) <= mp:
        return False
    for p in mp:
        a, b = _vp(inner.e, p), _vp(outer.e, p)
        if p in outer.m.primes:
            if a != b:
                return False
        elif not a < b:
            return False
    return outer.e % _strip(inner.e, mp) == 0


def prune_pairs(pairs) -> list[CyclotomicPair]:
    """Drop pairs whose roots are covered by another single pair; equal root sets keep the smallest."""
    pairs = sorted(set(pairs))
    kept = []
    for a in pairs:
        redundant = False
        for b in pairs:
            if b is a or not pair_contained_in(a, b):
                continue
            if not pair_contained_in(b, a) or b < a:
                redundant = True
                break
        if not redundant:
            kept.append(a)
    return kept


def common_cyclotomic_pairs(polys, *, threads: int = 1, prune: bool = True, stats=None):
    """Pairs ``(m, e)`` whose union of roots is the common torsion zero set of ``polys``."""
    t0 = time.perf_counter()
    polys, n = _clean(polys)
    if n != 1:
        raise ValueError("cyclotomic pairs are only defined for univariate polynomials")
    if not polys:
        raise WholeTorus("every input polynomial is zero")
    partitions = list(_pooled_partitions(polys))
    raw, st = _run(_pairs_worker, polys, partitions, threads)
    pairs = [CyclotomicPair(FactoredSquarefree.from_primes(pr), e) for pr, e in raw]
    out = prune_pairs(pairs) if prune else sorted(pairs)
    _check_output_size(len(out), polys)
    if stats is not None:
        st.update(raw_pairs=len(raw), output=len(out), elapsed=time.perf_counter() - t0)
        _merge_stats(stats, st)
    return out


def cyclotomic_pairs(F: LacunaryPoly, **kwargs) -> list[CyclotomicPair]:
    """Pairs ``(m, e)`` with ``V(F)_tors`` the union of the roots of ``Phi_m(X^e)``.

    Sorted by ``(m, e)``.  Pairs whose roots are already covered by another
    pair (``(1, 1)`` next to ``(1, 7)``, say) are dropped unless
    ``prune=False``.  Raises :class:`WholeTorus` for the zero polynomial.
    """
    return common_cyclotomic_pairs([F], **kwargs)


def expand_pair(p: CyclotomicPair, bound: int = DEFAULT_FACTOR_BOUND) -> list[int]:
    """Indices ``M`` with ``Phi_m(X^e) = prod Phi_M(X)``, via trial division of e."""
    m, e = p.m.value, p.e
    e1 = 1
    e2 = e
    for q in p.m.primes:
        while e2 % q == 0:
            e2 //= q
            e1 *= q
    factors, cof = trial_factor(e2, bound)
    if cof != 1:
        raise IncompleteFactorization(f"cofactor {cof} of {e} has no prime factor <= {bound}")
    return [m * e1 * d for d in divisors_from_factorization(factors)]


def expand_pairs(pairs, bound: int = DEFAULT_FACTOR_BOUND) -> list[int]:
    return sorted({M for p in pairs for M in expand_pair(p, bound)})


# ---------------------------------------------------------------------------
# several variables


def _global_exponents(blk: LatticeBlock, L: IntMatrix) -> list[tuple[int, ...]]:
    """Exponents of G_j's terms re-expressed in the coordinates of the basis L."""
    delta = [coords_in_basis(L, row) for row in blk.basis]
    k = len(L)
    out = []
    for _, c in blk.primitive.terms:
        out.append(tuple(sum(ch * dh[t] for ch, dh in zip(c, delta)) for t in range(k)))
    return out


def _cosets_worker(payload, partitions):
    polys, n = payload
    total_terms = sum(len(F) for F in polys)
    facts: dict = {}
    tuple_cache: dict = {}
    found = set()
    stats = _new_stats()
    for part in partitions:
        stats["partitions"] += 1
        blocks = []
        for key in part:
            if key not in facts:
                facts[key] = block_factor_multivariate(_sub_poly(polys[key[0]], key[1]))
            blocks.append(facts[key])
        L = hnf([row for blk in blocks for row in blk.basis])
        k = len(L)
        gexp = [_global_exponents(blk, L) for blk in blocks]
        s = len(blocks)
        for mprime in compute_QN(total_terms - 2 * (s - 1)):
            stats["orders_tried"] += 1
            m = mprime.value
            tk = (m, k)
            if tk not in tuple_cache:
                tuple_cache[tk] = order_tuples_array(mprime, k)
            pts = tuple_cache[tk]
            stats["points_tried"] += len(pts)
            for blk, ex in zip(blocks, gexp):
                if not len(pts):
                    break
                stats["block_tests"] += len(pts)
                exps = np.array([[x % m for x in row] for row in ex], dtype=np.int64)
                pts = pts[_kernels.vanishing_mask(exps, blk.primitive.coeffs, m, mprime.primes, pts)]
            for d in pts.tolist():
                found.add((L, tuple(d), mprime.primes))
    return found, stats


def block_vanishes_at(blk: LatticeBlock, L: IntMatrix, d: Sequence[int], mprime: int) -> bool:
    """Scalar test of ``G_j(omega_j) == 0`` for the global point ``omega = zeta_{m'}^d``.

    Follows the textbook route: residues ``d_{j,h}`` of the block's basis
    images, their order ``m_j``, then one cyclotomic divisibility test mod
    ``m_j``.  The batched solver path tests the same value mod m' directly.
    """
    from .numbth import radical_factorization

    delta = [coords_in_basis(L, row) for row in blk.basis]
    dj = [sum(x * y for x, y in zip(row, d)) % mprime for row in delta]
    mj = reduce(math.lcm, (mprime // math.gcd(mprime, x) for x in dj), 1)
    scale = mprime // mj
    dj = [x // scale for x in dj]
    G = canonicalize(
        [(c, (sum(a * b for a, b in zip(e, dj)) % mj,)) for c, e in blk.primitive.terms], 1
    )
    return cyclotomic_divides(radical_factorization(mj), G)


def coset_contained_in(inner: TorsionCoset, outer: TorsionCoset) -> bool:
    """Whether ``B(inner) ⊆ B(outer)``: outer's rows lie in inner's lattice with matching values."""
    m1 = inner.omega_modulus.value
    m2 = outer.omega_modulus.value
    for row, r2 in zip(outer.matrix, outer.omega_residues):
        try:
            x = coords_in_basis(inner.matrix, row)
        except NotInLattice:
            return False
        r1 = sum(a * b for a, b in zip(x, inner.omega_residues))
        # zeta_{m1}^{r1} == zeta_{m2}^{r2}
        if (r1 * m2 - r2 * m1) % (m1 * m2):
            return False
    return True


def prune_contained_cosets(cosets) -> list[TorsionCoset]:
    cosets = sorted(set(cosets))
    kept = []
    for a in cosets:
        for b in cosets:
            if b is a or not coset_contained_in(a, b):
                continue
            if not coset_contained_in(b, a) or b < a:
                break
        else:
            kept.append(a)
    return kept


def torsion_cosets_variety(
    polys, *, threads: int = 1, dedupe: str = "exact", stats=None
) -> list[TorsionCoset]:
    """Torsion cosets covering the torsion points of ``F_1 = ... = F_k = 0``.

    Partitions of all polynomials are combined and their blocks pooled;
    the order bound becomes ``sum N_i - 2 (s_total - 1)``.  Zero
    polynomials impose no condition; if all are zero the result is the
    whole torus.  With ``dedupe="containment"`` cosets contained in
    another output coset are dropped.
    """
    if dedupe not in ("exact", "containment"):
        raise ValueError(f"unknown dedupe mode {dedupe!r}")
    t0 = time.perf_counter()
    polys, n = _clean(polys)
    if n < 1:
        raise ValueError("need at least one variable")
    if not polys:
        return [TorsionCoset.whole_torus(n)]
    partitions = list(_pooled_partitions(polys))
    raw, st = _run(_cosets_worker, (polys, n), partitions, threads)
    out = sorted(
        TorsionCoset(L, d, FactoredSquarefree.from_primes(pr), n) for L, d, pr in raw
    )
    if dedupe == "containment":
        out = prune_contained_cosets(out)
    _check_output_size(len(out), polys)
    if stats is not None:
        st.update(output=len(out), elapsed=time.perf_counter() - t0)
        _merge_stats(stats, st)
    return out


def torsion_cosets(F: LacunaryPoly, **kwargs) -> list[TorsionCoset]:
    """Torsion cosets covering ``V(F)_tors``; the zero polynomial gives the whole torus."""
    return torsion_cosets_variety([F], **kwargs)


# ---------------------------------------------------------------------------
# worst-case family


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    factors, cof = trial_factor(p, p)
    return cof == 1 and factors == [(p, 1)]


def build_separated_family(n: int, primes: Sequence[int]):
    """Polynomial with 2n terms divisible by ``X^p - 1`` for each of the n! given primes.

    The n! perfect matchings ``{i, n + sigma(i)}`` (sigma in lexicographic
    order) are tied to ``primes`` in order; exponents are fixed by CRT so
    that matched terms cancel modulo their prime.  Returns
    ``(polynomial, exponents)`` with exponents in term order ``1..2n``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    primes = [int(p) for p in primes]
    if len(primes) != math.factorial(n):
        raise ValueError(f"need exactly {math.factorial(n)} primes, got {len(primes)}")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    bad = [p for p in primes if p <= 2 * n or not _is_prime(p)]
    if bad:
        raise ValueError(f"not primes greater than {2 * n}: {bad}")
    # residue of alpha_{n+j} modulo each prime
    upper = [[0] * len(primes) for _ in range(n)]
    for r, sigma in enumerate(itertools.permutations(range(n))):
        for i in range(n):
            upper[sigma[i]][r] = i
    exponents = list(range(n)) + [crt(res, primes) for res in upper]
    F = LacunaryPoly.univariate(
        [(1, a) for a in exponents[:n]] + [(-1, a) for a in exponents[n:]]
    )
    return F, exponents
