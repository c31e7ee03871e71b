import itertools
import math
import random

import pytest

from torus_torsion import FactoredSquarefree
from torus_torsion.numbth import (
    compute_QN,
    crt,
    enumerate_order_tuples,
    order_tuples_array,
    primes_upto,
    psi,
    trial_factor,
)


def _prime_divisors(m):
    return [p for p in range(2, m + 1) if m % p == 0 and all(p % q for q in range(2, p))]


def _is_squarefree(m):
    return all(m % (p * p) for p in _prime_divisors(m))


def brute_QN(N):
    """Filter every m up to exp(3 sqrt(N log N)), which bounds every element of Q_N."""
    bound = int(math.exp(3 * math.sqrt(N * math.log(N)))) if N >= 2 else 1
    spf = list(range(bound + 1))  # smallest prime factor table
    for p in range(2, math.isqrt(bound) + 1):
        if spf[p] == p:
            for q in range(p * p, bound + 1, p):
                if spf[q] == q:
                    spf[q] = p
    out = []
    for m in range(1, bound + 1):
        x, primes, ok = m, [], True
        while x > 1:
            p = spf[x]
            x //= p
            if x % p == 0:
                ok = False
                break
            primes.append(p)
        if ok and 2 + sum(p - 2 for p in primes) <= N:
            out.append(m)
    return out


def brute_order_tuples(m, k):
    return [
        d for d in itertools.product(range(m), repeat=k)
        if math.lcm(*(m // math.gcd(m, x) for x in d)) == m
    ]


def fs(m):
    return FactoredSquarefree.from_primes(_prime_divisors(m))


@pytest.mark.parametrize("m,expected", [(1, 2), (2, 2), (30, 6)])
def test_psi(m, expected):
    assert psi(fs(m)) == expected


@pytest.mark.parametrize(
    "B,expected",
    [(0, []), (1, []), (10, [2, 3, 5, 7]), (30, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])],
)
def test_primes_upto(B, expected):
    assert primes_upto(B) == expected


def test_primes_upto_matches_trial_division():
    assert primes_upto(500) == [p for p in range(2, 501) if _prime_divisors(p) == [p]]


@pytest.mark.parametrize(
    "N,expected", [(2, [1, 2]), (3, [1, 2, 3, 6]), (5, [1, 2, 3, 5, 6, 10])]
)
def test_compute_QN_examples(N, expected):
    assert brute_QN(N) == expected
    assert [m.value for m in compute_QN(N)] == expected


@pytest.mark.parametrize("N", range(2, 10))
def test_compute_QN_matches_brute_force(N):
    got = compute_QN(N)
    assert [m.value for m in got] == brute_QN(N)
    assert all(math.prod(m.primes) == m.value for m in got)


def test_compute_QN_small_N_is_empty():
    assert compute_QN(0) == [] and compute_QN(1) == []


def test_QN_monotone_and_bounded():
    for N in range(2, 13):
        cur = {m.value for m in compute_QN(N)}
        assert cur <= {m.value for m in compute_QN(N + 1)}
        assert len(cur) <= math.exp(3 * math.sqrt(N * math.log(N)))


def test_psi_subadditive_on_coprime_pairs():
    rng = random.Random(2)
    pool = primes_upto(60)
    for _ in range(1000):
        chosen = rng.sample(pool, rng.randint(0, 6))
        cut = rng.randint(0, len(chosen))
        a = FactoredSquarefree.from_primes(chosen[:cut])
        b = FactoredSquarefree.from_primes(chosen[cut:])
        ab = FactoredSquarefree.from_primes(chosen)
        assert psi(ab) == psi(a) + psi(b) - 2


def test_psi_subadditive_general():
    rng = random.Random(3)
    pool = primes_upto(40)
    for _ in range(1000):
        ms = [rng.sample(pool, rng.randint(0, 4)) for _ in range(rng.randint(1, 4))]
        prod = FactoredSquarefree.from_primes(set().union(*map(set, ms)))
        assert psi(prod) <= sum(psi(FactoredSquarefree.from_primes(x)) for x in ms) - 2 * (len(ms) - 1)


@pytest.mark.parametrize(
    "m,k,expected",
    [(1, 2, [(0, 0)]), (2, 2, [(0, 1), (1, 0), (1, 1)]), (6, 1, [(1,), (5,)])],
)
def test_enumerate_order_tuples_examples(m, k, expected):
    assert brute_order_tuples(m, k) == expected
    assert enumerate_order_tuples(fs(m), k) == expected


def test_enumerate_order_tuples_counts():
    for m in range(1, 31):
        if not _is_squarefree(m):
            continue
        for k in (1, 2, 3):
            got = enumerate_order_tuples(fs(m), k)
            assert got == brute_order_tuples(m, k)
            assert order_tuples_array(fs(m), k).tolist() == [list(d) for d in got]


def test_enumerate_order_tuples_rejects_k0():
    with pytest.raises(ValueError):
        enumerate_order_tuples(fs(2), 0)


def test_crt_examples():
    assert crt([0], [7]) == 0
    assert [x for x in range(35) if x % 5 == 1 and x % 7 == 2] == [16]
    assert crt([1, 2], [5, 7]) == 16
    assert crt([1, 2, 0, 0, 2, 1], [7, 11, 13, 17, 19, 23]) == 2501941


def test_crt_random_against_reduction():
    rng = random.Random(5)
    pool = primes_upto(200)
    for _ in range(200):
        mods = rng.sample(pool, rng.randint(1, 5))
        res = [rng.randrange(q) for q in mods]
        x = crt(res, mods)
        assert 0 <= x < math.prod(mods)
        assert all(x % q == r for r, q in zip(res, mods))


def test_crt_rejects_non_coprime():
    with pytest.raises(ValueError):
        crt([1, 1], [4, 6])


@pytest.mark.parametrize(
    "x,bound,expected",
    [(22, 10**6, ([(2, 1), (11, 1)], 1)), (1, 10**6, ([], 1)), (4 * 101, 10, ([(2, 2)], 101))],
)
def test_trial_factor(x, bound, expected):
    assert trial_factor(x, bound) == expected


def test_trial_factor_reconstructs():
    rng = random.Random(7)
    for _ in range(300):
        x = rng.randint(1, 10**7)
        factors, cof = trial_factor(x, 1000)
        assert math.prod(p**k for p, k in factors) * cof == x
        assert all(p <= 1000 for p, _ in factors)
        assert cof == 1 or all(cof % p for p in range(2, 1001))
