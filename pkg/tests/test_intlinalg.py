import random
from fractions import Fraction

import pytest

from torus_torsion.intlinalg import NotInLattice, coords_in_basis, hnf, is_hnf


def rational_solve(B, v):
    """Solve x . B = v over Q by Gauss-Jordan on B^T; None if inconsistent."""
    rows, cols = len(B), len(v)
    # augmented system: sum_i x_i B[i][j] = v[j], one equation per column j
    A = [[Fraction(B[i][j]) for i in range(rows)] + [Fraction(v[j])] for j in range(cols)]
    piv_cols, r = [], 0
    for c in range(rows):
        pr = next((i for i in range(r, cols) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        A[r] = [x / A[r][c] for x in A[r]]
        for i in range(cols):
            if i != r and A[i][c] != 0:
                A[i] = [a - A[i][c] * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in A):
        return None
    x = [Fraction(0)] * rows
    for i, c in enumerate(piv_cols):
        x[c] = A[i][-1]
    return x


def in_integer_span(B, v):
    """v in the Z-span of the rows of B (B linearly independent, so the solution is unique)."""
    x = rational_solve(B, v)
    return x is not None and all(t.denominator == 1 for t in x)


def test_identity():
    assert hnf([[1, 0], [0, 1]]) == ((1, 0), (0, 1))


def test_two_by_two_example():
    H = hnf([[2, 4], [1, 1]])
    assert H == ((1, 1), (0, 2))
    for row in ([2, 4], [1, 1]):
        assert in_integer_span(H, row)
    for row in H:
        x = rational_solve([[2, 4], [1, 1]], row)
        assert all(t.denominator == 1 for t in x)


def test_rank_deficient():
    assert hnf([[0, 0], [3, 6]]) == ((3, 6),)
    assert hnf([[0, 0]]) == ()
    assert hnf([]) == ()


def test_coords_examples():
    assert coords_in_basis(((1, 1), (0, 2)), (3, 5)) == (3, 1)
    assert coords_in_basis(((1, 0), (0, 1)), (-7, 12)) == (-7, 12)
    with pytest.raises(NotInLattice):
        coords_in_basis(((2, 0),), (3, 0))
    with pytest.raises(NotInLattice):
        coords_in_basis(((1, 0),), (0, 1))


def random_matrices(count=200, seed=13):
    rng = random.Random(seed)
    for _ in range(count):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        yield [[rng.randint(-50, 50) if rng.random() < 0.8 else 0 for _ in range(c)] for _ in range(r)]


def test_hnf_properties():
    for M in random_matrices():
        H = hnf(M)
        assert is_hnf(H)
        assert hnf(H) == H
        for row in M:
            x = coords_in_basis(H, row)
            assert [sum(a * b[j] for a, b in zip(x, H)) for j in range(len(row))] == row
            assert in_integer_span(H, row)
        nonzero = [row for row in M if any(row)]
        for row in H:
            assert in_integer_span_of_generators(nonzero, row)


def in_integer_span_of_generators(gens, v):
    """Is v an integer combination of possibly dependent generators?

    Adding a vector of the rational span leaves the lattice unchanged iff the
    gcd of the maximal minors (the lattice covolume) stays the same.
    """
    if _rank(gens + [list(v)]) != _rank(gens):
        return False
    return _minor_gcd(gens + [list(v)]) == _minor_gcd(gens)


def _minor_gcd(rows):
    import itertools
    import math

    rank = _rank(rows)
    if rank == 0:
        return 0
    g = 0
    ncols = len(rows[0])
    for rs in itertools.combinations(range(len(rows)), rank):
        for cs in itertools.combinations(range(ncols), rank):
            g = math.gcd(g, _det([[rows[i][j] for j in cs] for i in rs]))
    return g


def _rank(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(len(A[0]) if A else 0):
        pr = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[rank], A[pr] = A[pr], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def _det(M):
    A = [[Fraction(x) for x in r] for r in M]
    n, det = len(A), Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(det)


def test_row_permutation_invariance():
    rng = random.Random(17)
    for M in random_matrices(100, seed=19):
        P = M[:]
        rng.shuffle(P)
        assert hnf(P) == hnf(M)
