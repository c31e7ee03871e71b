"""Hot kernels for the cyclotomic vanishing test.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy/pure-Python ``_pykernels`` module.  Set ``TORUS_TORSION_PURE_PYTHON=1``
to force the fallback, or call :func:`set_backend`.

Both kernels decide ``sum_i a_i zeta_m^{r_i} == 0`` for residues ``r_i`` in
``[0, m)``.  Inputs that would overflow int64 or need a huge dense buffer go
through an exact big-integer path instead.
"""

import os
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_impl = _pykernels
BACKEND = "python"

MAX_DENSE_MODULUS = 1 << 22
_SAFE = 1 << 60


def available_backends():
    return ["compiled", "python"] if _ckernels is not None else ["python"]


def set_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous backend name."""
    global _impl, BACKEND
    prev = BACKEND
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _impl = _ckernels
    elif name == "python":
        _impl = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return prev


if _ckernels is not None and os.environ.get("TORUS_TORSION_PURE_PYTHON", "") in ("", "0"):
    set_backend("compiled")


@lru_cache(maxsize=4096)
def product_shifts(m, primes):
    """Exponents and signs of the expansion of ``prod_{p | m} (X^{m/p} - 1)`` mod ``X^m - 1``."""
    shifts, signs = [], []
    w = len(primes)
    for r in range(w + 1):
        for sub in combinations(primes, r):
            shifts.append(sum(m // p for p in sub) % m)
            signs.append(-1 if (w - r) % 2 else 1)
    return np.array(shifts, dtype=np.int64), np.array(signs, dtype=np.int64)


def _fits(coeffs, nsub):
    bound = max((abs(c) for c in coeffs), default=0) * max(len(coeffs), 1) * nsub
    return bound < _SAFE


def _big_vanishes(residues, coeffs, m, shifts, signs):
    acc = {}
    for r, c in zip(residues, coeffs):
        for sh, sg in zip(shifts.tolist(), signs.tolist()):
            idx = (r + sh) % m
            acc[idx] = acc.get(idx, 0) + sg * c
    return not any(acc.values())


def divides_reduced(residues, coeffs, m, primes):
    """Whether ``Phi_m`` divides ``sum_i coeffs[i] X^residues[i]`` (residues in ``[0, m)``)."""
    shifts, signs = product_shifts(m, tuple(primes))
    if m > MAX_DENSE_MODULUS or not _fits(coeffs, len(shifts)):
        return _big_vanishes(residues, coeffs, m, shifts, signs)
    return _impl.divides_reduced(
        np.asarray(residues, dtype=np.int64),
        np.asarray(coeffs, dtype=np.int64),
        m,
        shifts,
        signs,
    )


def vanishing_mask(exps, coeffs, m, primes, points):
    """Row mask over ``points``: does ``sum_i a_i zeta_m^{<exps_i, point>}`` vanish?

    ``exps`` is an (N, k) array of exponents already reduced mod m and
    ``points`` a (P, k) array of residues mod m.
    """
    shifts, signs = product_shifts(m, tuple(primes))
    points = np.ascontiguousarray(points, dtype=np.int64)
    if m > MAX_DENSE_MODULUS or not _fits(coeffs, len(shifts)):
        ex = [list(map(int, row)) for row in exps]
        return np.array(
            [
                _big_vanishes(
                    [sum(a * b for a, b in zip(row, pt)) % m for row in ex], coeffs, m, shifts, signs
                )
                for pt in points.tolist()
            ],
            dtype=bool,
        )
    return _impl.vanishing_mask(
        np.ascontiguousarray(exps, dtype=np.int64),
        np.asarray(coeffs, dtype=np.int64),
        m,
        shifts,
        signs,
        points,
    )
