"""Compiled vs pure-Python kernels on the two hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import time

import numpy as np

from torus_torsion import _kernels
from torus_torsion.numbth import prime_divisors
from torus_torsion.oracle import points_of_order


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_divides(rng, m, nterms, calls):
    primes = prime_divisors(m)
    cases = [
        (sorted(rng.sample(range(m), nterms)), [rng.choice([-2, -1, 1, 2]) for _ in range(nterms)])
        for _ in range(calls)
    ]
    return lambda: [_kernels.divides_reduced(r, c, m, primes) for r, c in cases]


def bench_mask(rng, n, m, nterms):
    primes = prime_divisors(m)
    pts = points_of_order(n, m)
    exps = np.array([[rng.randrange(m) for _ in range(n)] for _ in range(nterms)], dtype=np.int64)
    coeffs = [rng.choice([-1, 1]) for _ in range(nterms)]
    return (lambda: _kernels.vanishing_mask(exps, coeffs, m, primes, pts)), len(pts)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':<38}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)

    cases = []
    for m, nterms in [(210, 6), (30030, 8), (510510, 8)]:
        cases.append((f"divides_reduced m={m} N={nterms} x2000", bench_divides, (m, nterms, 2000)))
    for n, m in [(2, 210), (3, 60), (3, 143)]:
        cases.append((f"vanishing_mask n={n} m={m}", bench_mask, (n, m, 6)))

    for label, make, params in cases:
        times = []
        for b in backends:
            prev = _kernels.set_backend(b)
            try:
                made = make(random.Random(0), *params)
                fn = made[0] if isinstance(made, tuple) else made
                if isinstance(made, tuple):
                    label_full = f"{label} ({made[1]} pts)"
                else:
                    label_full = label
                times.append(_best(fn, args.repeat))
            finally:
                _kernels.set_backend(prev)
        row = f"{label_full:<38}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
