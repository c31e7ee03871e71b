"""Runtime of ``cyclo --stats`` on fixed-N inputs as the degree grows.

    python3 benchmarks/bench_degree.py [--terms 8] [--repeat 5]
"""

import argparse
import contextlib
import io
import json
import os
import random
import tempfile

from torus_torsion.cli import run


def instance(d, N, seed):
    rng = random.Random(seed)
    half = N // 2
    exps = set(range(half)) | {d}
    while len(exps) < N:
        exps.add(rng.randint(half, d - 1))
    terms = [(1 if i < half else -1, e) for i, e in enumerate(sorted(exps))]
    return {"vars": 1, "polys": [{"terms": [{"coeff": str(c), "exp": str(e)} for c, e in terms]}]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--exponents", default="3,6,9,12,24,48,96")
    args = ap.parse_args()
    print(f"{'degree':>8} {'partitions':>11} {'orders':>8} {'tests':>8} {'pairs':>6} {'median ms':>10} {'ratio':>6}")
    prev = None
    with tempfile.TemporaryDirectory() as tmp:
        for k in map(int, args.exponents.split(",")):
            path = os.path.join(tmp, f"d{k}.json")
            with open(path, "w") as fh:
                json.dump(instance(10**k, args.terms, k), fh)
            runs = []
            for _ in range(args.repeat):
                err = io.StringIO()
                with contextlib.redirect_stderr(err):
                    run(["cyclo", path, "--stats"], io.StringIO())
                runs.append(json.loads(err.getvalue())["stats"])
            runs.sort(key=lambda s: s["elapsed"])
            st = runs[len(runs) // 2]
            t = st["elapsed"]
            ratio = f"{t / prev:.2f}" if prev else "-"
            print(f"{'10^' + str(k):>8} {st['partitions']:>11} {st['orders_tried']:>8} "
                  f"{st['block_tests']:>8} {st['output']:>6} {t * 1000:>10.1f} {ratio:>6}")
            prev = t


if __name__ == "__main__":
    main()
