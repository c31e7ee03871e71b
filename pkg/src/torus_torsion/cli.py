"""Command line interface.

Input files look like::

    {"vars": 2, "polys": [{"terms": [{"coeff": "1", "exp": ["1", "1"]},
                                     {"coeff": "-1", "exp": ["0", "0"]}]}]}

(``"exp": "<decimal>"`` is accepted for one variable).  All integers in
the output are decimal strings.

Exit codes: 0 success, 1 bad input, 2 internal assertion,
3 incomplete factorization during ``--expand``/``expand``, 4 ``verify``
found a mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import CyclotomicPair, FactoredSquarefree, LacunaryPoly, TorsionCoset, WholeTorus
from .numbth import DEFAULT_FACTOR_BOUND, compute_QN, prime_divisors
from .solver import (
    IncompleteFactorization,
    build_separated_family,
    common_cyclotomic_pairs,
    expand_pairs,
    torsion_cosets_variety,
)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_FACTOR, EXIT_MISMATCH = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


# -- serialization -------------------------------------------------------------


def _int(x, what) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{what}: expected a decimal string, got {x!r}")
    try:
        return int(x)
    except ValueError:
        raise InputError(f"{what}: {x!r} is not a decimal integer") from None


def parse_polys(doc) -> tuple[int, list[LacunaryPoly]]:
    """Decode the input JSON object into ``(num_vars, polys)``."""
    if not isinstance(doc, dict) or "vars" not in doc or "polys" not in doc:
        raise InputError('input must be an object with "vars" and "polys"')
    n = _int(doc["vars"], "vars")
    if n < 1:
        raise InputError("vars must be at least 1")
    polys = []
    for pi, poly in enumerate(doc["polys"]):
        raw = []
        for ti, term in enumerate(poly.get("terms", [])):
            where = f"polys[{pi}].terms[{ti}]"
            c = _int(term["coeff"], where + ".coeff")
            e = term["exp"]
            exp = (_int(e, where + ".exp"),) if not isinstance(e, list) else tuple(
                _int(x, where + ".exp") for x in e
            )
            if len(exp) != n:
                raise InputError(f"{where}: exponent has {len(exp)} entries, expected {n}")
            if any(x < 0 for x in exp):
                raise InputError(f"{where}: exponents must be nonnegative")
            raw.append((c, exp))
        polys.append(LacunaryPoly.from_terms(raw, n))
    if not polys:
        raise InputError("no polynomials given")
    return n, polys


def serialize_polys(n: int, polys) -> dict:
    return {
        "vars": n,
        "polys": [
            {"terms": [{"coeff": str(c), "exp": [str(x) for x in e]} for c, e in F.terms]}
            for F in polys
        ],
    }


def serialize_pairs(pairs) -> list:
    return [{"m": str(p.m.value), "e": str(p.e)} for p in pairs]


def parse_pairs(doc) -> list[CyclotomicPair]:
    try:
        items = doc["pairs"]
        pairs = []
        for i, it in enumerate(items):
            m = _int(it["m"], f"pairs[{i}].m")
            e = _int(it["e"], f"pairs[{i}].e")
            if m < 1 or e < 1:
                raise InputError(f"pairs[{i}]: m and e must be positive")
            fm = FactoredSquarefree.from_primes(prime_divisors(m))
            if fm.value != m:
                raise InputError(f"pairs[{i}]: m={m} is not squarefree")
            pairs.append(CyclotomicPair(fm, e))
        return pairs
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed pair list: {exc}") from None


def serialize_cosets(cosets) -> list:
    return [
        {
            "L": [[str(x) for x in row] for row in c.matrix],
            "omega": {
                "residues": [str(r) for r in c.omega_residues],
                "modulus": str(c.omega_modulus.value),
            },
        }
        for c in cosets
    ]


def parse_cosets(doc, n: int) -> list[TorsionCoset]:
    try:
        out = []
        for i, it in enumerate(doc["cosets"]):
            L = tuple(tuple(_int(x, f"cosets[{i}].L") for x in row) for row in it["L"])
            res = tuple(_int(r, f"cosets[{i}].omega") for r in it["omega"]["residues"])
            mod = _int(it["omega"]["modulus"], f"cosets[{i}].omega.modulus")
            fm = FactoredSquarefree.from_primes(prime_divisors(mod))
            out.append(TorsionCoset(L, res, fm, n))
        return out
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed coset list: {exc}") from None


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_stats(stats):
    sys.stderr.write(json.dumps({"stats": stats}, indent=2, default=str) + "\n")


# -- subcommands ---------------------------------------------------------------


def cmd_cyclo(args, out):
    n, polys = parse_polys(_load(args.input))
    if n != 1:
        raise InputError("cyclo needs univariate input (vars = 1)")
    stats = {} if args.stats else None
    try:
        pairs = common_cyclotomic_pairs(polys, threads=args.threads, prune=not args.raw, stats=stats)
    except WholeTorus:
        _emit({"pairs": [], "whole_torus": True}, out)
        return EXIT_OK
    result = {"pairs": serialize_pairs(pairs)}
    if args.expand:
        result["expanded"] = [str(M) for M in expand_pairs(pairs, args.factor_bound)]
    if stats is not None:
        stats.update(terms=[len(F) for F in polys], degree=[str(F.degree) for F in polys])
        _emit_stats(stats)
    _emit(result, out)
    return EXIT_OK


def cmd_cosets(args, out):
    n, polys = parse_polys(_load(args.input))
    stats = {} if args.stats else None
    cosets = torsion_cosets_variety(polys, threads=args.threads, dedupe=args.dedupe, stats=stats)
    if stats is not None:
        stats.update(terms=[len(F) for F in polys])
        _emit_stats(stats)
    _emit({"cosets": serialize_cosets(cosets)}, out)
    return EXIT_OK


def cmd_expand(args, out):
    pairs = parse_pairs(_load(args.input))
    _emit(
        {
            "pairs": serialize_pairs(pairs),
            "expanded": [str(M) for M in expand_pairs(pairs, args.factor_bound)],
        },
        out,
    )
    return EXIT_OK


def cmd_build_worstcase(args, out):
    primes = [_int(p, "primes") for p in args.primes.replace(",", " ").split()]
    F, exps = build_separated_family(args.n, primes)
    doc = serialize_polys(1, [F])
    doc["exponents"] = [str(a) for a in exps]
    _emit(doc, out)
    return EXIT_OK


def cmd_qn(args, out):
    if args.n < 0:
        raise InputError("N must be nonnegative")
    _emit([str(m.value) for m in compute_QN(args.n)], out)
    return EXIT_OK


def cmd_verify(args, out):
    from . import oracle

    n, polys = parse_polys(_load(args.input))
    result = _load(args.result)
    M = args.max_order
    report = {"max_order": M}
    if "pairs" in result:
        if n != 1:
            raise InputError("a pair list only makes sense for univariate input")
        pairs = parse_pairs(result)
        claimed = {m for m in range(1, M + 1) if any(p.contains_order(m) for p in pairs)}
        if result.get("whole_torus"):
            claimed = set(range(1, M + 1))
        actual = set(range(1, M + 1))
        for F in polys:
            if not F.is_zero:
                actual &= set(oracle.brute_force_cyclotomic(F, M))
        missing, spurious = sorted(actual - claimed), sorted(claimed - actual)
        report.update(missing=[str(m) for m in missing], spurious=[str(m) for m in spurious])
    elif "cosets" in result:
        cosets = parse_cosets(result, n)
        actual = None
        for F in polys:
            pts = oracle.vanishing_points(F, M)
            actual = pts if actual is None else actual & pts
        claimed = set()
        for c in cosets:
            claimed |= oracle.coset_points(c, M)
        fmt = lambda s: [{"residues": [str(x) for x in d], "modulus": str(m)} for m, d in sorted(s)]
        report.update(missing=fmt(actual - claimed), spurious=fmt(claimed - actual))
    else:
        raise InputError('result file has neither "pairs" nor "cosets"')
    report["ok"] = not report["missing"] and not report["spurious"]
    _emit(report, out)
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    default_threads = int(os.environ.get("TORUS_TORSION_THREADS", "1") or 1)
    p = argparse.ArgumentParser(
        prog="torus-torsion",
        description="Torsion points of sparse integer polynomial systems.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("input", help="input JSON file ('-' for stdin)")
        sp.add_argument("--threads", type=int, default=default_threads,
                        help="worker processes over partitions (default: $TORUS_TORSION_THREADS or 1)")
        sp.add_argument("--stats", action="store_true", help="print counters and timing to stderr")

    sp = sub.add_parser("cyclo", help="cyclotomic factors of univariate polynomials as (m, e) pairs")
    solver_flags(sp)
    sp.add_argument("--expand", action="store_true", help="also list the cyclotomic indices")
    sp.add_argument("--factor-bound", type=int, default=DEFAULT_FACTOR_BOUND)
    sp.add_argument("--raw", action="store_true", help="keep pairs covered by other pairs")
    sp.set_defaults(func=cmd_cyclo)

    sp = sub.add_parser("cosets", help="torsion cosets of a hypersurface or variety")
    solver_flags(sp)
    sp.add_argument("--dedupe", choices=["exact", "containment"], default="exact")
    sp.set_defaults(func=cmd_cosets)

    sp = sub.add_parser("expand", help="expand a pair list into cyclotomic indices")
    sp.add_argument("input", help="JSON with a \"pairs\" list")
    sp.add_argument("--factor-bound", type=int, default=DEFAULT_FACTOR_BOUND)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("build-worstcase", help="2n-term polynomial with n! separated pairs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--primes", required=True, help="n! distinct primes > 2n, comma separated")
    sp.set_defaults(func=cmd_build_worstcase)

    sp = sub.add_parser("qn", help="list the squarefree m with psi(m) <= N")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_qn)

    sp = sub.add_parser("verify", help="check a result file against brute force")
    sp.add_argument("input")
    sp.add_argument("result")
    sp.add_argument("--max-order", type=int, default=30)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except IncompleteFactorization as exc:
        print(f"error: incomplete factorization: {exc}", file=sys.stderr)
        return EXIT_FACTOR
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())
