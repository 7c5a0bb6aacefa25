"""Command-line entry point.

Subcommands: cycles, twin, anomalous, classnum, lvalue, gs-report,
deuring, family, mainterm, props, rcount, constants. Exit codes:
0 success, 1 validation error, 2 identity violation, 3 budget refusal.
Column orders and JSON keys are frozen in docs/FORMATS.md.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import time

from . import __version__, arith, classnum, conjectures, family
from .aliquot import CycleSearchConfig, anomalous_primes, find_aliquot_cycles, pi_E_twin
from .curves import CurveZ

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IDENTITY = 2
EXIT_BUDGET = 3

FAMILY_BUDGET = 200_000_000  # A * B * X guard for the family sweep


def _csv_string(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, payload_json: dict, header: list[str], rows: list[list]) -> None:
    if args.format == "json":
        text = json.dumps(payload_json, indent=2, sort_keys=True) + "\n"
    else:
        text = _csv_string(header, rows)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_manifest(args, started: float) -> None:
    manifest = {
        "subcommand": args.command,
        "parameters": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("command", "func", "output") and v is not None
        },
        "artifact_version": __version__,
        "wall_time": time.monotonic() - started,
        "worker_count": getattr(args, "jobs", 1),
    }
    text = json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n"
    if args.output:
        with open(args.output + ".manifest.json", "w") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)


def _make_cache(args) -> classnum.HurwitzCache:
    if getattr(args, "no_cache", False):
        return classnum.HurwitzCache(None)
    path = getattr(args, "cache", None) or classnum.default_cache_path()
    return classnum.HurwitzCache(path)


def _curve(args) -> CurveZ:
    return CurveZ(args.a, args.b)


def cmd_cycles(args) -> int:
    curve = _curve(args)
    cfg = CycleSearchConfig(args.L, args.X, args.min_prime)
    cycles = find_aliquot_cycles(curve, cfg)
    header = [f"p{i + 1}" for i in range(args.L)]
    rows: list[list] = [list(c.primes) for c in cycles]
    rows.append(["pi_E_L", len(cycles)] + [""] * max(0, args.L - 2))
    _emit(
        args,
        {"cycles": [list(c.primes) for c in cycles], "count": len(cycles)},
        header,
        rows,
    )
    return EXIT_OK


def cmd_twin(args) -> int:
    count = pi_E_twin(_curve(args), args.X)
    _emit(args, {"count": count}, ["count"], [[count]])
    return EXIT_OK


def cmd_anomalous(args) -> int:
    primes = anomalous_primes(_curve(args), args.X)
    _emit(args, {"primes": primes, "count": len(primes)}, ["p"], [[p] for p in primes])
    return EXIT_OK


def cmd_classnum(args) -> int:
    cache = _make_cache(args)
    if args.range:
        lo, hi = args.range
        if lo >= 0 or hi >= 0 or lo > hi:
            raise ValueError("range bounds must be negative with Dmin <= Dmax")
        ds = [D for D in range(lo, hi + 1) if D % 4 in (0, 1)]
    else:
        if args.D is None:
            raise ValueError("give D or --range")
        ds = [args.D]
    rows = []
    for D in ds:
        if D >= 0:
            raise ValueError("D must be negative")
        h = cache.get(D)
        rows.append([D, h.numerator * (12 // h.denominator), float(h)])
    cache.flush()
    _emit(
        args,
        {"values": [{"D": r[0], "twelve_H": r[1], "H": r[2]} for r in rows]},
        ["D", "12H", "H"],
        rows,
    )
    return EXIT_OK


def cmd_lvalue(args) -> int:
    lv = classnum.dirichlet_L1(args.D, method=args.method)
    if args.y is not None:
        lv = classnum.truncated_L1(args.D, args.y)
    _emit(
        args,
        {"D": args.D, "method": lv.method, "value": lv.value},
        ["D", "method", "value"],
        [[args.D, lv.method, lv.value]],
    )
    return EXIT_OK


def cmd_gs_report(args) -> int:
    report = classnum.gs_truncation_report(args.Q, args.alpha)
    rows = [[D, err] for D, err in report.rows]
    _emit(
        args,
        {
            "Q": report.Q,
            "alpha": report.alpha,
            "y": report.y,
            "threshold": report.threshold,
            "exceed_count": report.exceed_count,
            "exceed_bound": report.exceed_bound,
            "rows": [{"D": D, "rel_error": err} for D, err in report.rows],
        },
        ["D", "rel_error"],
        rows,
    )
    return EXIT_OK


def cmd_deuring(args) -> int:
    if args.pmax > 1000 and not args.force:
        sys.stderr.write("pmax > 1000 is a brute-force cost wall; rerun with --force\n")
        return EXIT_BUDGET
    cache = _make_cache(args)
    checked = 0
    bad = []
    sweep = arith.primes_in(5, args.pmax).primes if args.pmax >= 5 else ()
    for p in sweep:
        mismatches = family.deuring_identity_holds(p, cache)
        if args.fault_inject and p == args.fault_inject:
            mismatches = [(p + 1, -1, cache.get(classnum.D_of(p, p + 1)))]
        for N, lhs, rhs in mismatches:
            bad.append([p, N, lhs, str(rhs)])
        s = math.isqrt(4 * p)
        checked += sum(
            1 for N in range(p - s, p + 2 + s) if arith.in_hasse_window(p, N)
        )
    cache.flush()
    payload = {"pmax": args.pmax, "pairs_checked": checked, "mismatches": len(bad)}
    if bad:
        _emit(args, payload | {"rows": bad}, ["p", "N", "lhs", "rhs"], bad)
        return EXIT_IDENTITY
    _emit(args, payload, ["pmax", "pairs_checked", "mismatches"], [[args.pmax, checked, 0]])
    return EXIT_OK


def cmd_family(args) -> int:
    if args.A < 1 or args.B < 1:
        raise ValueError("A and B must be >= 1")
    cost = args.A * args.B * args.X
    sys.stderr.write(f"estimated cost index A*B*X = {cost}\n")
    if cost > FAMILY_BUDGET and not args.force:
        sys.stderr.write("beyond the configured budget; rerun with --force\n")
        return EXIT_BUDGET
    cache = _make_cache(args)
    spec = family.FamilySpec(args.A, args.B, args.X, args.L)
    report = family.family_report(spec, jobs=args.jobs, cache=cache)
    cache.flush()
    d = report.to_dict()
    _emit(args, d, list(d.keys()), [list(d.values())])
    return EXIT_OK


def cmd_mainterm(args) -> int:
    cache = _make_cache(args)
    value = family.main_term_sum(args.X, args.L, cache=cache)
    cache.flush()
    _emit(args, {"X": args.X, "L": args.L, "main_term": value}, ["X", "L", "main_term"], [[args.X, args.L, value]])
    return EXIT_OK


def cmd_props(args) -> int:
    cache = _make_cache(args)
    rows = []
    if args.sample:
        ps = sample_primes_log_uniform(args.lo, args.hi, args.sample, args.seed)
    elif args.p:
        ps = [args.p]
    else:
        raise ValueError("give --p or --sample")
    for p in ps:
        r = args.r if args.r is not None else p
        s34, ratio34 = family.prop34_sum(p, cache)
        s33, ratio33 = family.prop33_sum(p, r, cache)
        rows.append([p, r, s34, ratio34, s33, ratio33])
    cache.flush()
    _emit(
        args,
        {
            "rows": [
                {
                    "p": row[0],
                    "r": row[1],
                    "single_sum": row[2],
                    "single_ratio": row[3],
                    "product_sum": row[4],
                    "product_ratio": row[5],
                }
                for row in rows
            ]
        },
        ["p", "r", "single_sum", "single_ratio", "product_sum", "product_ratio"],
        rows,
    )
    return EXIT_OK


def cmd_rcount(args) -> int:
    P = tuple(int(x) for x in args.primes.split(","))
    S = tuple(int(x) for x in args.s.split(","))
    T = tuple(int(x) for x in args.t.split(","))
    count, reference = family.r_count(P, S, T, args.A, args.B)
    _emit(
        args,
        {"count": count, "reference": reference},
        ["count", "reference"],
        [[count, reference]],
    )
    return EXIT_OK


def cmd_constants(args) -> int:
    state = conjectures.jones_C2(args.cutoff)
    _emit(
        args,
        {
            "cutoff": state.cutoff,
            "partial_product": state.partial_product,
            "last_factor": state.last_factor,
        },
        ["cutoff", "partial_product", "last_factor"],
        [[state.cutoff, state.partial_product, state.last_factor]],
    )
    return EXIT_OK


def sample_primes_log_uniform(lo: int, hi: int, n: int, seed: int = 0) -> list[int]:
    """n primes drawn log-uniformly from [lo, hi] (with replacement, seeded)."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        x = int(round(math.exp(rng.uniform(math.log(lo), math.log(hi)))))
        p = x if arith.is_prime(x) else _next_prime(x)
        if p <= hi:
            out.append(p)
    return out


def _next_prime(n: int) -> int:
    n += 1
    while not arith.is_prime(n):
        n += 1
    return n


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="json")
    sub.add_argument("--output", help="write primary output to this file (default stdout)")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--cache", help="Hurwitz cache file (default from ECALIQUOT_HCACHE)")
    sub.add_argument("--no-cache", action="store_true")
    sub.add_argument("--force", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecaliquot")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("cycles", help="normalized aliquot cycles of y^2 = x^3 + a*x + b")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("L", type=int)
    p.add_argument("X", type=int)
    p.add_argument("--min-prime", type=int, default=5)
    p.set_defaults(func=cmd_cycles)

    p = subs.add_parser("twin", help="count primes p <= X with prime group order")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("X", type=int)
    p.set_defaults(func=cmd_twin)

    p = subs.add_parser("anomalous", help="primes p <= X with group order exactly p")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("X", type=int)
    p.set_defaults(func=cmd_anomalous)

    p = subs.add_parser("classnum", help="Hurwitz class numbers (D, 12H, H)")
    p.add_argument("D", type=int, nargs="?")
    p.add_argument("--range", type=int, nargs=2, metavar=("DMIN", "DMAX"))
    p.set_defaults(func=cmd_classnum)

    p = subs.add_parser("lvalue", help="L(1, chi_D) by forms formula, series, or truncation")
    p.add_argument("D", type=int)
    p.add_argument("--method", choices=("forms-formula", "series"), default="forms-formula")
    p.add_argument("--y", type=float, help="truncate the Euler product at y instead")
    p.set_defaults(func=cmd_lvalue)

    p = subs.add_parser("gs-report", help="truncation quality table over conductors <= Q")
    p.add_argument("Q", type=int)
    p.add_argument("--alpha", type=float, default=1.0)
    p.set_defaults(func=cmd_gs_report)

    p = subs.add_parser("deuring", help="verify the exact pair-count identity up to pmax")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--fault-inject", type=int, help="test hook: force a mismatch at this prime")
    p.set_defaults(func=cmd_deuring)

    p = subs.add_parser("family", help="family report for C(A,B)")
    p.add_argument("A", type=int)
    p.add_argument("B", type=int)
    p.add_argument("X", type=int)
    p.add_argument("L", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_family)

    p = subs.add_parser("mainterm", help="class-number chain sum up to X")
    p.add_argument("X", type=int)
    p.add_argument("L", type=int)
    p.set_defaults(func=cmd_mainterm)

    p = subs.add_parser("props", help="short-interval class-number sums and ratios")
    p.add_argument("--p", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--sample", type=int, help="sample this many primes log-uniformly")
    p.add_argument("--lo", type=int, default=1000)
    p.add_argument("--hi", type=int, default=10000)
    p.set_defaults(func=cmd_props)

    p = subs.add_parser("rcount", help="twist-orbit lift counter R(P,S,T)")
    p.add_argument("--primes", required=True, help="comma-separated p_1,...,p_L")
    p.add_argument("--s", required=True, help="comma-separated s_1,...,s_L")
    p.add_argument("--t", required=True, help="comma-separated t_1,...,t_L")
    p.add_argument("-A", type=int, required=True)
    p.add_argument("-B", type=int, required=True)
    p.set_defaults(func=cmd_rcount)

    p = subs.add_parser("constants", help="partial Euler product for the pair constant")
    p.add_argument("--cutoff", type=int, required=True)
    p.set_defaults(func=cmd_constants)

    for sub_name, sub_parser in subs.choices.items():
        _add_common(sub_parser)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        code = args.func(args)
    except (ValueError, OverflowError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    _write_manifest(args, started)
    return code


if __name__ == "__main__":
    sys.exit(main())
