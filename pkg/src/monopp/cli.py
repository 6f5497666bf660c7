"""Command line entry point.

Exit codes: 0 all expectations met, 1 mathematical discrepancy found,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import report
from .filters import alpha
from .ffield import field_for_q
from .modarith import is_prime, prime_power
from .monograph import (
    FULL,
    SYMMETRY,
    GraphBoundError,
    MonomialGraphSpec,
    census_specs,
    girth,
)
from .permpoly import p_powers
from .runner import (
    FILTER_KEYS,
    POWSUM_KEYS,
    SCAN_KEYS,
    filters_chunk,
    odd_prime_powers,
    powsum_chunk,
    run_tasks,
    scan_chunk,
    scan_tasks,
)

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2
SCAN_Q_BOUND = 2401
GIRTH_KEYS = ("q", "m1", "n1", "m2", "n2", "girth", "expected", "golden", "certificate")
ALPHA_KEYS = ("p", "alpha", "is_exception", "alpha_gt_half")


class UsageError(Exception):
    pass


def _parse_qs(args) -> list[int]:
    qs: list[int] = []
    for item in args.q or []:
        for tok in str(item).split(","):
            tok = tok.strip()
            if not tok:
                continue
            try:
                qs.append(int(tok))
            except ValueError:
                raise UsageError(f"invalid q {tok!r}") from None
    if args.q_max is not None:
        qs.extend(odd_prime_powers(args.q_max))
    if not qs:
        raise UsageError("give --q and/or --q-max")
    for q in qs:
        if prime_power(q) is None:
            raise UsageError(f"q = {q} is not a prime power")
        if q > SCAN_Q_BOUND:
            raise UsageError(f"q = {q} exceeds the bound {SCAN_Q_BOUND}")
    return sorted(set(qs))


def _k_range(args) -> tuple[int, int | None]:
    lo = args.k_from
    hi = args.k_to
    if lo < 1 or (hi is not None and hi < lo):
        raise UsageError(f"malformed k range [{lo}, {hi}]")
    return lo, hi


def _emit(args, argv, records, keys, summary, command) -> None:
    if args.out:
        path = Path(args.out)
        with open(path, "w", encoding="utf-8") as fh:
            report.write_report(fh, argv, records, keys, args.format, summary)
        if args.plot:
            from .plotting import PLOTTERS

            PLOTTERS[command](records, path.with_suffix(".png"))
    else:
        if args.plot:
            raise UsageError("--plot needs --out (the figure is written next to it)")
        report.write_report(sys.stdout, argv, records, keys, args.format, summary)


# --- commands --------------------------------------------------------------------

def cmd_scan(args, argv) -> int:
    qs = _parse_qs(args)
    lo, hi = _k_range(args)
    tasks = scan_tasks(qs, lo, hi, args.jobs)
    records = run_tasks(scan_chunk, tasks, args.jobs, kind=args.kind, method=args.method)
    pp_sets = {}
    for r in records:
        verdicts = [r[f"verdict_{x}"][0]["is_pp"] for x in ("A", "B") if r[f"verdict_{x}"]]
        if all(verdicts):
            pp_sets.setdefault(str(r["q"]), []).append(r["k"])
    bad = [r for r in records if r["discrepancy"] and r["q"] % 2]
    exploratory = sorted({r["q"] for r in records if r["q"] % 2 == 0})
    summary = {
        "kind": args.kind,
        "method": args.method,
        "records": len(records),
        "pp_sets": {str(q): pp_sets.get(str(q), []) for q in qs},
        "p_powers": {str(q): [k for k in p_powers(prime_power(q)[0], q)
                              if k >= lo and (hi is None or k <= hi)] for q in qs},
        "discrepancies": [[r["q"], r["k"]] for r in bad],
        "exploratory_q": exploratory,
    }
    _emit(args, argv, records, SCAN_KEYS, summary, "scan")
    return EXIT_DISCREPANCY if bad else EXIT_OK


def cmd_alpha(args, argv) -> int:
    if args.count is None and args.p_max is None:
        raise UsageError("give --p-max or --count")
    if args.p_max is not None and args.p_max < 3:
        raise UsageError("--p-max must be at least 3")
    primes = []
    p = 3
    while True:
        if args.p_max is not None and p > args.p_max:
            break
        if args.count is not None and len(primes) >= args.count:
            break
        if is_prime(p):
            primes.append(p)
        p += 2
    records = []
    for p in primes:
        a = alpha(p)
        records.append({"p": p, "alpha": a.alpha, "is_exception": a.is_exception,
                        "alpha_gt_half": 2 * a.alpha > p - 1})
    violations = [r["p"] for r in records
                  if not (r["alpha"] == r["p"] - 1 or 2 * r["alpha"] <= r["p"] - 1)]
    summary = {"primes": len(records), "exceptions": sum(r["is_exception"] for r in records),
               "dichotomy_violations": violations}
    _emit(args, argv, records, ALPHA_KEYS, summary, "alpha")
    return EXIT_DISCREPANCY if violations else EXIT_OK


def _parse_spec(text: str) -> tuple[int, int, int, int]:
    try:
        parts = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"malformed spec {text!r}") from None
    if len(parts) != 4:
        raise UsageError("--spec needs four exponents m1,n1,m2,n2")
    return parts


def _expected_girth(spec: MonomialGraphSpec, family: str, p: int) -> int | None:
    if family == "gamma3":
        return 8
    if family == "gamma":
        # G_q(XY, X^k Y^2k) with k a power of p is a Frobenius relabelling of Gamma_3(q)
        if spec.m2 in p_powers(p, spec.q):
            return 8
    return None


def cmd_girth(args, argv) -> int:
    qs = _parse_qs(args)
    golden = None
    if args.golden:
        golden = {(g["q"], g["m1"], g["n1"], g["m2"], g["n2"]): g["girth"]
                  for g in report.read_jsonl_records(Path(args.golden).read_text(encoding="utf-8"))}
    family = "spec" if args.spec else args.family
    records = []
    for q in qs:
        ctx = field_for_q(q)
        if args.spec:
            try:
                specs = [MonomialGraphSpec(q, *_parse_spec(args.spec))]
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            if family == "full" and q > 5:
                raise UsageError("full exponent enumeration is limited to q <= 5")
            specs = census_specs(q, family)
        for spec in specs:
            try:
                res = girth(ctx, spec, args.mode)
            except GraphBoundError as exc:
                raise UsageError(str(exc)) from None
            rec = dict(zip(("q", "m1", "n1", "m2", "n2"), (q,) + spec.exponents))
            rec["girth"] = res.girth
            rec["expected"] = _expected_girth(spec, family, ctx.p)
            rec["golden"] = None if golden is None else golden.get((q,) + spec.exponents)
            rec["certificate"] = list(res.certificate) if args.certificate else None
            records.append(rec)
    mismatches = [r for r in records
                  if (r["expected"] is not None and r["girth"] != r["expected"])
                  or (golden is not None and r["girth"] != r["golden"])]
    census = {}
    for r in records:
        key = f'{r["q"]}:{r["girth"]}'
        census[key] = census.get(key, 0) + 1
    summary = {"graphs": len(records), "mode": args.mode, "census": census,
               "mismatches": [[r["q"], r["m1"], r["n1"], r["m2"], r["n2"]] for r in mismatches]}
    _emit(args, argv, records, GIRTH_KEYS, summary, "girth")
    return EXIT_DISCREPANCY if mismatches else EXIT_OK


def cmd_filters(args, argv) -> int:
    qs = _parse_qs(args)
    for q in qs:
        if q % 2 == 0:
            raise UsageError(f"filters need odd q, got {q}")
    lo, hi = _k_range(args)
    tasks = scan_tasks(qs, lo, hi, args.jobs)
    records = run_tasks(filters_chunk, tasks, args.jobs, soundness=args.soundness)
    unsound = [[r["q"], r["k"]] for r in records if r["sound"] is False]
    summary = {"records": len(records),
               "survivors": {str(q): [r["k"] for r in records if r["q"] == q and r["survives_all"]]
                             for q in qs},
               "unsound": unsound if args.soundness else None}
    _emit(args, argv, records, FILTER_KEYS, summary, "filters")
    return EXIT_DISCREPANCY if unsound else EXIT_OK


def cmd_powsum(args, argv) -> int:
    qs = _parse_qs(args)
    lo, hi = _k_range(args)
    tasks = scan_tasks(qs, lo, hi, args.jobs)
    records = run_tasks(powsum_chunk, tasks, args.jobs)
    bad = [[r["q"], r["k"]] for r in records if r["mismatch_A"] or r["mismatch_B"]]
    summary = {"records": len(records), "pairs": sum(r["s_checked"] for r in records) * 2,
               "mismatches": bad}
    _emit(args, argv, records, POWSUM_KEYS, summary, "powsum-xcheck")
    return EXIT_DISCREPANCY if bad else EXIT_OK


# --- parser ---------------------------------------------------------------------------

def _common(sp, qs=True, krange=False, jobs=False):
    if qs:
        sp.add_argument("--q", action="append", help="prime power(s); comma list, repeatable")
        sp.add_argument("--q-max", type=int, help="add every odd prime power in [3, Q_MAX]")
    if krange:
        sp.add_argument("--k-from", type=int, default=1)
        sp.add_argument("--k-to", type=int, default=None)
    if jobs:
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--out", help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    sp.add_argument("--plot", action="store_true", help="also render OUT with a .png suffix")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monopp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scan", help="PP scans of A_k / B_k against the p-power sets")
    _common(sp, krange=True, jobs=True)
    sp.add_argument("--kind", choices=("A", "B", "joint"), default="joint")
    sp.add_argument("--method", choices=("brute", "hermite", "both"), default="brute")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("alpha", help="table of alpha(p) over odd primes")
    _common(sp, qs=False)
    sp.add_argument("--p-max", type=int)
    sp.add_argument("--count", type=int, help="first COUNT odd primes")
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("girth", help="girth of monomial graphs")
    _common(sp)
    sp.add_argument("--family", choices=("gamma3", "gamma", "full"), default="gamma3")
    sp.add_argument("--spec", help="explicit exponents m1,n1,m2,n2")
    sp.add_argument("--mode", choices=(FULL, SYMMETRY), default=SYMMETRY)
    sp.add_argument("--golden", help="golden census file to compare against")
    sp.add_argument("--certificate", action="store_true", help="include one shortest cycle")
    sp.set_defaults(func=cmd_girth)

    sp = sub.add_parser("filters", help="per-k necessary-condition breakdown")
    _common(sp, krange=True, jobs=True)
    sp.add_argument("--soundness", action="store_true",
                    help="cross-check every rejection against brute force")
    sp.set_defaults(func=cmd_filters)

    sp = sub.add_parser("powsum-xcheck", help="closed-form vs direct power sums")
    _common(sp, krange=True, jobs=True)
    sp.set_defaults(func=cmd_powsum)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if getattr(args, "jobs", 1) < 1:
        print("monopp: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, ["monopp"] + argv)
    except UsageError as exc:
        print(f"monopp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
