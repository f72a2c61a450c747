"""Command-line front end.

Every subcommand builds a payload dict; ``--format`` selects plain text, a
JSON envelope ``{command, parameters, result, timing_ms}``, or CSV.  Numbers
that can exceed 64 bits are emitted as decimal strings in JSON and CSV.

Exit codes: 0 success, 2 usage error, 3 resource/precision error, 4 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field

from . import ep as ep_mod
from . import oracle, qp, sieve
from .cache import EpCache
from .errors import (
    HarmError,
    InvalidArgumentError,
    InvariantError,
    PrecisionExhaustedError,
    ResourceLimitError,
    SearchExhaustedError,
)
from .nested import DEFAULT_A_MAX, find_nested_exponents, verify_witness
from .primes import ilog, primes_between, require_odd_prime

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4

_ERROR_KINDS = {
    InvalidArgumentError: "invalid-argument",
    ResourceLimitError: "resource-limit",
    PrecisionExhaustedError: "precision-exhausted",
    SearchExhaustedError: "search-exhausted",
    InvariantError: "invariant",
}


@dataclass
class Output:
    result: dict
    text: str
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    return [_positive(t) for t in text.split(",") if t.strip()]


def _factor_text(factors) -> str:
    if not factors:
        return "1"
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors)


# --- handlers ------------------------------------------------------------


def cmd_harmonic(args, ctx) -> Output:
    h = oracle.harmonic_exact(args.n, ctx.max_n)
    big_d = oracle.lcm_upto(args.n).value
    result = {
        "n": args.n,
        "numerator": str(h.numerator),
        "denominator": str(h.denominator),
        "lcm": str(big_d),
        "quotient": str(big_d // h.denominator),
    }
    return Output(
        result,
        str(h),
        ["n", "numerator", "denominator", "lcm", "quotient"],
        [[args.n, result["numerator"], result["denominator"], result["lcm"], result["quotient"]]],
    )


def cmd_factor_dn(args, ctx) -> Output:
    if args.oracle:
        factors = oracle.factor_dn_oracle(args.n, ctx.max_n)
    else:
        factors = qp.factor_dn_fast(args.n, ctx.max_cushion)
    result = {
        "n": args.n,
        "method": "oracle" if args.oracle else "fast",
        "factors": [[p, e] for p, e in factors],
    }
    return Output(result, _factor_text(factors), ["prime", "exponent"], [[p, e] for p, e in factors])


def cmd_ep(args, ctx) -> Output:
    require_odd_prime(args.p)
    e = ctx.cache.get(args.p)
    result = {"p": e.p, "members": list(e.members), "size": len(e)}
    return Output(result, ",".join(map(str, e.members)), ["p", "m"], [[e.p, m] for m in e.members])


def cmd_ep_stats(args, ctx) -> Output:
    if ctx.cache.path is not None:
        primes = [p for p in primes_between(args.lo, args.hi) if p > 2]
        sizes = [len(e) for e in ctx.cache.get_many(primes)]
        counts: dict[int, int] = {}
        for s in sizes:
            counts[s] = counts.get(s, 0) + 1
        hist = ep_mod.EpHistogram(args.lo, args.hi, dict(sorted(counts.items())), len(primes))
    else:
        hist = ep_mod.ep_histogram(args.lo, args.hi, workers=ctx.threads)
    result = {
        "lo": hist.lo,
        "hi": hist.hi,
        "counts": {str(k): v for k, v in hist.counts.items()},
        "total": hist.total,
    }
    lines = [f"|E_p|={k}: {v}" for k, v in hist.counts.items()]
    lines.append(f"total: {hist.total}")
    rows = [[k, v] for k, v in hist.counts.items()]
    return Output(result, "\n".join(lines), ["size", "count"], rows)


def cmd_wieferich(args, ctx) -> Output:
    primes = [p for p in primes_between(3, args.max) if p > 2]
    found = [p for p in primes if ep_mod.wieferich_test(p)]
    eps = ctx.cache.get_many(primes) if ctx.cache.path is not None else None
    mismatches = []
    for i, p in enumerate(primes):
        e = eps[i] if eps is not None else ep_mod.ep_compute(p)
        if (((p - 1) // 2) in e) != ep_mod.wieferich_test(p):
            mismatches.append(p)
    result = {"max": args.max, "wieferich": found, "crosscheck_failures": mismatches}
    text = ",".join(map(str, found)) if found else "none"
    if mismatches:
        text += f"\ncrosscheck failures: {','.join(map(str, mismatches))}"
    return Output(result, text, ["p"], [[p] for p in found])


def cmd_qp(args, ctx) -> Output:
    e = ctx.cache.get(require_odd_prime(args.p))
    member = qp.qp_member(args.n, args.p, e)
    digit, a = qp.leading_digit(args.n, args.p)
    result = {"p": args.p, "n": args.n, "member": member, "digit": digit, "exponent": a}
    return Output(result, "true" if member else "false", ["p", "n", "member"],
                  [[args.p, args.n, int(member)]])


def cmd_qp_count(args, ctx) -> Output:
    e = ctx.cache.get(require_odd_prime(args.p))
    count = qp.qp_count(args.p, e, args.x)
    result = {"p": args.p, "x": args.x, "count": count}
    b = ilog(args.x, args.p)
    if args.p**b == args.x:
        result["closed_form"] = qp.qp_count_closed_form(args.p, e, b)
    return Output(result, str(count), ["p", "x", "count"], [[args.p, args.x, count]])


def cmd_density(args, ctx) -> Output:
    e = ctx.cache.get(require_odd_prime(args.p))
    d = qp.density_exact(args.p, e)
    result = {"p": args.p, "exact": d.exact, "terms": {str(m): t for m, t in zip(e, d.terms)}}
    text = f"{d.exact:.15g}"
    row = [args.p, repr(d.exact), ""]
    if args.empirical is not None:
        emp = qp.density_empirical(args.p, e, args.empirical)
        result["empirical"] = {"x": args.empirical, "value": emp}
        text += f"\nempirical(x={args.empirical}): {emp:.15g}"
        row[2] = repr(emp)
    return Output(result, text, ["p", "exact", "empirical"], [row])


def cmd_valuation(args, ctx) -> Output:
    v = qp.harmonic_p_valuation(args.n, args.p, ctx.max_cushion)
    result = {
        "n": v.n,
        "p": v.p,
        "v": v.v,
        "certified_precision": v.certified_precision,
        "dn_exponent": v.dn_exponent,
        "qn_exponent": v.qn_exponent,
    }
    return Output(result, str(v.v), list(result), [list(result.values())])


def cmd_sieve(args, ctx) -> Output:
    source = ctx.cache if ctx.cache.path is not None else None
    runs = sieve.sieve_qtilde(args.x, ep_source=source, workers=ctx.threads)
    mode = args.mode or "runs"
    result = {"x": args.x, "count": runs.count, "run_count": len(runs.runs)}
    if mode == "count":
        return Output(result, str(runs.count), ["x", "count"], [[args.x, runs.count]])
    if mode == "list":
        members = runs.members()
        result["members"] = members
        return Output(result, "\n".join(map(str, members)), ["n"], [[n] for n in members])
    result["runs"] = [[s, n] for s, n in runs.runs]
    return Output(result, runs.notation(), ["start", "length"], result["runs"])


def cmd_scan_runs(args, ctx) -> Output:
    direction = {"inc": "increasing", "dec": "decreasing", "eq": "equal"}[args.dir]
    runs = oracle.scan_monotonic_runs(args.limit, direction, args.min_len, ctx.max_n)
    starts = oracle.window_starts(runs, args.min_len)
    result = {
        "limit": args.limit,
        "direction": direction,
        "min_len": args.min_len,
        "runs": [[s, n] for s, n in runs],
        "window_starts": starts,
    }
    text = ", ".join(f"{s}_{n}" for s, n in runs) or "none"
    text += "\nwindow starts: " + (", ".join(map(str, starts)) or "none")
    return Output(result, text, ["start", "length"], [[s, n] for s, n in runs])


def cmd_nested(args, ctx) -> Output:
    w = find_nested_exponents(args.primes, args.a_max)
    ok = verify_witness(w, ctx.max_n)
    result = {
        "primes": list(w.primes),
        "exponents": list(w.exponents),
        "intervals": [[str(iv.start), str(iv.stop)] for iv in w.intervals],
        "witness": str(w.witness),
        "verified": ok,
        "oracle_checked": w.witness <= ctx.max_n,
    }
    rows = [[p, a, str(iv.start), str(iv.stop)] for p, a, iv in zip(w.primes, w.exponents, w.intervals)]
    return Output(result, str(w.witness), ["p", "a", "start", "stop"], rows)


def cmd_conjecture(args, ctx) -> Output:
    source = ctx.cache if ctx.cache.path is not None else None
    reports = sieve.conjecture_report(args.points, ep_source=source, workers=ctx.threads)
    rows = [[r.x, r.count, repr(r.ratio)] for r in reports]
    result = {"points": [{"x": r.x, "count": r.count, "ratio": r.ratio} for r in reports]}
    text = "\n".join(f"{r.x}\t{r.count}\t{r.ratio:.6f}" for r in reports)
    return Output(result, text, ["x", "count", "ratio"], rows)


# --- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harmdenom", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--cache-dir", default=None,
                        help="E_p cache directory (default: $HARMDENOM_CACHE_DIR, else none)")
    parser.add_argument("--max-n", type=_positive, default=oracle.DEFAULT_MAX_N,
                        help="cap on n for exact rational computations")
    parser.add_argument("--max-precision", type=_positive, default=qp.DEFAULT_MAX_CUSHION,
                        help="largest extra p-adic digits tried when certifying a valuation")
    parser.add_argument("--threads", type=_positive, default=1)
    parser.add_argument("--no-timing", action="store_true",
                        help="report timing_ms as 0 for byte-stable JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("harmonic", help="exact H_n = c_n/d_n")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_harmonic)

    p = sub.add_parser("factor-dn", help="prime factorization of d_n")
    p.add_argument("n", type=_positive)
    p.add_argument("--oracle", action="store_true", help="use the exact rational path")
    p.set_defaults(func=cmd_factor_dn)

    p = sub.add_parser("ep", help="the set E_p")
    p.add_argument("p", type=_positive)
    p.set_defaults(func=cmd_ep)

    p = sub.add_parser("ep-stats", help="histogram of |E_p| over primes in [lo, hi)")
    p.add_argument("--lo", type=_positive, required=True)
    p.add_argument("--hi", type=_positive, required=True)
    p.set_defaults(func=cmd_ep_stats)

    p = sub.add_parser("wieferich", help="Wieferich primes below --max, cross-checked with E_p")
    p.add_argument("--max", type=_positive, required=True)
    p.set_defaults(func=cmd_wieferich)

    p = sub.add_parser("qp", help="is n in Q_p")
    p.add_argument("p", type=_positive)
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_qp)

    p = sub.add_parser("qp-count", help="|Q_p up to x|")
    p.add_argument("p", type=_positive)
    p.add_argument("x", type=_positive)
    p.set_defaults(func=cmd_qp_count)

    p = sub.add_parser("density", help="harmonic density of Q_p")
    p.add_argument("p", type=_positive)
    p.add_argument("--empirical", type=_positive, metavar="X")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("valuation", help="v_p(H_n)")
    p.add_argument("n", type=_positive)
    p.add_argument("p", type=_positive)
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("sieve", help="n <= x with d_n = D_n")
    p.add_argument("x", type=_positive)
    mode = p.add_mutually_exclusive_group()
    for flag in ("runs", "count", "list"):
        mode.add_argument(f"--{flag}", dest="mode", action="store_const", const=flag)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("scan-runs", help="monotone runs of d_n")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--dir", choices=("inc", "dec", "eq"), required=True)
    p.add_argument("--min-len", type=_positive, required=True)
    p.set_defaults(func=cmd_scan_runs)

    p = sub.add_parser("nested", help="n with p1*...*pk | q_n via nested blocks")
    p.add_argument("primes", type=_int_list)
    p.add_argument("--a-max", type=_positive, default=DEFAULT_A_MAX)
    p.set_defaults(func=cmd_nested)

    p = sub.add_parser("conjecture", help="Q-tilde(x) log x / x at several x")
    p.add_argument("--points", type=_int_list, required=True)
    p.set_defaults(func=cmd_conjecture)
    return parser


@dataclass
class _Context:
    cache: EpCache
    max_n: int
    max_cushion: int
    threads: int


def _parameters(args) -> dict:
    skip = {"func", "command", "format", "cache_dir", "no_timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _render(args, out: Output, elapsed_ms: int) -> str:
    if args.format == "json":
        envelope = {
            "command": args.command,
            "parameters": _parameters(args),
            "result": out.result,
            "timing_ms": 0 if args.no_timing else elapsed_ms,
        }
        return json.dumps(envelope, sort_keys=True) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(out.header)
        writer.writerows(out.rows)
        return buf.getvalue()
    return out.text + "\n"


def _fail(fmt: str, kind: str, message: str, code: int, stderr) -> int:
    if fmt == "json":
        stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True) + "\n")
    else:
        stderr.write(f"error[{kind}]: {message}\n")
    return code


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    fmt = "json" if "--format=json" in argv or _after(argv, "--format") == "json" else "text"
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(fmt, "usage", str(exc), EXIT_USAGE, stderr)
    ctx = _Context(EpCache.from_env(args.cache_dir), args.max_n, args.max_precision, args.threads)
    start = time.perf_counter()
    try:
        out = args.func(args, ctx)
    except HarmError as exc:
        kind = _ERROR_KINDS.get(type(exc), "error")
        return _fail(args.format, kind, str(exc), exc.exit_code, stderr)
    except AssertionError as exc:
        return _fail(args.format, "invariant", str(exc), EXIT_INTERNAL, stderr)
    elapsed = int((time.perf_counter() - start) * 1000)
    stdout.write(_render(args, out, elapsed))
    return EXIT_OK


def _after(argv, flag):
    try:
        return argv[argv.index(flag) + 1]
    except (ValueError, IndexError):
        return None


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
