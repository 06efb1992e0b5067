"""Command-line entry point.

Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on a
usage error (bad flag, bad value, size past a cap).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import diagonal as dg
from . import enumeration, verify
from .asep import AsepRates, state_label, verify_correspondence
from .measure import MeasureParams, sample, sample_four
from .tableau import ALPHA_DELTA, ALPHA_GAMMA, dumps_many

log = logging.getLogger("staircase")

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 3, 1/2 or 0.25, got {text!r}")


def n_range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    return range(lo, hi + 1)


def _params(args) -> MeasureParams:
    if args.max_symbols:
        return MeasureParams(0, 0, True)
    try:
        return MeasureParams(args.a, args.b)
    except ValueError as exc:
        raise UsageError(f"--a/--b: {exc}")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(x) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args) -> int:
    source = enumeration.enumerate_full(args.n) if args.full else enumeration.enumerate_ab(args.n)
    _emit(args, dumps_many(source))
    return 0


def cmd_count(args) -> int:
    source = enumeration.enumerate_full(args.n) if args.full else enumeration.enumerate_ab(args.n)
    _emit(args, f"{sum(1 for _ in source)}\n")
    return 0


def cmd_sample(args) -> int:
    if args.gamma is not None or args.delta is not None:
        if args.max_symbols or not (args.a and args.b):
            raise UsageError("--gamma/--delta need finite alpha and beta (--a, --b > 0)")
        batch = sample_four(
            args.n, 1 / args.a, 1 / args.b, args.gamma or 0, args.delta or 0, args.seed, args.count
        )
    else:
        batch = sample(args.n, _params(args), args.seed, args.count)
    _emit(args, json.dumps(batch.header()) + "\n\n" + dumps_many(batch.tableaux))
    return 0


def cmd_box_dist(args) -> int:
    params = _params(args)
    if (args.i is None) != (args.j is None):
        raise UsageError("give both --i and --j, or neither")
    boxes = [(args.i, args.j)] if args.i is not None else [
        (i, j) for i in range(1, args.n + 1) for j in range(1, args.n + 2 - i)
    ]
    rows = []
    for i, j in boxes:
        pa, pb, pe = dg.p_box(args.n, params, i, j)
        rows.append({"i": i, "j": j, "alpha": _fmt(pa), "beta": _fmt(pb), "empty": _fmt(pe)})
    if args.format == "csv":
        _emit(args, _csv(["i", "j", "alpha", "beta", "empty"], [list(r.values()) for r in rows]))
    else:
        _emit(args, _json({"n": args.n, "params": params.as_dict(), "boxes": rows}))
    return 0


def _moments(args, params) -> list[tuple[int, Fraction]]:
    return dg.moment_vector(args.n, params, args.stat, args.r)


def cmd_moments(args) -> int:
    params = _params(args)
    mv = _moments(args, params)
    if args.format == "csv":
        _emit(args, _csv(["r", "factorial_moment"], [(r, _fmt(m)) for r, m in mv]))
    else:
        _emit(args, _json({
            "n": args.n, "stat": args.stat, "params": params.as_dict(),
            "factorial_moments": {str(r): _fmt(m) for r, m in mv},
        }))
    return 0


def cmd_diag(args) -> int:
    params = _params(args)
    mv = _moments(args, params)
    pmf = dg.pmf_formula(args.n, params, args.stat)
    _emit(args, _json({
        "n": args.n, "stat": args.stat, "params": params.as_dict(),
        "factorial_moments": {str(r): _fmt(m) for r, m in mv},
        "pmf": pmf.as_dict(),
    }))
    return 0


def cmd_tv(args) -> int:
    params = _params(args)
    lam = Fraction(1) if args.stat == "X" else Fraction(1, 2)
    rows = []
    for n in args.n_range:
        pmf = dg.pmf_formula(n, params, args.stat)
        rows.append((n, dg.tv_to_poisson(pmf, lam, digits=30), pmf))
    if args.format == "json":
        _emit(args, _json({
            "stat": args.stat, "lambda": str(lam), "params": params.as_dict(),
            "rows": [{"n": n, "tv": f"{tv:.30g}", "pmf": pmf.as_dict()} for n, tv, pmf in rows],
        }))
    else:
        _emit(args, _csv(["n", "tv"], [(n, f"{tv:.30g}") for n, tv, _ in rows]))
    return 0


def cmd_verify(args) -> int:
    try:
        results = verify.run_suites(args.suite, args.max_n)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    lines = [r.line() for r in results]
    for r in results:
        lines.extend(f"  {f}" for f in r.failures[:20])
    ok = all(r.passed for r in results)
    lines.append("ALL PASS" if ok else "MISMATCH")
    _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_asep_verify(args) -> int:
    try:
        rates = AsepRates.parse(args.rates)
    except ValueError as exc:
        raise UsageError(f"--rates: {exc}")
    report = verify_correspondence(args.n, rates, convention=args.convention)
    _emit(args, _json(report.as_dict()))
    return 0 if report.equal else 1


def cmd_explore_diagonal(args) -> int:
    params = _params(args)
    pmf = dg.empirical_diagonal_pmf(args.n, params, args.d, args.samples, args.seed)
    mode = "exact" if args.samples is None else "empirical"
    if args.format == "csv":
        _emit(args, _csv(["k", "p"], [(k, v) for k, v in pmf.as_dict().items()]))
    else:
        _emit(args, _json({
            "n": args.n, "d": args.d, "params": params.as_dict(), "mode": mode,
            "samples": args.samples, "seed": args.seed if args.samples is not None else None,
            "pmf": pmf.as_dict(),
        }))
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=rational, default=Fraction(1), help="1/alpha as p/q (0 means alpha infinite)")
    p.add_argument("--b", type=rational, default=Fraction(1), help="1/beta as p/q (0 means beta infinite)")
    p.add_argument("--max-symbols", action="store_true", help="alpha = beta = infinite")


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staircase", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="write every tableau of size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--full", action="store_true", help="four-symbol tableaux")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="number of tableaux of size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--full", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", help="exact random tableaux")
    p.add_argument("--n", type=int, required=True)
    _add_params(p)
    p.add_argument("--gamma", type=rational)
    p.add_argument("--delta", type=rational)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("box-dist", help="closed-form law of one box or of every box")
    p.add_argument("--n", type=int, required=True)
    _add_params(p)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    _add_format(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_box_dist)

    for name, func, helptext in (
        ("diag", cmd_diag, "second-diagonal moments and PMF"),
        ("moments", cmd_moments, "second-diagonal factorial moments"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int, required=True)
        _add_params(p)
        p.add_argument("--stat", choices=dg.STATISTICS, required=True)
        p.add_argument("--r", type=int, help="highest moment order (default: last non-zero)")
        if name == "moments":
            _add_format(p)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("tv", help="total variation to the Poisson limit over a range of n")
    p.add_argument("--stat", choices=dg.STATISTICS, required=True)
    _add_params(p)
    p.add_argument("--n-range", type=n_range, default=range(4, 10))
    _add_format(p, "csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tv)

    p = sub.add_parser("verify", help="run oracle-equality suites")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(list(verify.SUITES) + list(verify.GROUPS))}")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asep-verify", help="chain steady state versus tableaux")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rates", required=True, help="alpha,beta,gamma,delta,u,q")
    p.add_argument("--convention", choices=(ALPHA_DELTA, ALPHA_GAMMA), default=ALPHA_DELTA)
    p.add_argument("--out")
    p.set_defaults(func=cmd_asep_verify)

    p = sub.add_parser("explore-diagonal", help="law of the symbol count on diagonal i+j=d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_params(p)
    p.add_argument("--samples", type=int, help="sample size; omit for the exact law")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_format(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_explore_diagonal)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError) as exc:
        # CapExceeded is a ValueError
        print(f"staircase {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
