"""Command-line front end: bound sweeps, density sampling, rate certificates,
and the golden-value benchmark regression.

Exit codes: 0 success, 2 configuration error, 3 conditioning failure,
4 golden-value mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import benchmarks, golden
from .bounds import ConditioningError, bound_sweep, compute_bound
from .certificate import certificate
from .moments import Domain, domain_from_json, moment_table
from .polynomials import ParseError, Polynomial, parse_polynomial
from .sampling import build_chain, markov_check, sample, write_batch_csv

EX_OK = 0
EX_CONFIG = 2
EX_CONDITIONING = 3
EX_GOLDEN = 4


class ConfigError(ValueError):
    pass


# ---- input handling ---------------------------------------------------


def _parse_orders(text: str) -> tuple[int, int]:
    """'6' -> (6, 6); '1..12' -> (1, 12)."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ConfigError(f"invalid order range {text!r}")
    return lo, hi


def _load_instance(args) -> tuple[Polynomial, Domain, benchmarks.TestCase | None]:
    """Resolve --fn or --poly/--domain into (f, domain, catalog entry or None)."""
    if args.fn and args.poly:
        raise ConfigError("pass either --fn or --poly, not both")
    if args.fn:
        try:
            tc = benchmarks.get(args.fn, args.n)
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        return tc.f, tc.domain, tc
    if args.poly:
        if not args.domain:
            raise ConfigError("--poly requires --domain")
        try:
            dom = domain_from_json(args.domain)
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise ConfigError(f"bad --domain: {exc}") from exc
        try:
            f = parse_polynomial(args.poly, dom.n)
        except ParseError as exc:
            raise ConfigError(f"bad --poly: {exc}") from exc
        return f, dom, None
    raise ConfigError("pass --fn NAME or --poly EXPR --domain JSON")


def _rescale_box(f: Polynomial, dom: Domain) -> tuple[Polynomial, Domain]:
    """Map a box instance onto [-1, 1]^n by an exact affine substitution."""
    if dom.kind != "box":
        raise ConfigError("--rescale applies to box domains only")
    scale = [(hi - lo) / 2 for lo, hi in dom.bounds]
    shift = [(hi + lo) / 2 for lo, hi in dom.bounds]
    return f.substitute_affine(scale, shift), Domain.box([(-1, 1)] * dom.n)


def _emit(rows: list[dict], columns: list[str], args) -> None:
    """Rows as CSV (default) or JSON, to --out or stdout."""
    if args.json:
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join("" if row.get(c) is None else str(row.get(c)) for c in columns))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- subcommands ------------------------------------------------------


def cmd_bound(args) -> int:
    f, dom, _ = _load_instance(args)
    if args.rescale:
        f, dom = _rescale_box(f, dom)
    r_lo, r_hi = _parse_orders(args.r)
    table = moment_table(dom, 2 * r_hi + f.degree)
    rows, ok = [], 0
    for r in range(r_lo, r_hi + 1):
        t0 = time.perf_counter()
        try:
            b = compute_bound(f, dom, r, table=table)
            rows.append(
                {
                    "r": r,
                    "value": b.value,
                    "cond_B": b.cond_B,
                    "time_sec": round(time.perf_counter() - t0, 6),
                    "status": "ok",
                }
            )
            ok += 1
        except ConditioningError as exc:
            rows.append(
                {
                    "r": r,
                    "value": None,
                    "cond_B": exc.cond_B,
                    "time_sec": round(time.perf_counter() - t0, 6),
                    "status": "conditioning-error",
                }
            )
    _emit(rows, ["r", "value", "cond_B", "time_sec", "status"], args)
    return EX_OK if ok else EX_CONDITIONING


def cmd_sample(args) -> int:
    f, dom, tc = _load_instance(args)
    if args.rescale:
        f, dom = _rescale_box(f, dom)
    if dom.kind == "ball":
        raise ConfigError("sampling is not supported on the ball (box and simplex only)")
    r_lo, r_hi = _parse_orders(args.r)
    if r_lo != r_hi:
        raise ConfigError("sample takes a single order, not a range")
    if args.count < 1:
        raise ConfigError("--count must be >= 1")
    b = compute_bound(f, dom, r_lo)
    chain = build_chain(b.density, dom)
    batch = sample(chain, args.count, args.seed, f=f)
    summary = {
        "r": r_lo,
        "count": args.count,
        "seed": args.seed,
        "bound": b.value,
        "mean": float(np.mean(batch.values)),
        "variance": float(np.var(batch.values)),
        "min": float(np.min(batch.values)),
    }
    columns = ["r", "count", "seed", "bound", "mean", "variance", "min"]
    if args.eps is not None:
        if tc is None:
            raise ConfigError("--eps needs a catalog function (known minimum)")
        freq = markov_check(f, batch, b.value, tc.f_min, args.eps)
        summary["markov_eps"] = args.eps
        summary["markov_freq"] = freq
        summary["markov_cap"] = 1.0 / (1.0 + args.eps)
        columns += ["markov_eps", "markov_freq", "markov_cap"]
    if args.out:
        write_batch_csv(batch, args.out, dom, bound=b.value)
        out_arg = args.out
        args.out = None  # summary still goes to stdout
        _emit([summary], columns, args)
        args.out = out_arg
    else:
        _emit([summary], columns, args)
    return EX_OK


def cmd_certificate(args) -> int:
    f, dom, tc = _load_instance(args)
    if args.rescale:
        f, dom = _rescale_box(f, dom)
    r_lo, r_hi = _parse_orders(args.r)
    if r_lo != r_hi:
        raise ConfigError("certificate takes a single order, not a range")
    if args.a is None:
        if tc is None or not tc.minimizers:
            raise ConfigError("pass --a (minimizer) for inline polynomials")
        a = tc.minimizers[0]
    else:
        try:
            a = [float(v) for v in args.a.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --a: {exc}") from exc
    if args.f_min is not None:
        f_min = args.f_min
    elif tc is not None:
        f_min = tc.f_min
    else:
        raise ConfigError("pass --f-min for inline polynomials")
    try:
        report = certificate(f, dom, a, r_lo, f_min)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    text = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EX_OK


def _bench_block(name, n, r_max, cells, tol, relative, assert_max_r, rows):
    tc = benchmarks.get(name) if n is None else benchmarks.get(name, n)
    results = bound_sweep(tc.f, tc.domain, r_max)
    failed = False
    got = {b.r: b for b in results}
    for r in sorted(cells):
        if r > r_max:
            continue
        gold = cells[r]
        b = got.get(r)
        row = {
            "function": tc.name if n is None else f"{tc.name}(n={n})",
            "r": r,
            "value": None if b is None else b.value,
            "golden": gold,
            "abs_delta": None if b is None else abs(b.value - gold),
            "time_sec": None,
        }
        asserted = r <= assert_max_r
        if b is None:
            row["status"] = "conditioning-error" if asserted else "report"
            failed = failed or asserted
        else:
            delta = abs(b.value - gold) / (abs(gold) if relative else 1.0)
            if not asserted:
                row["status"] = "report"
            elif delta <= tol:
                row["status"] = "ok"
            else:
                row["status"] = "FAIL"
                failed = True
        key = (tc.name, r)
        if key in golden.CORRECTED:
            row["reference_print"] = golden.CORRECTED[key]
        rows.append(row)
    return failed


def cmd_bench(args) -> int:
    rows: list[dict] = []
    failed = False
    for name, cells in golden.TABLE_BOX.items():
        failed |= _bench_block(
            name, None, golden.TABLE_BOX_ASSERT_MAX_R, cells, golden.ABS_TOL, False,
            golden.TABLE_BOX_ASSERT_MAX_R, rows,
        )
    for name, cells in golden.TABLE_SB.items():
        failed |= _bench_block(name, None, 10, cells, golden.ABS_TOL, False, 10, rows)
    for name, cells in golden.TABLE_N10.items():
        failed |= _bench_block(
            name, 10, golden.TABLE_N10_ASSERT_MAX_R, cells, golden.REL_TOL_N10, True,
            golden.TABLE_N10_ASSERT_MAX_R, rows,
        )
    _emit(rows, ["function", "r", "value", "golden", "abs_delta", "status", "reference_print"], args)
    return EX_GOLDEN if failed else EX_OK


# ---- entry point ------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, orders_default: str | None = None):
    p.add_argument("--fn", help="catalog function name")
    p.add_argument("--poly", help="inline polynomial expression in x1, x2, ...")
    p.add_argument("--domain", help='domain JSON, e.g. \'{"kind":"box","bounds":[["0","1"]]}\'')
    p.add_argument("--n", type=int, help="dimension for parametric catalog families")
    p.add_argument("--r", required=orders_default is None, default=orders_default,
                   help="order, or range like 1..12")
    p.add_argument("--rescale", action="store_true", help="map a box instance onto [-1,1]^n first")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sosdensity",
                                 description="Measure-based SOS upper bounds, sampling, and rate certificates")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="compute the order-r bound (or a sweep)")
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sample", help="draw feasible points from the optimal density")
    _add_common(p)
    p.add_argument("--count", type=int, default=1000, help="number of points")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--eps", type=float, help="also report the Markov tail frequency at this eps")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("certificate", help="evaluate the rate certificate at order r")
    _add_common(p)
    p.add_argument("--a", help="certificate center (comma list); default: catalog minimizer")
    p.add_argument("--f-min", type=float, dest="f_min", help="known minimum; default: catalog value")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("bench", help="regenerate the benchmark tables against golden values")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CONFIG
    except ConditioningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CONDITIONING
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CONFIG


if __name__ == "__main__":
    sys.exit(main())
