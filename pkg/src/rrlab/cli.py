"""Command-line front end.

Subcommands:
    eval        evaluate R, S, G, H, phi (theta), chi, or the cf2 fraction
    values      list or check the special-value registry
    verify      run identity verifications (one id or "all")
    schur       classify R at primitive n-th roots of unity
    series      print exact series expansions of G, H, R as JSON
    asymptotic  small-x approximation record for the cf2 fraction

Exit codes: 0 all checks pass; 1 verification failure; 2 usage error;
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import cf as _cf
from . import identities as _id
from . import qseries as _qs
from . import special_values as _sv
from .numerics import PrecisionContext, RootMode, agree_bits

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGE = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    precision_bits: int = 256
    guard_bits: int = 32
    tol_digits: Optional[int] = None
    max_iter: int = 10**6
    format: str = "text"
    invariants_file: Optional[str] = None
    samples: int = 10
    series_order: int = 150

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("precision_bits must be >= 64")
        if self.series_order < 10:
            raise UsageError("series_order must be >= 10")
        if self.samples < 1:
            raise UsageError("samples must be >= 1")

    def context(self) -> PrecisionContext:
        return PrecisionContext(self.precision_bits, self.guard_bits, self.max_iter)


def _fmt(ctx: PrecisionContext, v) -> str:
    """Decimal string with only the digits earned at this precision."""
    digits = ctx.digits
    if isinstance(v, ctx.mp.mpc) and v.imag != 0:
        return f"({ctx.mp.nstr(v.real, digits)} + {ctx.mp.nstr(v.imag, digits)}j)"
    if isinstance(v, ctx.mp.mpc):
        v = v.real
    return ctx.mp.nstr(ctx.mp.mpf(v), digits)


def _parse_q(args, ctx: PrecisionContext):
    if args.q is not None:
        q = Fraction(args.q)
        return ctx.real(q)
    if args.exp_arg is not None:
        s = Fraction(args.exp_arg)
        if s <= 0:
            raise UsageError("--exp-arg must be positive")
        return ctx.mp.exp(-ctx.mp.pi * ctx.real(s))
    if args.exp_sqrt is not None:
        n = Fraction(args.exp_sqrt)
        if n <= 0:
            raise UsageError("--exp-sqrt must be positive")
        return ctx.mp.exp(-ctx.mp.pi * ctx.mp.sqrt(ctx.real(n)))
    raise UsageError("one of --q, --exp-arg, --exp-sqrt is required")


def _eval_target(target: str, q, mode: RootMode, ctx: PrecisionContext):
    """Returns (value, iterations, status_str)."""
    if target == "R":
        res = _cf.rr_cf(q, mode, ctx)
        return res.value, res.iterations, res.status.value
    if target == "S":
        return _qs.S(q, ctx), None, "converged"
    if target == "G":
        return _qs.G(q, ctx), None, "converged"
    if target == "H":
        return _qs.H(q, ctx), None, "converged"
    if target == "phi":
        return _qs.theta_phi(q, ctx), None, "converged"
    if target == "chi":
        return _qs.chi(q, ctx), None, "converged"
    if target == "cf2":
        res = _cf.eval_infinite(_id.cf2_spec(), ctx)
        return res.value, res.iterations, res.status.value
    raise UsageError(f"unknown eval target {target!r}")


def cmd_eval(args, config: RunConfig) -> int:
    ctx = config.context()
    mode = RootMode.REAL_ODD if args.mode == "real-odd" else RootMode.PRINCIPAL
    if args.target == "cf2":
        q = None
    else:
        q = _parse_q(args, ctx)
    value, iterations, status = _eval_target(args.target, q, mode, ctx)
    if status not in ("converged",):
        print(f"status: {status}", file=sys.stderr)
        return EXIT_NO_CONVERGE
    # precision-doubling self-check
    ctx2 = PrecisionContext(2 * ctx.bits, ctx.guard_bits, ctx.max_iter)
    if args.target == "cf2":
        q2 = None
    elif args.q is not None:
        q2 = ctx2.real(Fraction(args.q))
    elif args.exp_arg is not None:
        q2 = ctx2.mp.exp(-ctx2.mp.pi * ctx2.real(Fraction(args.exp_arg)))
    else:
        q2 = ctx2.mp.exp(-ctx2.mp.pi * ctx2.mp.sqrt(ctx2.real(Fraction(args.exp_sqrt))))
    value2, _, status2 = _eval_target(args.target, q2, mode, ctx2)
    bits_ok = agree_bits(value, value2, ctx)
    payload = {
        "target": args.target,
        "value": _fmt(ctx, value),
        "iterations": iterations,
        "status": status,
        "agree_bits": bits_ok,
    }
    if config.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(payload["value"])
        extra = f"status: {status}  agree_bits: {bits_ok}"
        if iterations is not None:
            extra += f"  iterations: {iterations}"
        print(extra)
    if bits_ok < ctx.bits - ctx.guard_bits:
        print(
            f"warning: precision self-check got {bits_ok} bits "
            f"(< {ctx.bits - ctx.guard_bits})",
            file=sys.stderr,
        )
        return EXIT_NO_CONVERGE
    return EXIT_OK


def _load_invariants(config: RunConfig, ctx: PrecisionContext):
    table = _sv.InvariantTable()
    if config.invariants_file:
        table.load_config(config.invariants_file, ctx)
    return table


def cmd_values(args, config: RunConfig) -> int:
    ctx = config.context()
    if args.action == "list":
        rows = [
            {
                "name": e.name,
                "kind": e.kind,
                "closed_form": _sv.expr_str(e.closed_form),
                "provenance": e.provenance,
            }
            for e in _sv.registry()
        ]
        if config.format == "json":
            print(json.dumps(rows, sort_keys=True, indent=2))
        else:
            for r in rows:
                print(f"{r['name']:<20} {r['kind']:<14} {r['provenance']}")
                print(f"{'':<20} = {r['closed_form']}")
        return EXIT_OK
    names = None if args.name in (None, "all") else [args.name]
    try:
        records = _sv.verify_registry(ctx, names)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    ok = all(r["passed"] for r in records)
    if config.format == "json":
        out = [
            {
                "name": r["name"],
                "closed": _fmt(ctx, r["closed"]),
                "abs_dev": ctx.mp.nstr(r["abs_dev"], 8),
                "agree_bits": r["agree_bits"],
                "passed": r["passed"],
            }
            for r in records
        ]
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for r in records:
            flag = "pass" if r["passed"] else "FAIL"
            print(
                f"[{flag}] {r['name']:<20} dev={ctx.mp.nstr(r['abs_dev'], 8)} "
                f"agree_bits={r['agree_bits']}"
            )
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def _report_rows(rep_json: dict):
    for r in rep_json["records"]:
        yield {
            "id": rep_json["id"],
            "point": r["point"],
            "lhs": r["lhs"],
            "rhs": r["rhs"],
            "abs_dev": r["abs_dev"],
            "agree_bits": r["agree_bits"],
            "status": rep_json["status"],
        }


def cmd_verify(args, config: RunConfig) -> int:
    ctx = config.context()
    ids = _id.identity_ids() if args.id == "all" else [args.id]
    reports = []
    for ident in ids:
        try:
            reports.append(
                _id.verify(
                    ident,
                    ctx,
                    samples=config.samples,
                    series_order=config.series_order,
                    tol_digits=config.tol_digits,
                )
            )
        except _id.UnknownIdentityError as exc:
            raise UsageError(str(exc)) from exc
    ok = all(rep.status == "pass" for rep in reports)
    payload = [rep.to_json(ctx) for rep in reports]
    if config.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif config.format == "csv":
        import csv as _csv

        writer = _csv.DictWriter(
            sys.stdout,
            fieldnames=["id", "point", "lhs", "rhs", "abs_dev", "agree_bits", "status"],
        )
        writer.writeheader()
        for rep in payload:
            for row in _report_rows(rep):
                writer.writerow(row)
    else:
        for rep in payload:
            mark = "pass" if rep["status"] == "pass" else "FAIL"
            print(
                f"[{mark}] {rep['id']:<22} records={len(rep['records'])} "
                f"max_dev={rep['max_deviation']}"
            )
            for note in rep["excluded"]:
                print(f"       excluded: {note}")
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_schur(args, config: RunConfig) -> int:
    cls = _cf.schur_classify(args.n)
    if config.format == "json":
        payload = {
            "n": cls.n,
            "diverges": cls.diverges,
            "lambda": cls.lam,
            "rho": cls.rho,
            "exponent": cls.exponent,
        }
        print(json.dumps(payload, sort_keys=True))
    elif cls.diverges:
        print(f"n={cls.n}: diverges (5 divides n)")
    else:
        print(
            f"n={cls.n}: lambda={cls.lam:+d} rho={cls.rho} exponent={cls.exponent} "
            f"=> R(q) = lambda * q^exponent * R(lambda)"
        )
    return EXIT_OK


def cmd_series(args, config: RunConfig) -> int:
    order = args.order if args.order is not None else config.series_order
    if order < 1:
        raise UsageError("--order must be >= 1")
    fn = {"G": _qs.series_G, "H": _qs.series_H, "R": _qs.series_R}[args.which]
    series = fn(order)
    if config.format == "json":
        print(json.dumps(series.to_json(), sort_keys=True))
    else:
        coeffs = ",".join(str(c) for c in series.coeffs)
        print(f"lowest_exponent={series.offset} order={series.order}")
        print(f"coefficients {coeffs}")
    return EXIT_OK


def cmd_asymptotic(args, config: RunConfig) -> int:
    ctx = config.context()
    x = Fraction(args.x)
    record = _id.asymptotic_check(x, ctx)
    payload = {k: _fmt(ctx, v) for k, v in record.items()}
    payload["x"] = str(x)
    if config.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"x={x}  approx={payload['approx']}")
        print(f"reference={payload['reference']}")
        print(f"error={payload['error']}")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, trailing: bool):
    """Options accepted both before and after the subcommand."""
    d = (lambda v: argparse.SUPPRESS) if trailing else (lambda v: v)
    parser.add_argument("--bits", type=int, default=d(256), help="working precision in bits (>= 64)")
    parser.add_argument("--guard-bits", type=int, default=d(32))
    parser.add_argument("--max-iter", type=int, default=d(10**6))
    parser.add_argument("--tol-digits", type=int, default=d(None))
    parser.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
    parser.add_argument("--invariants", default=d(None), help="JSON config of extra class invariants")
    parser.add_argument("--samples", type=int, default=d(10))
    parser.add_argument("--series-order", type=int, default=d(150))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrlab",
        description="Evaluate and verify the Rogers-Ramanujan continued fraction "
        "and its special values and identities at arbitrary precision.",
    )
    _add_common(parser, trailing=False)

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a function at a nome")
    p_eval.add_argument("target", choices=("R", "S", "G", "H", "phi", "chi", "cf2"))
    p_eval.add_argument("--q", default=None, help="nome as an exact rational, e.g. 1/10 or 1")
    p_eval.add_argument("--exp-arg", default=None, help="rational s: q = exp(-pi*s)")
    p_eval.add_argument("--exp-sqrt", default=None, help="rational n: q = exp(-pi*sqrt(n))")
    p_eval.add_argument("--mode", choices=("principal", "real-odd"), default="principal")
    p_eval.set_defaults(fn=cmd_eval)

    p_values = sub.add_parser("values", help="list or check special values")
    p_values.add_argument("action", choices=("list", "check"))
    p_values.add_argument("name", nargs="?", default=None, help="entry name or 'all'")
    p_values.set_defaults(fn=cmd_values)

    p_verify = sub.add_parser("verify", help="verify an identity (or 'all')")
    p_verify.add_argument("id")
    p_verify.set_defaults(fn=cmd_verify)

    p_schur = sub.add_parser("schur", help="classify R at primitive n-th roots of unity")
    p_schur.add_argument("n", type=int)
    p_schur.set_defaults(fn=cmd_schur)

    p_series = sub.add_parser("series", help="exact series expansion of G, H, or R")
    p_series.add_argument("which", choices=("G", "H", "R"))
    p_series.add_argument("--order", type=int, default=None)
    p_series.set_defaults(fn=cmd_series)

    p_asym = sub.add_parser("asymptotic", help="small-x approximation of the cf2 fraction")
    p_asym.add_argument("x", help="rational x in (0, 1/2]")
    p_asym.set_defaults(fn=cmd_asymptotic)

    for p in (p_eval, p_values, p_verify, p_schur, p_series, p_asym):
        _add_common(p, trailing=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            precision_bits=args.bits,
            guard_bits=args.guard_bits,
            tol_digits=args.tol_digits,
            max_iter=args.max_iter,
            format=args.format,
            invariants_file=args.invariants,
            samples=args.samples,
            series_order=args.series_order,
        )
        if config.invariants_file:
            # fail fast on a bad config, whatever the subcommand
            _load_invariants(config, config.context())
        return args.fn(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGE


if __name__ == "__main__":
    sys.exit(main())
