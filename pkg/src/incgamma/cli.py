"""Command line front end.

Four subcommands cover the day-to-day checks:

    psi-tilde     the exact rational target sequence
    eval          one value of Psi (p-adic) or the integral side (complex)
    interp-check  both places against <r>^m psi_tilde(m), row per m
    func-eq       the functional equation for a polynomial weight

Output is a single JSON document {command, params, rows, pass} or CSV with
columns inputs..., value, precision_claim, status.  Exit status: 0 all
checks passed, 1 a check failed, 2 usage or domain error.  INCGAMMA_PREC
sets the default p-adic working precision.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from fractions import Fraction

from .exact import INF, as_rational, format_rational
from .padic import PadicContext, PrecisionError, congruent, principal_part
from .gamma_padic import (CompatibilityError, PlaceExcludedError, Psi,
                          functional_eq_parts, psi_tilde)
from .gamma_complex import gfn, mellin_fe_residual, psi_complex


def _prec_default() -> int:
    return int(os.environ.get("INCGAMMA_PREC", "28"))


def _fmt_value(x, k: int) -> str:
    """Residue string for a p-adic value known mod p^k."""
    if x.is_exact_zero():
        return "0"
    if x.valuation < 0:
        return repr(x)
    return str(x.residue(k))


def _claim(ctx: PadicContext, k) -> str:
    if k == INF:
        return "exact"
    return f"mod {ctx.p}^{k}"


def _cmd_psi_tilde(args):
    r = as_rational(args.r)
    rows = []
    for m in range(args.m_max + 1):
        rows.append({"m": m, "value": format_rational(psi_tilde(r, m)),
                     "precision_claim": "exact", "status": "pass"})
    return rows, True, {"r": format_rational(r), "m_max": args.m_max}


def _cmd_eval(args):
    r = as_rational(args.r)
    params = {"r": format_rational(r), "s": args.s, "side": args.side}
    if args.side == "padic":
        if args.p is None:
            raise ValueError("--side padic needs --p")
        ctx = PadicContext(args.p, args.prec)
        s = as_rational(args.s)
        val = Psi(r, s, ctx)
        k = val.abs_precision
        k = ctx.precision if k == INF else k
        row = {"s": args.s, "side": "padic", "value": _fmt_value(val, k),
               "precision_claim": _claim(ctx, k), "status": "pass"}
        params.update({"p": args.p, "prec": args.prec})
        return [row], True, params
    s = as_rational(args.s)
    if s.denominator == 1 and s >= 0:
        val = psi_complex(float(r), int(s))
    elif r > 0:
        val = gfn(float(s), float(r))
    else:
        raise ValueError("complex side needs integer s >= 0 when r < 0")
    row = {"s": args.s, "side": "complex", "value": repr(float(val)),
           "precision_claim": f"quad tol {args.tol:g}", "status": "pass"}
    return [row], True, params


def _cmd_interp_check(args):
    r = as_rational(args.r)
    if args.p is None and not getattr(args, "complex"):
        raise ValueError("pick at least one side: --p and/or --complex")
    rows = []
    ok = True
    params = {"r": format_rational(r), "m_max": args.m_max}
    if args.p is not None:
        ctx = PadicContext(args.p, args.prec)
        pr = principal_part(ctx.number(r))
        params.update({"p": args.p, "prec": args.prec})
        for m in range(args.m_max + 1):
            val = Psi(r, m, ctx)
            want = pr ** m * ctx.number(psi_tilde(r, m))
            k = min(val.abs_precision, want.abs_precision)
            k = ctx.precision if k == INF else k
            good = congruent(val, want, k)
            ok = ok and good
            rows.append({"m": m, "side": "padic", "value": _fmt_value(val, k),
                         "precision_claim": _claim(ctx, k),
                         "status": "pass" if good else "fail"})
    if getattr(args, "complex"):
        params["tol"] = args.tol
        for m in range(args.m_max + 1):
            got = psi_complex(float(r), m)
            want = float(r ** m * psi_tilde(r, m))
            err = abs(got - want) / max(1.0, abs(want))
            good = err <= args.tol
            ok = ok and good
            rows.append({"m": m, "side": "complex", "value": repr(got),
                         "precision_claim": f"rel_err {err:.3e}",
                         "status": "pass" if good else "fail"})
    return rows, ok, params


def _cmd_func_eq(args):
    coeffs = [as_rational(c) for c in args.poly.split(",")]
    ctx = PadicContext(args.p, args.prec)
    rng = random.Random(args.seed)
    samples = [rng.randint(-8, 8) for _ in range(args.samples)]
    rows = []
    ok = True
    for s in samples:
        lhs, rhs = functional_eq_parts(coeffs, s, ctx)
        k = min(lhs.abs_precision, rhs.abs_precision)
        k = ctx.precision if k == INF else k
        good = congruent(lhs, rhs, k)
        ok = ok and good
        rows.append({"s": s, "side": "padic", "value": _fmt_value(lhs, k),
                     "precision_claim": _claim(ctx, k),
                     "status": "pass" if good else "fail"})
    if getattr(args, "complex"):
        for s in samples:
            err = mellin_fe_residual(coeffs, float(s))
            good = err <= args.tol
            ok = ok and good
            rows.append({"s": s, "side": "complex", "value": f"{err:.3e}",
                         "precision_claim": f"tol {args.tol:g}",
                         "status": "pass" if good else "fail"})
    params = {"poly": args.poly, "p": args.p, "prec": args.prec,
              "samples": args.samples, "seed": args.seed}
    return rows, ok, params


def _emit(doc: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(doc, stream, indent=2)
        stream.write("\n")
        return
    rows = doc["rows"]
    if not rows:
        return
    writer = csv.DictWriter(stream, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--prec", type=int, default=_prec_default(),
                        help="p-adic working precision (or INCGAMMA_PREC)")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="relative tolerance on the complex side")

    ap = argparse.ArgumentParser(
        prog="incgamma",
        description="incomplete gamma values at finite and archimedean places")
    sub = ap.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("psi-tilde", parents=[common],
                        help="exact rational target sequence")
    p1.add_argument("--r", required=True, help="rational, e.g. 5/3")
    p1.add_argument("--m-max", type=int, default=10)
    p1.set_defaults(handler=_cmd_psi_tilde)

    p2 = sub.add_parser("eval", parents=[common], help="a single value")
    p2.add_argument("--side", choices=("padic", "complex"), required=True)
    p2.add_argument("--r", required=True)
    p2.add_argument("--s", required=True)
    p2.add_argument("--p", type=int)
    p2.set_defaults(handler=_cmd_eval)

    p3 = sub.add_parser("interp-check", parents=[common],
                        help="compare both places against the target sequence")
    p3.add_argument("--r", required=True)
    p3.add_argument("--m-max", type=int, default=10)
    p3.add_argument("--p", type=int)
    p3.add_argument("--complex", action="store_true")
    p3.set_defaults(handler=_cmd_interp_check)

    p4 = sub.add_parser("func-eq", parents=[common],
                        help="functional equation for a polynomial weight")
    p4.add_argument("--poly", required=True,
                    help="comma list g1,g2,... of coefficients of x, x^2, ...")
    p4.add_argument("--p", type=int, required=True)
    p4.add_argument("--samples", type=int, default=5)
    p4.add_argument("--seed", type=int, default=0)
    p4.add_argument("--complex", action="store_true")
    p4.set_defaults(handler=_cmd_func_eq)

    args = ap.parse_args(argv)
    try:
        rows, ok, params = args.handler(args)
    except (PlaceExcludedError, CompatibilityError, PrecisionError, ValueError,
            ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"command": args.command, "params": params, "rows": rows, "pass": ok}
    _emit(doc, args.format, sys.stdout)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
