"""Command-line front end.

Exit codes: 0 success/pass, 1 verification failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .congruences import (
    predict_mod8,
    predict_mod16,
    predict_mod48_odd,
    predict_mod64,
    predict_mod192_odd,
)
from .galois_ring import RingCtx
from .gauss import PrecisionError, gauss_sum, gamma2, gk_check, stickelberger_check, wt2
from .gf2n import FieldCtx, quadratic_trace
from .kloosterman import ksum_all, ksum_naive, spectrum_json, write_spectrum_csv
from .verify import CLASSIFICATION_FIELDS, THEOREMS, classification_rows, run_verify, run_zeros


class UsageError(Exception):
    pass


def _field(args) -> FieldCtx:
    poly = int(args.poly, 16) if getattr(args, "poly", None) else None
    return FieldCtx(args.n, poly)


def cmd_field_info(args) -> int:
    ctx = _field(args)
    info = {
        "field": ctx.spec,
        "q": ctx.q,
        "trace_mask": format(ctx.trace_mask, "x"),
        "dual_basis": [format(d, "x") for d in ctx.dual],
        "primitive_element": format(ctx.primitive_element, "x"),
    }
    print(json.dumps(info, indent=2))
    return 0


def cmd_ksum(args) -> int:
    ctx = _field(args)
    a = ctx.parse(args.a)
    print(ksum_naive(ctx, a))
    return 0


def cmd_ktable(args) -> int:
    ctx = _field(args)
    spec = ksum_all(ctx)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "csv":
            write_spectrum_csv(ctx, spec, out)
        else:
            out.write(spectrum_json(ctx, spec) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_classify(args) -> int:
    ctx = _field(args)
    if args.a is None:
        w = csv.DictWriter(sys.stdout, fieldnames=CLASSIFICATION_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(classification_rows(ctx))
        return 0
    a = ctx.parse(args.a)
    m = args.mod
    if m == 8:
        pred = predict_mod8(ctx.trace(a))
    elif m == 16:
        pred = predict_mod16(ctx.trace(a), quadratic_trace(ctx, a))
    elif m == 48:
        pred = predict_mod48_odd(ctx, a)
    elif m == 64:
        pred = predict_mod64(RingCtx(ctx, 4), a)
    else:
        pred = predict_mod192_odd(ctx, RingCtx(ctx, 4), a)
    k = ksum_naive(ctx, a)
    print(json.dumps({
        "field": ctx.spec, "a_hex": args.a, "modulus": m, "predicted": pred.residue,
        "K_exact": k, "K_mod": k % m, "match": pred.matches(k),
    }))
    return 0


def cmd_verify(args) -> int:
    report = run_verify(args.theorem, args.n_min, args.n_max)
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(report.summary_lines()))
    return 0 if report.passed else 1


def cmd_zeros(args) -> int:
    for a in run_zeros(args.n, int(args.poly, 16) if args.poly else None):
        print(format(a, "x"))
    return 0


def cmd_gauss(args) -> int:
    ring = RingCtx(_field(args), args.k)
    js = [args.j] if args.j is not None else range(1, ring.base.q - 1)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["j", "wt2", "g_mod_2k", "stickelberger_ok", "gk_ok"])
    for j in js:
        wt = wt2(j)
        stick = stickelberger_check(ring, j) if wt + 1 <= args.k else ""
        gk = gk_check(ring, j) if wt + 3 <= args.k else ""
        w.writerow([j, wt, gauss_sum(ring, j).value, stick, gk])
    return 0


def cmd_gamma2(args) -> int:
    print(gamma2(args.x, args.precision).value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kloosterkit", description="Exact binary Kloosterman sums and their congruences.")
    sub = p.add_subparsers(dest="command", required=True)

    def field_args(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--poly", help="defining polynomial as hex, leading bit included")

    sp = sub.add_parser("field-info")
    field_args(sp)
    sp.set_defaults(func=cmd_field_info)

    sp = sub.add_parser("ksum")
    field_args(sp)
    sp.add_argument("--a", required=True, help="field element in hex")
    sp.set_defaults(func=cmd_ksum)

    sp = sub.add_parser("ktable")
    field_args(sp)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ktable)

    sp = sub.add_parser("classify")
    field_args(sp)
    sp.add_argument("--a", help="element in hex; omit for the full classification CSV")
    sp.add_argument("--mod", type=int, choices=[8, 16, 48, 64, 192], default=16)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify")
    sp.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    sp.add_argument("--n-min", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("zeros")
    field_args(sp)
    sp.set_defaults(func=cmd_zeros)

    sp = sub.add_parser("gauss")
    field_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--j", type=int)
    sp.set_defaults(func=cmd_gauss)

    sp = sub.add_parser("gamma2")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--precision", type=int, required=True)
    sp.set_defaults(func=cmd_gamma2)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, PrecisionError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
