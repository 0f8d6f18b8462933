"""Command-line surface: hasse, classify, lift, eigen, scan, verify-all,
constants. JSON output is canonical (sorted keys, all numbers as decimal
strings); scan also writes CSV. Exit codes: 0 success, 1 domain error,
2 internal invariant failure. HD_THREADS sets parallelism.
"""

import argparse
import csv
import io
import json
import os
import sys

from .errors import DomainError, InternalError
from .forms import classify_pair, hasse_poly
from .liftp2 import d_values, solve_eigen_numeric, solve_eigen_symbolic
from .liftp import CurveContext
from .psi import conjecture_scan
from .residue import PrimePower, inv_mod, is_prime
from .verify import exhaustive_verify, verify_pair

SCAN_COLUMNS = ["p", "class_mod_12", "psi_degree", "degree_ok", "golem_01",
                "golem_10", "proportional", "constant_c", "counterexample"]


def _stringify(obj):
    """Numbers to decimal strings, recursively; bools stay bools."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    return obj


def _emit(obj, out=None):
    text = json.dumps(_stringify(obj), sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _workers():
    try:
        return max(1, int(os.environ.get("HD_THREADS", "1")))
    except ValueError:
        return 1


def _require_prime(p):
    if not is_prime(p) or p in (2, 3):
        raise DomainError("p = %d is not a prime >= 5" % p)


def cmd_hasse(args):
    _require_prime(args.p)
    pm = PrimePower(args.p, args.mod)
    _emit({"p": args.p, "mod": args.mod,
           "terms": hasse_poly(args.p, pm).to_json()}, args.out)


def cmd_classify(args):
    _require_prime(args.p)
    _emit(classify_pair(args.a, args.b, args.p), args.out)


def cmd_lift(args):
    _require_prime(args.p)
    row = verify_pair(args.p, args.a, args.b, args.mod, branch=args.branch)
    _emit(row, args.out)
    return 0 if row["verified"] else 2


def cmd_eigen(args):
    _require_prime(args.p)
    if args.a is not None and args.b is not None:
        ctx = CurveContext(args.a, args.b, PrimePower(args.p, 2))
        v0, theta, det = solve_eigen_numeric(ctx)
        _emit({"p": args.p, "a": args.a, "b": args.b,
               "v0": v0, "theta": theta, "det": det}, args.out)
        return 0
    sym = solve_eigen_symbolic(args.p)
    slots = {}
    for name, frac in (("const", sym.theta_const), ("z4prime", sym.theta_da),
                       ("z6prime", sym.theta_db)):
        slots[name] = {"num": frac.num.to_json(), "den": dict(frac.den)}
    _emit({"p": args.p, "theta": slots,
           "det": {"num": sym.det.num.to_json(), "den": dict(sym.det.den)}},
          args.out)
    return 0


def cmd_scan(args):
    rows = conjecture_scan(args.pmin, args.pmax, workers=_workers())
    fmt = args.format
    if fmt is None:
        fmt = "csv" if (args.out or "").endswith(".csv") else "json"
    if fmt == "json":
        _emit(rows, args.out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(SCAN_COLUMNS)
    for row in rows:
        writer.writerow(["" if row[c] is None else row[c] for c in SCAN_COLUMNS])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_verify_all(args):
    _require_prime(args.p)
    summary = exhaustive_verify(args.p, args.mod, samples=args.samples,
                                seed=args.seed, workers=_workers())
    _emit(summary, args.out)
    return 0 if summary["failed"] == 0 else 2


def cmd_constants(args):
    """The universal scalars in the special-branch eigenvalue formulas:
    beta_1, beta_4 read off d at (0, 1) when p = 1 mod 3, and
    alpha_2, alpha_4 read off d at (1, 0) when p = 1 mod 4."""
    p = args.p
    _require_prime(p)
    out = {"p": p}
    if p % 3 == 1:
        d, _ = d_values(CurveContext(0, 1, PrimePower(p, 1)))
        out["beta_1"] = d[1]
        out["beta_4"] = d[4]
        out["beta"] = (d[1] + 2 * d[4]) * inv_mod(3, p) % p
    if p % 4 == 1:
        d, _ = d_values(CurveContext(1, 0, PrimePower(p, 1)))
        out["alpha_2"] = d[2]
        out["alpha_4"] = d[4]
        out["alpha"] = (d[2] + d[4]) * inv_mod(2, p) % p
    _emit(out, args.out)


def build_parser():
    top = argparse.ArgumentParser(
        prog="ellfrob",
        description="Lie invariant Frobenius lifts on affine elliptic curves")
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("hasse", help="Hasse polynomial mod p^m")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--mod", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=cmd_hasse)

    sp = sub.add_parser("classify", help="unit-ness of Delta and H at a pair")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("lift", help="construct and verify a lift at a pair")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--mod", type=int, choices=(1, 2), default=1)
    sp.add_argument("--branch", default="auto",
                    choices=("auto", "general", "a0", "b0"))
    common(sp)
    sp.set_defaults(fn=cmd_lift)

    sp = sub.add_parser("eigen", help="pivot solve: numeric at a pair, "
                                      "symbolic without one")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--b", type=int, default=None)
    common(sp)
    sp.set_defaults(fn=cmd_eigen)

    sp = sub.add_parser("scan", help="Psi vs Delta*H proportionality scan")
    sp.add_argument("--pmin", type=int, default=11)
    sp.add_argument("--pmax", type=int, default=499)
    sp.add_argument("--format", choices=("json", "csv"), default=None)
    common(sp)
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("verify-all", help="exhaustive or sampled verification")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--mod", type=int, choices=(1, 2), default=1)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=2026)
    common(sp)
    sp.set_defaults(fn=cmd_verify_all)

    sp = sub.add_parser("constants", help="universal branch constants per prime")
    sp.add_argument("--p", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_constants)
    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args) or 0
    except DomainError as e:
        print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1
    except InternalError as e:
        print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
