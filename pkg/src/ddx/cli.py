"""Command-line front end.

Every subcommand writes one JSON document (or a CSV table) to stdout.  Exit
status is 0 on success, 1 on a domain error (reported as one JSON line on
stderr) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from ddx import checker, difference, mahler, tau
from ddx.core import format_rational, harmonic
from ddx.sequences import KINDS, parse_sequence

SUBCOMMANDS = (
    "findiff",
    "divdiff",
    "newton",
    "tau",
    "tau-table",
    "theta",
    "primesum",
    "converge",
    "mahler",
    "norm",
    "integrality",
    "clear-const",
    "threshold",
    "hall-ruzsa",
    "extremal",
    "local-approx",
    "lipschitz",
)
TABULAR = {"tau-table", "converge", "findiff", "extremal"}


class Table:
    """Rows for CSV output; ``json_key`` names the list in JSON output."""

    def __init__(self, header, rows, json_key="rows", extra=None):
        self.header = list(header)
        self.rows = [list(r) for r in rows]
        self.json_key = json_key
        self.extra = extra or {}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows([f"{x:.12g}" if isinstance(x, float) else x for x in r] for r in self.rows)
        return buf.getvalue()

    def to_json(self) -> dict:
        doc = dict(self.extra)
        doc[self.json_key] = [dict(zip(self.header, r)) for r in self.rows]
        return doc


def _int_list(text: str) -> List[int]:
    try:
        out = [int(float(x)) if "e" in x.lower() else int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return out


def _natural(text: str) -> int:
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {v}")
    return v


def _positive(text: str) -> int:
    v = _natural(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _place(text: str) -> checker.PlaceDescriptor:
    parts = text.split(":")
    kind = parts[0].lower()
    try:
        if kind in ("arch", "archimedean", "s", "finite-s"):
            if len(parts) not in (2, 3):
                raise ValueError
            degree = int(parts[2]) if len(parts) == 3 else 1
            name = "archimedean" if kind.startswith("arch") else "finite-S"
            return checker.PlaceDescriptor(name, degree, theta=float(parts[1]))
        if kind in ("t", "finite-t"):
            if len(parts) not in (3, 4):
                raise ValueError
            degree = int(parts[3]) if len(parts) == 4 else 1
            return checker.PlaceDescriptor("finite-T", degree, p=int(parts[1]), R=float(parts[2]))
    except ValueError as exc:
        msg = str(exc) or f"malformed place {text!r}"
        raise argparse.ArgumentTypeError(msg)
    raise argparse.ArgumentTypeError(f"unknown place kind in {text!r}; use arch:THETA[:D], S:THETA[:D] or T:P:R[:D]")


def _seq_spec(text: str) -> str:
    kind, sep, _ = text.partition(":")
    if not sep or kind not in KINDS:
        raise argparse.ArgumentTypeError(f"unknown sequence spec {text!r}; expected one of {', '.join(k + ':' for k in KINDS)}")
    return text


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("DDX_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddx", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--threads", type=_positive, default=_default_threads())
    common.add_argument("--seed", type=int, default=0)
    seq = argparse.ArgumentParser(add_help=False)
    seq.add_argument("--seq", type=_seq_spec, required=True, help="poly:..., binom:..., exp:q, extremal:m or file:PATH")
    seq.add_argument("--N", type=_natural, default=None, help="index of the last prefix value")
    order = argparse.ArgumentParser(add_help=False)
    order.add_argument("--m", type=_natural, required=True)

    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True
    add = lambda name, *parents, **kw: sub.add_parser(name, parents=[common, *parents], **kw)

    add("findiff", seq, help="finite differences c(0..N)")
    p = add("divdiff", seq, help="divided difference on a tuple")
    p.add_argument("--tuple", type=_int_list, required=True)
    p.add_argument("--method", choices=("direct", "recursive"), default="direct")
    p = add("newton", seq, help="Newton interpolation coefficients")
    p.add_argument("--nodes", type=_int_list, required=True)
    p = add("tau", order, help="tau_{p,m}(n)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=_natural, required=True)
    p.add_argument("--method", choices=("auto", "explicit", "greedy", "brute"), default="auto")
    p = add("tau-table", order, help="tau_{p,m}(n) for n = m..n-max")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--n-max", type=_natural, required=True)
    p = add("theta", help="Chebyshev theta(n)")
    p.add_argument("--n", type=_natural, required=True)
    p = add("primesum", order, help="sum_{p<=n} tau_{p,m}(n) log p")
    p.add_argument("--n", type=_natural, required=True)
    p = add("converge", order, help="weighted tau sums against n*H_m")
    p.add_argument("--checkpoints", type=_int_list, required=True)
    p.add_argument("--limit", type=_natural, default=None)
    p = add("mahler", seq, order, help="generalized Mahler coefficients of delta^m s")
    p.add_argument("--at", type=_int_list, default=None)
    p = add("norm", seq, order, help="truncated p-adic norm of delta^m s, both sides")
    p.add_argument("--p", type=int, required=True)
    add("integrality", seq, order, help="prefix integrality of delta^m s")
    add("clear-const", seq, order, help="denominator-clearing constant")
    p = add("threshold", order, help="place-by-place growth inequality")
    p.add_argument("--place", type=_place, action="append", default=[], required=True)
    p.add_argument("--degree", type=_positive, default=1)
    p = add("hall-ruzsa", seq, order, help="integrality / growth / polynomiality pipeline")
    p.add_argument("--window", type=_natural, default=None)
    p = add("extremal", order, help="extremal sequence saturating every p-adic bound")
    p.add_argument("--N", type=_natural, required=True)
    p = add("local-approx", seq, order, help="local polynomial approximation on n0 + eps*N")
    p.add_argument("--n0", type=_natural, required=True)
    p.add_argument("--eps", type=_positive, required=True)
    p = add("lipschitz", seq, order, help="sampled p-adic Lipschitz inequality")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--samples", type=_positive, default=1000)
    return parser


def _seq(args):
    N = args.N
    if N is None and not args.seq.startswith("file:"):
        if args.command == "divdiff":
            N = max(args.tuple)
        elif args.command == "newton":
            N = max(args.nodes)
        else:
            raise argparse.ArgumentTypeError("--N is required for generated sequences")
    return parse_sequence(args.seq, N)


def _fmt(xs):
    return [format_rational(x) for x in xs]


def run(args):
    cmd = args.command
    if cmd == "findiff":
        s = _seq(args)
        c = difference.finite_differences(s)
        return Table(("n", "c"), ((n, format_rational(v)) for n, v in enumerate(c)), "table", {"seq": args.seq, "N": s.N, "c": _fmt(c)})
    if cmd == "divdiff":
        s = _seq(args)
        fn = difference.divided_difference_recursive if args.method == "recursive" else difference.divided_difference
        return {"tuple": args.tuple, "order": len(args.tuple) - 1, "value": format_rational(fn(s, args.tuple)), "method": args.method}
    if cmd == "newton":
        s = _seq(args)
        nf = difference.newton_interpolate(s, args.nodes)
        return {"nodes": list(nf.nodes), "coefficients": _fmt(nf.coefficients)}
    if cmd == "tau":
        method = args.method
        if method == "auto":
            method = "explicit" if args.m >= 1 and args.p >= args.m else "greedy"
        fn = {"explicit": tau.tau_explicit, "greedy": tau.tau_greedy, "brute": tau.tau_bruteforce}[method]
        return {"tau": fn(args.p, args.m, args.n), "method": method}
    if cmd == "tau-table":
        rows = []
        for p in args.p:
            for n in range(max(args.m, 1), args.n_max + 1):
                method = "explicit" if args.m >= 1 and p >= args.m else "greedy"
                rows.append((p, args.m, n, tau.tau(p, args.m, n), method))
        return Table(("p", "m", "n", "tau", "method"), rows)
    if cmd == "theta":
        if args.n < 2:
            return {"n": args.n, "theta": 0.0}
        return {"n": args.n, "theta": tau.chebyshev_theta(args.n, tau.sieve(args.n, args.threads))}
    if cmd == "primesum":
        table = tau.sieve(max(args.n, 2), args.threads)
        (row,) = tau.convergence_table(args.m, [args.n], table, args.threads)
        return {"n": row.n, "m": row.m, "sum": row.sum, "target": row.target, "ratio": row.ratio, "abs_err": row.abs_err}
    if cmd == "converge":
        limit = args.limit if args.limit is not None else max(args.checkpoints)
        table = tau.sieve(max(limit, 2), args.threads)
        rows = tau.convergence_table(args.m, args.checkpoints, table, args.threads)
        g = lambda x: float(f"{x:.12g}")
        return Table(
            tau.CSV_HEADER,
            ((r.n, r.m, g(r.sum), g(r.target), g(r.ratio), g(r.abs_err)) for r in rows),
            extra={"harmonic": format_rational(harmonic(args.m))},
        )
    if cmd == "mahler":
        s = _seq(args)
        C = mahler.schikhof_coefficients(s, args.m)
        if args.at is not None:
            t = mahler.tuple_bijection(args.at)
            return {
                "point": args.at,
                "tuple": list(t),
                "value": format_rational(mahler.mahler_reconstruct(C, args.at)),
                "divided_difference": format_rational(difference.divided_difference(s, t)),
            }
        return mahler.coefficients_json(C)
    if cmd == "norm":
        s = _seq(args)
        lhs = mahler.bruteforce_norm_lhs(s, args.m, args.p)
        rhs = mahler.truncated_norm_rhs(s, args.m, args.p)
        return {"p": args.p, "m": args.m, "lhs": lhs.to_json(), "rhs": rhs.to_json(), "equal": lhs.exponent == rhs.exponent}
    if cmd == "integrality":
        return mahler.integrality_report(_seq(args), args.m).to_json()
    if cmd == "clear-const":
        return {"m": args.m, "C": mahler.clearing_constant(_seq(args), args.m)}
    if cmd == "threshold":
        return checker.threshold_check(args.place, args.degree, args.m).to_json()
    if cmd == "hall-ruzsa":
        return checker.hall_ruzsa_report(_seq(args), args.m, args.window)
    if cmd == "extremal":
        s = checker.extremal_sequence(args.m, args.N)
        c = difference.finite_differences(s)
        return Table(
            ("n", "s", "c"),
            ((n, format_rational(a), format_rational(b)) for n, (a, b) in enumerate(zip(s.values, c))),
            "table",
            {"m": args.m, "N": args.N, "s": _fmt(s.values), "c": _fmt(c)},
        )
    if cmd == "local-approx":
        s = _seq(args)
        approx = checker.local_approx(s, args.m, args.n0, args.eps)
        lhs, rhs = checker.local_gcd_identity(approx, s)
        doc = approx.to_json()
        doc["gcd"] = [format_rational(lhs), format_rational(rhs)]
        doc["verdict"] = "pass" if lhs == rhs else "fail"
        return doc
    if cmd == "lipschitz":
        return checker.lipschitz_check(_seq(args), args.m, args.p, args.samples, args.seed)
    raise AssertionError(cmd)


def _emit(result, args, out) -> None:
    fmt = args.format or ("csv" if args.command in ("tau-table", "converge") else "json")
    if isinstance(result, Table):
        if fmt == "csv":
            out.write(result.to_csv())
            return
        result = result.to_json()
    elif fmt == "csv":
        raise argparse.ArgumentTypeError(f"csv output is only available for {', '.join(sorted(TABULAR))}")
    out.write(json.dumps(result, sort_keys=True) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = run(args)
        _emit(result, args, sys.stdout)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"ddx: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        err = {"error": str(exc), "type": type(exc).__name__, "command": args.command}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
