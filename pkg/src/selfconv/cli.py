"""Command line front end.

Exit codes: 0 when every check passes, 1 on a mathematical discrepancy,
2 on bad usage or degenerate input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Sequence

from . import identities as ids
from . import linearize as lin
from .exact import format_rational, parse_rational, rational_from_json, rational_to_json
from .poly import CubicSpec, DegenerateSpecError, QuadraticSpec, invariant_j_by_transvection
from .report import VerificationReport
from .sequences import gen_fib

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("series", "coef", "corollary", "tribonacci", "pde", "polarization", "all")


class UsageError(Exception):
    pass


# `verify all` grid; kept small enough to finish well under a minute.
ALL_SPECS = ((1, -1), (3, 2), (2, -3))
ALL_KS = (1, 2, 3)
ALL_NS = tuple(range(2, 8))
ALL_J_MAX = 40


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _cubic(text: str) -> CubicSpec:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--cubic takes three comma-separated rationals a,b,c")
    return CubicSpec(*(_rational(p) for p in parts))


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


# ---------------------------------------------------------------- alpha tables

def alpha_to_json(table: lin.AlphaTable, algo: str, report: VerificationReport) -> str:
    obj = {
        "command": "alpha",
        "algo": algo,
        "max_n": table.max_n,
        "pass": report.passed,
        "cells": [{"i": i, "n": n, **rational_to_json(v)} for i, n, v in table.cells()],
        "discrepancies": report.to_json()["discrepancies"],
    }
    return json.dumps(obj, indent=2) + "\n"


def alpha_from_json(text: str):
    obj = json.loads(text)
    vals = {(c["i"], c["n"]): rational_from_json(c) for c in obj["cells"]}
    table = lin.AlphaTable(obj["max_n"], vals, obj["algo"])
    report = VerificationReport(f"alpha cross-check ({obj['algo']})", [
        (d["location"], rational_from_json(d["expected"]), rational_from_json(d["actual"]))
        for d in obj["discrepancies"]])
    return table, obj["algo"], report


def _scaled_rows(table: lin.AlphaTable) -> List[List[str]]:
    return [[str(k)] + [format_rational(table.scaled(k, n)) for n in range(1, table.max_n + 1)]
            for k in range(table.max_n)]


def alpha_to_csv(table: lin.AlphaTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k\\n"] + [str(n) for n in range(1, table.max_n + 1)])
    w.writerows(_scaled_rows(table))
    return buf.getvalue()


def alpha_to_latex(table: lin.AlphaTable) -> str:
    cols = "|l||" + "l|" * table.max_n
    lines = [r"\begin{tabular}{%s}" % cols, r"\hline",
             " & ".join([r"$k\setminus n$"] + [str(n) for n in range(1, table.max_n + 1)])
             + r" \\ \hline"]
    lines += [" & ".join(row) + r" \\" for row in _scaled_rows(table)]
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def alpha_to_text(table: lin.AlphaTable) -> str:
    rows = [["k\\n"] + [str(n) for n in range(1, table.max_n + 1)]] + _scaled_rows(table)
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    body = "\n".join("  ".join(cell.rjust(wd) for cell, wd in zip(r, widths)) for r in rows)
    return f"k! * alpha~_(k,n) ({table.provenance})\n{body}\n"


def cross_check(tables: Sequence[lin.AlphaTable]) -> VerificationReport:
    ref = tables[0]
    rep = VerificationReport("alpha cross-check (" + ", ".join(t.provenance for t in tables) + ")")
    for other in tables[1:]:
        for i, n, v in ref.cells():
            rep.compare(f"{other.provenance} alpha~_({i},{n})", v, other.get(i, n))
    return rep


def cmd_alpha(args) -> tuple:
    if args.algo == "all":
        tables = [lin.ALGORITHMS[a](args.max_n) for a in ("rec", "conv", "series")]
    else:
        tables = [lin.ALGORITHMS[args.algo](args.max_n)]
    report = cross_check(tables)
    table = tables[0]
    fmt = args.format
    if fmt == "json":
        out = alpha_to_json(table, args.algo, report)
    elif fmt == "csv":
        out = alpha_to_csv(table)
    elif fmt == "latex":
        out = alpha_to_latex(table)
    else:
        out = alpha_to_text(table)
        if args.algo == "all":
            out += report.render() + "\n"
    return out, EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------- beta

def cmd_beta(args) -> tuple:
    n = args.n
    if args.s is not None and not 0 <= args.s < n:
        raise UsageError(f"--s must satisfy 0 <= s < n = {n}")
    ss = [args.s] if args.s is not None else list(range(n))
    betas = [lin.beta_poly(n, s) for s in ss]
    fmt = args.format
    if fmt == "json":
        obj = {"command": "beta", "pass": True, "n": n, "polynomials": [
            {"s": b.s, "text": b.poly.render(), "coeffs": [rational_to_json(c) for c in b.poly.coeffs]}
            for b in betas]}
        out = json.dumps(obj, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "s"] + [f"x^{d}" for d in range(n)])
        for b in betas:
            w.writerow([n, b.s] + [format_rational(b.poly.coeff(d)) for d in range(n)])
        out = buf.getvalue()
    elif fmt == "latex":
        out = "".join(r"\beta_{%d,%d}(x) &= %s \\" % (n, b.s, b.poly.render(latex=True)) + "\n"
                      for b in betas)
    else:
        out = "".join(f"beta_({n},{b.s})(x) = {b.poly.render()}\n" for b in betas)
    return out, EXIT_OK


# ---------------------------------------------------------------- fib

def cmd_fib(args) -> tuple:
    stream = gen_fib(QuadraticSpec(args.p, args.q), args.len)
    fmt = args.format
    if fmt == "json":
        obj = {"command": "fib", "pass": True, "p": rational_to_json(args.p), "q": rational_to_json(args.q),
               "U": [rational_to_json(u) for u in stream.U], "V": [rational_to_json(v) for v in stream.V]}
        out = json.dumps(obj, indent=2) + "\n"
    elif fmt in ("csv", "latex"):
        sep, end = (",", "\n") if fmt == "csv" else (" & ", " \\\\\n")
        out = f"m{sep}U{sep}V{end}" + "".join(
            f"{m}{sep}{format_rational(u)}{sep}{format_rational(v)}{end}"
            for m, (u, v) in enumerate(zip(stream.U, stream.V)))
    else:
        out = ("U: " + ", ".join(map(format_rational, stream.U)) + "\n"
               + "V: " + ", ".join(map(format_rational, stream.V)) + "\n")
    return out, EXIT_OK


# ---------------------------------------------------------------- verify

def _run_job(job):
    name, kwargs = job
    return JOBS[name](**kwargs)


def _tribonacci_suite(order, n_max):
    rep = VerificationReport("Tribonacci")
    rep.merge(ids.verify_tribonacci_F2(order))
    rep.merge(ids.verify_tribonacci_selfconv(n_max))
    j = ids.invariant_j(ids.TRIBONACCI_CUBIC)
    rep.compare("108 j", -176, 108 * j)
    return rep


JOBS = {
    "devS": ids.verify_devS,
    "devF": ids.verify_devF,
    "coef": ids.verify_coefxS,
    "corollary": ids.verify_corollary,
    "tribonacci": _tribonacci_suite,
    "pde": lin.check_pde,
    "polarization": lin.check_polarization,
}


def build_jobs(suite: str, args) -> list:
    if suite == "all":
        jobs = []
        for p, q in ALL_SPECS:
            spec = QuadraticSpec(p, q)
            jobs.append(("devS", dict(gamma=Fraction(3, 2), spec=spec, n=5, x_order=40)))
            jobs.append(("coef", dict(gamma=2, spec=spec, n=4, k_max=25)))
            for k in ALL_KS:
                jobs.append(("devF", dict(spec=spec, k=k, n=6, x_order=30)))
                for n in ALL_NS:
                    jobs.append(("corollary", dict(spec=spec, k=k, n=n, j_max=ALL_J_MAX)))
        jobs.append(("tribonacci", dict(order=50, n_max=200)))
        jobs.append(("pde", dict(y_order=22)))
        for p, q in ((3, 2), (1, -1)):
            jobs.append(("polarization", dict(spec=QuadraticSpec(p, q), x_order=8, y_order=8)))
        return jobs
    spec = QuadraticSpec(args.p, args.q) if suite not in ("tribonacci", "pde") else None
    if suite == "series":
        return [("devS", dict(gamma=args.gamma, spec=spec, n=args.n, x_order=args.order)),
                ("devF", dict(spec=spec, k=args.k, n=args.n, x_order=args.order))]
    if suite == "coef":
        return [("coef", dict(gamma=args.gamma, spec=spec, n=args.n, k_max=args.k_max))]
    if suite == "corollary":
        return [("corollary", dict(spec=spec, k=args.k, n=args.n, j_max=args.j_max))]
    if suite == "tribonacci":
        return [("tribonacci", dict(order=args.order, n_max=args.n_max))]
    if suite == "pde":
        return [("pde", dict(y_order=args.y_order))]
    return [("polarization", dict(spec=spec, x_order=args.order, y_order=args.y_order))]


def run_jobs(jobs: list, workers: int) -> List[VerificationReport]:
    if workers <= 1 or len(jobs) <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs))


def _render_reports(command: str, reports: List[VerificationReport], fmt: str, **extra) -> str:
    passed = all(r.passed for r in reports)
    if fmt == "json":
        obj = {"command": command, **extra, "pass": passed,
               "reports": [r.to_json() for r in reports],
               "discrepancies": [d for r in reports for d in r.to_json()["discrepancies"]]}
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scope", "pass", "checked", "discrepancies"])
        for r in reports:
            w.writerow([r.scope, int(r.passed), r.checked, len(r.discrepancies)])
        return buf.getvalue()
    if fmt == "latex":
        rows = [r"%s & %s & %d \\" % (r.scope.replace("_", r"\_"), "pass" if r.passed else "FAIL", r.checked)
                for r in reports]
        return "\n".join([r"\begin{tabular}{|l|l|r|}", r"\hline", r"check & status & cells \\ \hline"]
                         + rows + [r"\hline", r"\end{tabular}"]) + "\n"
    lines = [r.render() for r in reports]
    lines.append(f"{'PASS' if passed else 'FAIL'}: {sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple:
    if args.order is None:
        args.order = 50 if args.suite == "tribonacci" else 30
    for name in ("n", "k", "order", "y_order", "j_max", "k_max", "n_max"):
        if getattr(args, name) < (3 if name == "y_order" and args.suite == "pde" else 1):
            raise UsageError(f"--{name.replace('_', '-')} out of range")
    if args.suite == "series" and args.order < args.n:
        raise UsageError("--order must be at least --n for the series suite")
    if args.suite == "tribonacci" and args.order < 5:
        raise UsageError("--order must be >= 5 for the tribonacci suite")
    reports = run_jobs(build_jobs(args.suite, args), args.jobs)
    out = _render_reports("verify", reports, args.format, suite=args.suite)
    return out, EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------- invariant

def cmd_invariant(args) -> tuple:
    c = args.cubic
    j = ids.invariant_j(c)
    j_t = invariant_j_by_transvection(c)
    rep = VerificationReport(f"invariant j for Q = {c.Q.render()}")
    rep.compare("j closed form vs transvectant", j, j_t)
    linz = None
    if j != 0:
        try:
            linz = ids.cubic_linearization(c)
        except DegenerateSpecError:
            linz = None
    if args.format == "json":
        obj = {"command": "invariant", "pass": rep.passed,
               "cubic": [rational_to_json(v) for v in (c.a, c.b, c.c)],
               "j": rational_to_json(j), "j_transvection": rational_to_json(j_t),
               "108j": rational_to_json(108 * j),
               "linearization": None if linz is None else {
                   "A": linz.A.render(), "B": linz.B.render(), "constant": rational_to_json(linz.constant)},
               "discrepancies": rep.to_json()["discrepancies"]}
        out = json.dumps(obj, indent=2) + "\n"
    else:
        lines = [f"Q = {c.Q.render()}",
                 f"j (closed form)  = {format_rational(j)}",
                 f"j (transvectant) = {format_rational(j_t)}",
                 f"108 j = {format_rational(108 * j)}"]
        if linz is None:
            lines.append("j = 0 or repeated root: linearization skipped")
        else:
            lines += [f"A = {linz.A.render()}", f"B = {linz.B.render()}",
                      f"A Q' - B Q + 108 Q^2 = {format_rational(linz.constant)}",
                      f"F^2 = (A F' + B F + 108) / {format_rational(linz.constant)}"]
        lines.append(rep.render())
        out = "\n".join(lines) + "\n"
    return out, EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------- oeis / all

def cmd_oeis(args) -> tuple:
    table = lin.ALGORITHMS[args.algo](args.max_n)
    rep = lin.oeis_fixture_check(table)
    return _render_reports("oeis-check", [rep], args.format), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_all(args) -> tuple:
    tables = [lin.ALGORITHMS[a](15) for a in ("rec", "conv", "series")]
    reports = [cross_check(tables), lin.oeis_fixture_check(tables[0]), lin.beta_factor_check(12)]
    reports += run_jobs(build_jobs("all", args), args.jobs)
    trib = ids.TRIBONACCI_CUBIC
    inv = VerificationReport("invariant j at the Tribonacci cubic")
    inv.compare("j closed form vs transvectant", ids.invariant_j(trib), invariant_j_by_transvection(trib))
    reports.append(inv)
    out = _render_reports("all", reports, args.format)
    return out, EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "latex", "text"), default="text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="selfconv", description="Self-convolution linearization of generalized Fibonacci numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", parents=[common], help="table of k! alpha~_(k,n)")
    p.add_argument("--max-n", type=_positive, default=10)
    p.add_argument("--algo", choices=("rec", "conv", "series", "all"), default="rec")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("beta", parents=[common], help="beta_(n,s) polynomials")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--s", type=int)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("fib", parents=[common], help="U and V streams")
    p.add_argument("--p", type=_rational, default=Fraction(1))
    p.add_argument("--q", type=_rational, default=Fraction(-1))
    p.add_argument("--len", type=_positive, default=20)
    p.set_defaults(func=cmd_fib)

    p = sub.add_parser(
        "verify", parents=[common], help="run identity checks",
        description="`verify all` runs the series, coefficient and F_k expansion checks plus the "
                    "composition-sum grid for "
                    "(p,q) in {(1,-1),(3,2),(2,-3)}, k in 1..3, n in 2..7, j <= 40; the Tribonacci "
                    "identities to x^50 and n <= 200; the PDE to y^20; polarization at (8,8).")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--p", type=_rational, default=Fraction(1))
    p.add_argument("--q", type=_rational, default=Fraction(-1))
    p.add_argument("--gamma", type=_rational, default=Fraction(1))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--j-max", type=int, default=40)
    p.add_argument("--k-max", type=int, default=25)
    p.add_argument("--order", type=int, default=None,
                   help="x truncation order (default 50 for tribonacci, else 30)")
    p.add_argument("--y-order", type=int, default=8)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariant", parents=[common], help="cubic invariant j and F^2 operator")
    p.add_argument("--cubic", type=_cubic, default=ids.TRIBONACCI_CUBIC, metavar="A,B,C")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("oeis-check", parents=[common], help="compare table against OEIS prefixes")
    p.add_argument("--max-n", type=_positive, default=10)
    p.add_argument("--algo", choices=("rec", "conv", "series"), default="rec")
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("all", parents=[common], help="every check with default parameters")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except (ValueError, UsageError) as exc:
        print(f"selfconv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
