"""Command-line front end: ``quadcert <subcommand> [flags]``.

Exit status is 0 on success, 2 when a check reports violations and 1 on
usage or domain errors. Numeric flags take decimals only; enter 1/3 as
``0.3333333333`` (the rule then differs from Simpson's by ~3e-11).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness, means, zoo
from .bounds import (
    ConvexityClass,
    Interval,
    Method,
    Mode,
    RuleParams,
    best_bound,
    bound_for,
    classify_case,
    holder_moments,
    kernel_moments,
    rule_error,
)
from .errors import ConfigError, DomainError, OracleError, UnsupportedRuleError

CSV_DIR_ENV = "QUADCERT_CSV_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

VERIFY_HEADER = ("trial", "alpha", "lambda", "s", "q", "fn", "a", "b", "lhs", "rhs", "ratio", "violation")
COMPARE_HEADER = ("alpha", "lambda", "s", "q", "bound_new", "bound_classical", "ratio", "anomaly")
COEFFS_HEADER = ("name", "value")
REDUCE_HEADER = ("index", "label", "value", "reference", "ok")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for violations here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def short(x) -> str:
    return f"{x:.10g}" if isinstance(x, float) else cell(x)


class Output:
    """Collects table lines or CSV rows, then writes stdout and/or a file."""

    def __init__(self, args):
        self.format = args.format
        self.csv_path = resolve_csv_path(args.csv)
        self.lines: list[str] = []
        self.header: Optional[Sequence[str]] = None
        self.rows: list[Sequence] = []

    def line(self, text: str = ""):
        self.lines.append(text)

    def table(self, header, rows):
        self.header = header
        self.rows = [list(r) for r in rows]

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for r in self.rows:
            w.writerow([cell(x) for x in r])
        return buf.getvalue()

    def flush(self, stream):
        if self.csv_path is not None and self.header is not None:
            self.csv_path.parent.mkdir(parents=True, exist_ok=True)
            self.csv_path.write_text(self.csv_text(), encoding="utf-8")
        if self.format == "csv" and self.header is not None:
            stream.write(self.csv_text())
            return
        for text in self.lines:
            stream.write(text + "\n")


def resolve_csv_path(raw: Optional[str]) -> Optional[Path]:
    if raw is None:
        return None
    path = Path(raw)
    base = os.environ.get(CSV_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


# -- subcommands -------------------------------------------------------------


def _interval(args) -> Interval:
    if args.a is None or args.b is None:
        raise DomainError("--a and --b are required")
    return Interval(args.a, args.b)


def cmd_bound(args, out: Output) -> int:
    f = zoo.lookup(args.fn)
    params = RuleParams(args.alpha, args.lam)
    iv = _interval(args)
    if args.method == "best":
        mode = Mode(args.mode)
        cls = ConvexityClass(args.s, args.q, mode)
        methods = harness.GENERAL_METHODS if mode is Mode.S_CONVEX else (Method.HOLDER_CONCAVE,)
        b = best_bound(params, cls, f.derivative_data(params, iv), iv, methods)
    else:
        method = Method(args.method)
        mode = Mode.S_CONCAVE if method is Method.HOLDER_CONCAVE else Mode.S_CONVEX
        cls = ConvexityClass(args.s, args.q, mode)
        b = bound_for(method, params, cls, f.derivative_data(params, iv), iv)
    err = abs(rule_error(f, params, iv))
    cert = f.certificate
    certified = (
        cert.applies_to is zoo.Target.ABS_DERIV_POW_Q
        and cert.mode is cls.mode
        and cert.admits(cls.q)
        and cert.admits_s(cls.s)
    )
    rows = [
        ("bound", b.value),
        ("abs_error", err),
        ("ratio", harness.ratio(err, b.value)),
        *((label, v) for label, v in b.components),
    ]
    out.table(COEFFS_HEADER, rows)
    out.line(f"method      {b.method.value}")
    out.line(f"case        {b.case_id.value if b.case_id else '-'}")
    if b.cases_evaluated:
        out.line(f"evaluated   {', '.join(c.value for c in b.cases_evaluated)}")
    for label, v in b.components:
        out.line(f"  {label:<22}{short(v)}")
    out.line(f"bound       {short(b.value)}")
    out.line(f"|I_f|       {short(err)}")
    out.line(f"certified   {cell(certified)}")
    return EXIT_OK


def cmd_coeffs(args, out: Output) -> int:
    params = RuleParams(args.alpha, args.lam)
    info = classify_case(params)
    m = kernel_moments(params, args.s)
    rows = [(k, getattr(m, k)) for k in ("gamma1", "gamma2", "c1", "c2", "c3", "c4")]
    if args.p is not None:
        e = holder_moments(params, args.p)
        rows += [("eps1", e.eps1), ("eps2", e.eps2)]
    out.table(COEFFS_HEADER, rows)
    out.line(f"case {info.case.value} (applicable: {', '.join(c.value for c in info.applicable)})")
    for name, v in rows:
        out.line(f"  {name:<8}{short(v)}")
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    kw = {}
    if args.fn:
        kw["function_ids"] = tuple(args.fn)
    if args.method:
        kw["methods"] = tuple(Method(m) for m in args.method)
    if args.q:
        kw["q_set"] = tuple(args.q)
    if args.s_range:
        kw["s_range"] = tuple(args.s_range)
    cfg = harness.FuzzConfig(trials=args.trials, seed=args.seed, tol=args.tol, **kw)
    rep = harness.fuzz_verify(cfg)
    out.table(
        VERIFY_HEADER,
        [(r.trial, r.alpha, r.lam, r.s, r.q, r.fn, r.a, r.b, r.lhs, r.rhs, r.ratio, r.violation) for r in rep.rows],
    )
    out.line(f"trials      {rep.trials_run}")
    out.line(f"violations  {len(rep.violations)}")
    if rep.failures:
        out.line(f"oracle failures {len(rep.failures)}")
    if rep.tightness_stats:
        lo, med, hi = rep.tightness_stats
        out.line(f"ratio       min {short(lo)}  median {short(med)}  max {short(hi)}")
        out.line(f"tightest    {rep.worst_case}")
    for v in rep.violations[:20]:
        out.line(f"VIOLATION   {v.params} lhs={short(v.lhs)} rhs={short(v.rhs)}")
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_reduce(args, out: Output) -> int:
    rep = harness.reduction_check(seed=args.seed, tol=args.tol)
    out.table(REDUCE_HEADER, [(r.index, r.label, r.value, r.reference, r.ok) for r in rep.rows])
    labels = sorted({r.label for r in rep.rows})
    for label in labels:
        mine = [r for r in rep.rows if r.label == label]
        worst = max(abs(r.value - r.reference) for r in mine)
        out.line(f"{label:<56}{len(mine):>5} checks  max diff {worst:.3g}")
    out.line(f"failed {len(rep.violations)} of {rep.trials_run}")
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_compare(args, out: Output) -> int:
    rows = harness.tightness_compare()
    out.table(
        COMPARE_HEADER,
        [(r.alpha, r.lam, r.s, r.q, r.bound_new, r.bound_classical, r.ratio, r.anomaly) for r in rows],
    )
    out.line(f"{'alpha':>6} {'lambda':>6} {'s':>5} {'q':>4} {'new':>12} {'earlier':>12} {'ratio':>8}  source")
    for r in rows:
        flag = "  ANOMALY" if r.anomaly else ""
        out.line(
            f"{r.alpha:6.3g} {r.lam:6.3g} {r.s:5.3g} {r.q:4.3g} {r.bound_new:12.6g} "
            f"{r.bound_classical:12.6g} {r.ratio:8.5f}  {r.source}{flag}"
        )
    anomalies = sum(r.anomaly for r in rows)
    coeff = harness.coefficient_inequalities()
    broken = [s for s, ok1, ok2 in coeff if not (ok1 and ok2)]
    out.line(f"anomalies {anomalies} of {len(rows)}")
    out.line(f"coefficient inequalities: {len(coeff) - len(broken)} of {len(coeff)} hold")
    return EXIT_VIOLATION if broken else EXIT_OK


def cmd_means(args, out: Output) -> int:
    if args.sweep:
        res = means.proposition_sweep()
        out.table(
            ("kind", "a", "b", "alpha", "lambda", "s", "q", "lhs", "rhs", "holds"),
            [(k, *g, r.lhs, r.rhs, r.holds) for k, g, r in res],
        )
        bad = [(k, g) for k, g, r in res if not r.holds]
        out.line(f"proposition checks: {len(res) - len(bad)} of {len(res)} hold")
        for k, g in bad:
            out.line(f"FAILED {k} {g}")
        return EXIT_VIOLATION if bad else EXIT_OK
    a, b = args.a, args.b
    if a is None or b is None:
        raise DomainError("--a and --b are required (or use --sweep)")
    p = args.p if args.p is not None else args.s + 1.0
    rows = [
        ("weighted_arith", means.weighted_arith(args.alpha, a, b)),
        ("arith", means.arith(a, b)),
        ("p_log", means.p_log(a, b, p)),
    ]
    reports = [("power_mean", means.proposition_power_mean_check(a, b, args.alpha, args.lam, args.s, args.q))]
    if args.q > 1.0:
        reports.append(("holder", means.proposition_holder_check(a, b, args.alpha, args.lam, args.s, args.q)))
    for name, r in reports:
        rows += [(f"{name}_lhs", r.lhs), (f"{name}_rhs", r.rhs), (f"{name}_holds", r.holds)]
    out.table(COEFFS_HEADER, rows)
    for name, v in rows:
        out.line(f"{name:<18}{short(v)}")
    return EXIT_OK if all(r.holds for _, r in reports) else EXIT_VIOLATION


def cmd_identity(args, out: Output) -> int:
    if args.configs:
        fns = [zoo.lookup(args.fn)] if args.fn else None
        res = harness.identity_campaign(args.configs, args.seed, fns)
    else:
        if not args.fn:
            raise DomainError("--fn is required unless --configs is given")
        f = zoo.lookup(args.fn)
        params = RuleParams(args.alpha, args.lam)
        iv = _interval(args)
        from .oracle import kernel_identity_residual

        res = [(f.id, {"alpha": params.alpha, "lambda": params.lam, "a": iv.a, "b": iv.b},
                kernel_identity_residual(f, params, iv))]
    out.table(
        ("fn", "alpha", "lambda", "a", "b", "residual"),
        [(fid, c["alpha"], c["lambda"], c["a"], c["b"], r) for fid, c, r in res],
    )
    worst = max(r for _, _, r in res)
    bad = sum(r > args.tol for _, _, r in res)
    out.line(f"configurations {len(res)}  max residual {worst:.3g}  above {args.tol:g}: {bad}")
    return EXIT_VIOLATION if bad else EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(p):
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.add_argument("--csv", metavar="PATH", help=f"also write CSV here (relative to ${CSV_DIR_ENV} if set)")


def _rule_flags(p, required=True):
    p.add_argument("--alpha", type=float, required=required, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, required=required, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadcert", description="Error bounds for the three-point rule.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", help="compute one bound with its breakdown")
    p.add_argument("--method", required=True, choices=[m.value for m in harness.GENERAL_METHODS] + ["best"])
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.S_CONVEX.value,
                   help="convexity mode for --method best")
    _rule_flags(p)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    _common(p)
    p.set_defaults(run=cmd_bound)

    p = sub.add_parser("coeffs", help="print kernel moments")
    _rule_flags(p)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--p", type=float, help="Hoelder exponent for eps1/eps2")
    _common(p)
    p.set_defaults(run=cmd_coeffs)

    p = sub.add_parser("verify", help="soundness fuzz campaign")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--fn", action="append", help="restrict to function id (repeatable)")
    p.add_argument("--method", action="append", choices=[m.value for m in harness.GENERAL_METHODS])
    p.add_argument("--q", type=float, action="append", help="exponent to sample (repeatable)")
    p.add_argument("--s-range", type=float, nargs=2, metavar=("LO", "HI"))
    _common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("reduce", help="closed-form reduction and specialization checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    _common(p)
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("compare", help="new versus earlier midpoint/trapezoid bounds")
    _common(p)
    p.set_defaults(run=cmd_compare)

    p = sub.add_parser("means", help="means and the mean inequalities")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _rule_flags(p, required=False)
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--p", type=float, help="order of the logarithmic mean (default s+1)")
    p.add_argument("--sweep", action="store_true", help="run the standard grid instead")
    _common(p)
    p.set_defaults(run=cmd_means)

    p = sub.add_parser("identity", help="residual of the kernel representation")
    p.add_argument("--fn")
    _rule_flags(p, required=False)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--configs", type=int, default=0, help="random configurations per function")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    _common(p)
    p.set_defaults(run=cmd_identity)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    for name in ("alpha", "lam", "s", "q", "a", "b", "p", "tol"):
        v = getattr(args, name, None)
        if isinstance(v, float) and not math.isfinite(v):
            print(f"quadcert: error: --{name} must be finite", file=stderr)
            return EXIT_USAGE
    out = Output(args)
    try:
        code = args.run(args, out)
    except (DomainError, ConfigError, UnsupportedRuleError, OracleError) as exc:
        print(f"quadcert: error: {exc}", file=stderr)
        return EXIT_USAGE
    out.flush(stdout)
    return code
