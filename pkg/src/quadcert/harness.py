"""Verification campaigns over the bounds, the oracle and the function zoo."""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .bounds import classical, named
from .bounds.rule import rule_error
from .bounds.general import (
    bound_for,
    bound_holder_concave,
    bound_holder_convex,
    bound_power_mean,
    power_mean_q1,
)
from .bounds.types import ConvexityClass, DerivativeData, Interval, Method, Mode, RuleParams
from .bounds.moments import holder_moments, kernel_moments
from .errors import ConfigError, OracleError
from .oracle import MomentKind, kernel_identity_residual, moment_integral_numeric
from . import zoo

GENERAL_METHODS = (Method.POWER_MEAN, Method.HOLDER_CONVEX, Method.HOLDER_CONCAVE)


def ratio(lhs: float, rhs: float) -> float:
    if rhs > 0.0:
        return lhs / rhs
    return 0.0 if lhs == 0.0 else math.inf


def close(x: float, y: float, tol: float) -> bool:
    """``|x - y| <= tol`` for O(1) values, relative beyond magnitude 1."""
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class Violation:
    index: int
    params: dict
    lhs: float
    rhs: float
    gap: float


@dataclass(frozen=True)
class VerificationReport:
    trials_run: int
    violations: tuple[Violation, ...]
    rows: tuple = ()
    tightness_stats: Optional[tuple[float, float, float]] = None  # min, median, max
    worst_case: Optional[dict] = None
    failures: tuple[tuple[int, str], ...] = ()  # oracle failures, per trial

    @property
    def passed(self) -> bool:
        return not self.violations


def _summarize(rows, violations, failures=()) -> VerificationReport:
    ratios = [r.ratio for r in rows if math.isfinite(r.ratio)]
    stats = worst = None
    if ratios:
        stats = (min(ratios), statistics.median(ratios), max(ratios))
        top = max(rows, key=lambda r: r.ratio)
        worst = top.params()
    return VerificationReport(
        trials_run=len(rows),
        violations=tuple(sorted(violations, key=lambda v: v.index)),
        rows=tuple(rows),
        tightness_stats=stats,
        worst_case=worst,
        failures=tuple(failures),
    )


# -- soundness fuzzing -------------------------------------------------------


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 10_000
    seed: int = 0
    alpha_range: tuple[float, float] = (0.0, 1.0)
    lambda_range: tuple[float, float] = (0.0, 1.0)
    s_range: tuple[float, float] = (0.05, 1.0)
    q_set: tuple[float, ...] = (1.0, 1.5, 2.0, 3.0)
    function_ids: tuple[str, ...] = ()  # empty: every derivative-certified function
    methods: tuple[Method, ...] = GENERAL_METHODS
    tol: float = 1e-8
    interval_range: tuple[float, float] = (0.01, 10.0)
    min_width: float = 0.1
    boundary_every: int = 100

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        for name, lo_ok in (("alpha_range", 0.0), ("lambda_range", 0.0)):
            lo, hi = getattr(self, name)
            if not lo_ok <= lo <= hi <= 1.0:
                raise ConfigError(f"{name} must satisfy 0 <= lo <= hi <= 1, got {(lo, hi)}")
        lo, hi = self.s_range
        if not 0.0 < lo <= hi <= 1.0:
            raise ConfigError(f"s_range must satisfy 0 < lo <= hi <= 1, got {(lo, hi)}")
        if not self.q_set or min(self.q_set) < 1.0:
            raise ConfigError("q_set must be non-empty with every q >= 1")
        if not self.tol >= 0.0:
            raise ConfigError("tol must be >= 0")
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        for m in self.methods:
            if m not in GENERAL_METHODS:
                raise ConfigError(f"fuzzing covers the general bounds only, got {m.value}")


@dataclass(frozen=True)
class Pairing:
    fn: zoo.TestFunction
    method: Method
    qs: tuple[float, ...]
    s_bounds: tuple[float, float]
    window: tuple[float, float]


def _pairing(cfg: FuzzConfig, f: zoo.TestFunction, method: Method) -> Optional[Pairing]:
    cert = f.certificate
    if cert.applies_to is not zoo.Target.ABS_DERIV_POW_Q:
        return None
    want = Mode.S_CONCAVE if method is Method.HOLDER_CONCAVE else Mode.S_CONVEX
    if cert.mode is not want:
        return None
    holder = method is not Method.POWER_MEAN
    qs = tuple(q for q in cfg.q_set if cert.admits(q) and (q > 1.0 or not holder))
    if not qs:
        return None
    s_lo, s_hi = cfg.s_range
    if cert.mode is Mode.S_CONVEX:
        if s_lo > cert.s:
            return None
        s_bounds = (s_lo, min(s_hi, cert.s))
    else:
        if not s_lo <= cert.s <= s_hi:
            return None
        s_bounds = (cert.s, cert.s)
    lo = max(f.domain.a, cfg.interval_range[0])
    hi = min(f.domain.b, cfg.interval_range[1])
    if hi - lo < cfg.min_width:
        return None
    return Pairing(f, method, qs, s_bounds, (lo, hi))


def fuzz_pairings(cfg: FuzzConfig) -> list[Pairing]:
    """All (function, method) pairs whose certificate fits the configuration."""
    if cfg.function_ids:
        fns = [zoo.lookup(i) for i in cfg.function_ids]
    else:
        fns = zoo.derivative_certified()
    pairs = []
    for f in fns:
        mine = [p for m in cfg.methods if (p := _pairing(cfg, f, m)) is not None]
        if not mine:
            raise ConfigError(
                f"{f.id}: certificate ({f.certificate.mode.value}, s={f.certificate.s:g}) "
                f"fits none of the methods {[m.value for m in cfg.methods]}"
            )
        pairs += mine
    return pairs


@dataclass(frozen=True)
class TrialRow:
    trial: int
    alpha: float
    lam: float
    s: float
    q: float
    fn: str
    method: Method
    a: float
    b: float
    lhs: float
    rhs: float
    ratio: float
    violation: bool

    def params(self) -> dict:
        return {
            "trial": self.trial, "alpha": self.alpha, "lambda": self.lam, "s": self.s,
            "q": self.q, "fn": self.fn, "method": self.method.value, "a": self.a, "b": self.b,
        }


def _boundary_value(rng_lo: float, rng_hi: float, k: int) -> Optional[float]:
    options = [v for v in (0.0, 1.0) if rng_lo <= v <= rng_hi]
    return options[k % len(options)] if options else None


def fuzz_verify(cfg: FuzzConfig) -> VerificationReport:
    """Check ``|I_f| <= bound + tol`` on randomly sampled certified configurations.

    Deterministic for a fixed seed. Every ``boundary_every``-th trial pins
    ``alpha`` and ``lam`` to the endpoints 0/1 (cycling through the four
    corners) where the configured ranges allow it.
    """
    pairs = fuzz_pairings(cfg)
    rng = random.Random(cfg.seed)
    rows, violations, failures = [], [], []
    for i in range(cfg.trials):
        pair = pairs[rng.randrange(len(pairs))]
        q = pair.qs[rng.randrange(len(pair.qs))]
        s = rng.uniform(*pair.s_bounds)
        alpha = rng.uniform(*cfg.alpha_range)
        lam = rng.uniform(*cfg.lambda_range)
        lo, hi = pair.window
        a = rng.uniform(lo, hi - cfg.min_width)
        b = rng.uniform(a + cfg.min_width, hi)
        if cfg.boundary_every and (i + 1) % cfg.boundary_every == 0:
            k = (i + 1) // cfg.boundary_every
            forced_a = _boundary_value(*cfg.alpha_range, k)
            forced_l = _boundary_value(*cfg.lambda_range, k // 2)
            alpha = alpha if forced_a is None else forced_a
            lam = lam if forced_l is None else forced_l
        params = RuleParams(alpha, lam)
        iv = Interval(a, b)
        f = pair.fn
        cls = ConvexityClass(s, q, f.certificate.mode)
        try:
            lhs = abs(rule_error(f, params, iv))
        except OracleError as exc:
            failures.append((i, str(exc)))
            continue
        rhs = bound_for(pair.method, params, cls, f.derivative_data(params, iv), iv).value
        bad = lhs > rhs + cfg.tol
        row = TrialRow(i, alpha, lam, s, q, f.id, pair.method, a, b, lhs, rhs, ratio(lhs, rhs), bad)
        rows.append(row)
        if bad:
            violations.append(Violation(i, row.params(), lhs, rhs, lhs - rhs))
    return _summarize(rows, violations, failures)


# -- equality checks ---------------------------------------------------------


@dataclass(frozen=True)
class EqualityRow:
    index: int
    label: str
    setting: dict
    value: float
    reference: float
    ok: bool

    @property
    def ratio(self) -> float:
        return ratio(self.value, self.reference)

    def params(self) -> dict:
        return {"label": self.label, **self.setting}


class _Collector:
    def __init__(self, tol: float):
        self.tol = tol
        self.rows: list[EqualityRow] = []

    def add(self, label, setting, value, reference):
        ok = close(value, reference, self.tol)
        self.rows.append(EqualityRow(len(self.rows), label, dict(setting), value, reference, ok))

    def report(self) -> VerificationReport:
        bad = [
            Violation(r.index, r.params(), r.value, r.reference, abs(r.value - r.reference))
            for r in self.rows
            if not r.ok
        ]
        return _summarize(self.rows, bad)


def _random_data(rng: random.Random) -> DerivativeData:
    u = lambda: rng.uniform(0.0, 2.0)
    return DerivativeData(d_a=u(), d_b=u(), d_mix=u(), d_lo=u(), d_hi=u())


def reduction_grid() -> list[tuple[float, float, float]]:
    steps = [k / 8 for k in range(9)]
    return [(al, lam, q) for al in steps for lam in steps for q in (1.0, 2.0, 3.0)]


def reduction_check(seed: int = 0, tol: float = 1e-12) -> VerificationReport:
    """Closed-form equalities that must hold to round-off.

    * the power-mean bound at ``s = 1`` against the convex-case coefficients
      on a 9 x 9 x 3 ``(alpha, lam, q)`` grid with random endpoint data;
    * the general bounds at ``(1/2, 0)``, ``(1/2, 1/3)``, ``(1/2, 1)`` against the
      hand-specialized midpoint/Simpson/trapezoid forms;
    * the ``q = 1`` collected form against the general power-mean bound;
    * the Simpson Hoelder specialization against the earlier Simpson bound,
      and the midpoint Hoelder bound against its Hermite-Hadamard relaxation.
    """
    rng = random.Random(seed)
    out = _Collector(tol)

    for alpha, lam, q in reduction_grid():
        d = _random_data(rng)
        a = rng.uniform(0.0, 2.0)
        iv = Interval(a, a + rng.uniform(0.1, 3.0))
        params = RuleParams(alpha, lam)
        new = bound_power_mean(params, ConvexityClass(1.0, q), d, iv).value
        old = classical.classic_convex(params, q, d, iv).value
        out.add("s=1 power-mean vs convex case", {"alpha": alpha, "lambda": lam, "q": q}, new, old)

    svals = [k / 10 for k in range(1, 11)]
    for s in svals:
        for q in (1.0, 1.5, 2.0, 3.0):
            d = _random_data(rng)
            iv = Interval(rng.uniform(0.0, 1.0), rng.uniform(1.5, 3.0))
            setting = {"s": s, "q": q}
            cls = ConvexityClass(s, q)
            for rule, fn in (
                (named.Rule.MIDPOINT, named.midpoint_power_mean),
                (named.Rule.SIMPSON, named.simpson_power_mean),
                (named.Rule.TRAPEZOID, named.trapezoid_power_mean),
            ):
                general = bound_power_mean(rule.params, cls, d, iv).value
                out.add(f"power-mean {rule.value}", setting, general, fn(cls, d, iv).value)
            if q == 1.0:
                params = RuleParams(rng.random(), rng.random())
                out.add(
                    "q=1 collected form",
                    {**setting, "alpha": params.alpha, "lambda": params.lam},
                    power_mean_q1(params, s, d, iv).value,
                    bound_power_mean(params, cls, d, iv).value,
                )
                continue
            for rule, fn in (
                (named.Rule.MIDPOINT, named.midpoint_holder),
                (named.Rule.SIMPSON, named.simpson_holder),
                (named.Rule.TRAPEZOID, named.trapezoid_holder),
            ):
                general = bound_holder_convex(rule.params, cls, d, iv).value
                out.add(f"holder-convex {rule.value}", setting, general, fn(cls, d, iv).value)
            out.add(
                "simpson holder vs earlier simpson",
                setting,
                named.simpson_holder(cls, d, iv).value,
                classical.classic_simpson_holder(cls, d, iv).value,
            )
            # Hermite-Hadamard extremal node value turns the midpoint form into the relaxed one
            extremal = math.pow(
                math.pow(2.0, 1.0 - s) * (d.d_a**q + d.d_b**q) / (s + 1.0), 1.0 / q
            )
            dx = DerivativeData(d.d_a, d.d_b, d_mix=extremal)
            out.add(
                "midpoint holder at extremal node vs relaxed midpoint",
                setting,
                named.midpoint_holder(cls, dx, iv).value,
                classical.classic_midpoint_holder(cls, dx, iv).value,
            )
            ccls = ConvexityClass(s, q, Mode.S_CONCAVE)
            for rule in (named.Rule.MIDPOINT, named.Rule.TRAPEZOID):
                general = bound_holder_concave(rule.params, ccls, d, iv).value
                out.add(
                    f"holder-concave {rule.value}",
                    setting,
                    general,
                    named.quarter_node_concave(ccls, d, iv).value,
                )
                if s == 1.0:
                    out.add(
                        f"holder-concave {rule.value} (s=1 form)",
                        setting,
                        general,
                        named.quarter_node_concave_s1(ccls, d, iv).value,
                    )
    return out.report()


# -- tightness comparison ----------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    s: float
    q: float
    d: DerivativeData
    iv: Interval
    source: str = ""


@dataclass(frozen=True)
class ComparisonRow:
    alpha: float
    lam: float
    s: float
    q: float
    bound_new: float
    bound_classical: float
    ratio: float
    anomaly: bool
    source: str = ""

    def params(self) -> dict:
        return {"alpha": self.alpha, "lambda": self.lam, "s": self.s, "q": self.q, "source": self.source}


def default_comparison_grid() -> list[GridPoint]:
    """Derivative data of the convex zoo members on ``[1, 3]`` at several (s, q)."""
    iv = Interval(1.0, 3.0)
    mid = named.Rule.MIDPOINT.params
    points = []
    for f in zoo.derivative_certified():
        if f.certificate.mode is not Mode.S_CONVEX:
            continue
        d = f.derivative_data(mid, iv)
        for s in (0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
            for q in (1.0, 1.5, 2.0, 3.0):
                points.append(GridPoint(s, q, d, iv, f.id))
    return points


def tightness_compare(grid: Optional[Iterable[GridPoint]] = None, slack: float = 1e-12) -> list[ComparisonRow]:
    """New midpoint/trapezoid bounds against the earlier ones, point by point.

    Midpoint: general power-mean bound at ``(1/2, 0)`` against the earlier
    power-mean midpoint bound. Trapezoid: general Hoelder bound at ``(1/2, 1)``
    against the earlier Hoelder trapezoid bound (``q > 1``, ``s < 1`` only).
    ``anomaly`` flags points where the new bound is larger.
    """
    rows = []
    for pt in default_comparison_grid() if grid is None else grid:
        cls = ConvexityClass(pt.s, pt.q)
        mid = named.Rule.MIDPOINT.params
        new = bound_power_mean(mid, cls, pt.d, pt.iv).value
        old = classical.classic_midpoint(cls, pt.d, pt.iv).value
        r = ratio(new, old)
        rows.append(ComparisonRow(mid.alpha, mid.lam, pt.s, pt.q, new, old, r, r > 1.0 + slack, pt.source))
        if pt.q > 1.0 and pt.s < 1.0:
            trap = named.Rule.TRAPEZOID.params
            new = bound_holder_convex(trap, cls, pt.d, pt.iv).value
            old = classical.classic_trapezoid_holder(cls, pt.d, pt.iv).value
            r = ratio(new, old)
            rows.append(ComparisonRow(trap.alpha, trap.lam, pt.s, pt.q, new, old, r, r > 1.0 + slack, pt.source))
    return rows


def coefficient_inequalities(n: int = 100) -> list[tuple[float, bool, bool]]:
    """``(s, first holds, second holds)`` on ``s = 1/n, 2/n, ..., 1``."""
    out = []
    for k in range(1, n + 1):
        s = k / n
        (new1, old1), (new2, old2) = classical.improvement_coefficients(s)
        out.append((s, new1 <= old1, new2 <= old2))
    return out


# -- oracle campaigns --------------------------------------------------------


@dataclass(frozen=True)
class CoefficientRow:
    name: str
    alpha: float
    lam: float
    param: Optional[float]
    closed: float
    numeric: float

    @property
    def error(self) -> float:
        return abs(self.closed - self.numeric)


def coefficient_campaign(
    steps: int = 20,
    svals: Sequence[float] = tuple(k / 10 for k in range(1, 11)),
    pvals: Sequence[float] = (1.5, 2.0, 3.0),
) -> list[CoefficientRow]:
    """Closed-form moments against quadrature on an ``(alpha, lam)`` grid.

    Each closed form is compared only on its branch of use (both on ties).
    """
    rows = []
    grid = [k / steps for k in range(steps + 1)]
    for alpha in grid:
        for lam in grid:
            params = RuleParams(alpha, lam)
            al, oma = alpha * lam, 1.0 - alpha
            small = [True] if al < oma else [False] if al > oma else [True, False]
            for branch in small:
                gname = "gamma2" if branch else "gamma1"
                closed = getattr(kernel_moments(params, 1.0), gname)
                rows.append(CoefficientRow(gname, alpha, lam, None, closed,
                                           moment_integral_numeric(MomentKind.ABS, alpha, lam)))
                for s in svals:
                    m = kernel_moments(params, s)
                    tname, oname = ("c1", "c2") if branch else ("c3", "c4")
                    rows.append(CoefficientRow(tname, alpha, lam, s, getattr(m, tname),
                                               moment_integral_numeric(MomentKind.ABS_TS, alpha, lam, s)))
                    rows.append(CoefficientRow(oname, alpha, lam, s, getattr(m, oname),
                                               moment_integral_numeric(MomentKind.ABS_ONE_MINUS_TS, alpha, lam, s)))
                for p in pvals:
                    eps = holder_moments(params, p)
                    ename = "eps1" if branch else "eps2"
                    rows.append(CoefficientRow(ename, alpha, lam, p, getattr(eps, ename) / (p + 1.0),
                                               moment_integral_numeric(MomentKind.ABS_POW, alpha, lam, p)))
    return rows


def identity_campaign(configs: int = 100, seed: int = 0, functions=None) -> list[tuple[str, dict, float]]:
    """Residual of the kernel representation for random configurations per function."""
    rng = random.Random(seed)
    out = []
    for f in zoo.catalog() if functions is None else functions:
        lo = max(f.domain.a, 0.01)
        hi = min(f.domain.b, 10.0)
        for _ in range(configs):
            params = RuleParams(rng.random(), rng.random())
            a = rng.uniform(lo, hi - 0.1)
            iv = Interval(a, rng.uniform(a + 0.1, hi))
            res = kernel_identity_residual(f, params, iv)
            out.append((f.id, {"alpha": params.alpha, "lambda": params.lam, "a": iv.a, "b": iv.b}, res))
    return out
