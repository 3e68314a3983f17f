"""Brute-force numerics used to check the closed forms.

Nothing here calls the closed-form coefficients of :mod:`quadcert.bounds`;
every quantity is obtained by adaptive integration or by sampling.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from scipy import integrate as _sp_integrate

from .bounds.rule import rule_error
from .bounds.types import Interval, RuleParams
from .errors import DomainError, OracleError

DEFAULT_TOL = 1e-10
MAX_SUBINTERVALS = 200


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def integrate(
    f: Callable[[float], float],
    iv: Interval,
    tol: float = DEFAULT_TOL,
    points: Iterable[float] = (),
    rel_tol: float = 0.0,
    max_subintervals: int = MAX_SUBINTERVALS,
    endpoint_powers: Optional[tuple[float, float]] = None,
) -> QuadResult:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    ``points`` are forced breakpoints (kinks of ``|t - c|`` kernels); those
    outside the open interval are ignored. With ``endpoint_powers=(u, v)``
    the integrand is ``f(x) * (x-a)**u * (b-x)**v`` and a rule built for
    those endpoint singularities is used instead (``points`` must be empty).
    Succeeds when the error estimate is at most ``max(tol, rel_tol*|value|)``
    and raises :class:`OracleError` with the partial estimate otherwise.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    a, b = iv.a, iv.b
    inner = sorted({float(x) for x in points if a < x < b})
    kw = {}
    if endpoint_powers is not None:
        if inner:
            raise DomainError("breakpoints cannot be combined with endpoint powers")
        kw = {"weight": "alg", "wvar": tuple(float(e) for e in endpoint_powers)}
    elif inner:
        kw = {"points": inner}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = _sp_integrate.quad(
            f, a, b, epsabs=tol, epsrel=rel_tol, limit=max_subintervals, full_output=1, **kw
        )
    value, err, info = out[0], out[1], out[2]
    budget = max(tol, rel_tol * abs(value))
    if len(out) > 3 or not err <= budget or not math.isfinite(value):
        msg = out[3] if len(out) > 3 else "error estimate above tolerance"
        raise OracleError(
            f"integration over [{a}, {b}] failed: {msg}", value=value, abs_error=err
        )
    return QuadResult(float(value), float(err), int(info["neval"]))


def integrate_unit(f: Callable[[float], float], lo: float, hi: float, tol: float, points=()) -> float:
    """``int_lo^hi f`` allowing ``lo == hi`` (returns 0)."""
    if hi <= lo:
        return 0.0
    return integrate(f, Interval(lo, hi), tol, points).value


class MomentKind(enum.Enum):
    ABS = "abs"  # weight 1
    ABS_TS = "abs-ts"  # weight t**s
    ABS_ONE_MINUS_TS = "abs-one-minus-ts"  # weight (1-t)**s
    ABS_POW = "abs-pow"  # weight |t - c|**(p-1)


def _weighted_piece(g, lo: float, hi: float, kind: "MomentKind", s: float, tol: float) -> float:
    """``int_lo^hi g(t) w(t) dt`` for ``w = t**s`` or ``(1-t)**s``.

    The weight is singular at 0 or 1; integrating from that endpoint and
    subtracting keeps the singularity on an interval end where the
    algebraic-weight rule handles it exactly.
    """
    if hi <= lo:
        return 0.0
    if kind is MomentKind.ABS_TS:

        def from_zero(x):
            if x <= 0.0:
                return 0.0
            return integrate(g, Interval(0.0, x), tol, endpoint_powers=(s, 0.0)).value

        return from_zero(hi) - from_zero(lo)

    def to_one(x):
        if x >= 1.0:
            return 0.0
        return integrate(g, Interval(x, 1.0), tol, endpoint_powers=(0.0, s)).value

    return to_one(lo) - to_one(hi)


def moment_integral_numeric(
    kind: MomentKind, alpha: float, lam: float, s_or_p: Optional[float] = None, tol: float = 1e-12
) -> float:
    """``int_0^{1-alpha} |t - alpha*lam| w(t) dt`` by quadrature, split at the kink."""
    kind = MomentKind(kind)
    RuleParams(alpha, lam)
    c = alpha * lam
    hi = 1.0 - alpha
    mid = min(c, hi)
    below = lambda t: c - t
    above = lambda t: t - c
    if kind in (MomentKind.ABS_TS, MomentKind.ABS_ONE_MINUS_TS):
        s = float(s_or_p)
        return _weighted_piece(below, 0.0, mid, kind, s, tol / 4) + _weighted_piece(
            above, c, hi, kind, s, tol / 4
        )
    if kind is MomentKind.ABS:
        w = lambda t: 1.0
    else:
        p = float(s_or_p)
        if not p > 1.0:
            raise DomainError(f"p must be > 1, got {p}")
        w = lambda t: abs(t - c) ** (p - 1.0)
    # c beyond hi: the kernel is c - t throughout and the second piece is empty
    return integrate_unit(lambda t: below(t) * w(t), 0.0, mid, tol / 2) + integrate_unit(
        lambda t: above(t) * w(t), c, hi, tol / 2
    )


# -- s-convexity probe -------------------------------------------------------


@dataclass(frozen=True)
class ProbeVerdict:
    passed: bool
    witness: Optional[tuple[float, float, float]] = None  # (x, y, weight)
    excess: float = 0.0

    def __bool__(self) -> bool:
        return self.passed


def _vectorized(g):
    def call(x):
        try:
            out = np.asarray(g(x), dtype=float)
            if out.shape == np.shape(x):
                return out
        except (TypeError, ValueError):
            pass
        return np.vectorize(lambda v: float(g(float(v))), otypes=[float])(x)

    return call


def sconvexity_probe(
    g: Callable,
    s: float,
    iv: Interval,
    n: int = 41,
    concave: bool = False,
    tol: float = 1e-12,
) -> ProbeVerdict:
    """Sample the s-convexity inequality on an ``n x n x n`` grid.

    Checks ``g(w*x + (1-w)*y) <= w**s g(x) + (1-w)**s g(y)`` for ``x, y`` on a
    uniform grid of ``iv`` and ``w`` on a uniform grid of ``[0, 1]`` (reversed
    for ``concave``). The slack is ``tol * max(1, |rhs|)`` to absorb
    round-off at large magnitudes. This is evidence, not proof.
    """
    if n < 2:
        raise DomainError("probe grid needs n >= 2")
    iv.require_nonneg("the s-convexity probe")
    gv = _vectorized(g)
    pts = np.linspace(iv.a, iv.b, n)
    w = np.linspace(0.0, 1.0, n)
    gp = gv(pts)
    x = pts[:, None, None]
    y = pts[None, :, None]
    ww = w[None, None, :]
    z = np.clip(ww * x + (1.0 - ww) * y, iv.a, iv.b)
    lhs = gv(z)
    rhs = (ww**s) * gp[:, None, None] + ((1.0 - ww) ** s) * gp[None, :, None]
    gap = (rhs - lhs) if concave else (lhs - rhs)
    slack = tol * np.maximum(1.0, np.abs(rhs))
    bad = np.flatnonzero((gap > slack) | ~np.isfinite(gap))
    if bad.size == 0:
        return ProbeVerdict(True)
    i, j, k = np.unravel_index(bad[0], gap.shape)
    return ProbeVerdict(False, (float(pts[i]), float(pts[j]), float(w[k])), float(gap[i, j, k]))


# -- identity and Hermite-Hadamard checks ------------------------------------


def graded_points(lo: float, hi: float, depth: int = 12) -> list[float]:
    """Breakpoints at relative distances 10**-k from both ends.

    A derivative that blows up just outside the interval (``sqrt`` near 0)
    defeats endpoint extrapolation; graded breakpoints resolve it.
    """
    w = hi - lo
    out = []
    for k in range(1, depth + 1):
        out += [lo + w * 10.0**-k, hi - w * 10.0**-k]
    return out


def kernel_identity_rhs(f, params: RuleParams, iv: Interval, tol: float = 1e-13) -> float:
    """Kernel representation of the remainder, integrated numerically.

    ``(b-a) * [int_0^{1-alpha} (t - alpha*lam) f'(tb + (1-t)a) dt
               + int_{1-alpha}^1 (t - 1 + lam*(1-alpha)) f'(tb + (1-t)a) dt]``
    """
    a, b = iv.a, iv.b
    al, lam = params.alpha, params.lam
    split = 1.0 - al
    shift = 1.0 - lam * (1.0 - al)
    df = f.deriv

    def piece(center, lo, hi):
        if hi <= lo:
            return 0.0
        res = integrate(
            lambda t: (t - center) * float(df(t * b + (1.0 - t) * a)),
            Interval(lo, hi),
            tol=tol,
            rel_tol=1e-13,
            points=graded_points(lo, hi),
            max_subintervals=4 * MAX_SUBINTERVALS,
        )
        return res.value

    return (b - a) * (piece(al * lam, 0.0, split) + piece(shift, split, 1.0))


def kernel_identity_residual(f, params: RuleParams, iv: Interval, tol: float = 1e-13) -> float:
    """``|rule_error - kernel representation|``; zero up to quadrature error."""
    return abs(rule_error(f, params, iv) - kernel_identity_rhs(f, params, iv, tol))


@dataclass(frozen=True)
class HermiteHadamard:
    lower: float  # 2**(s-1) f((a+b)/2)
    mean: float
    upper: float  # (f(a) + f(b)) / (s+1)

    @property
    def ordered(self) -> bool:
        return self.lower <= self.mean <= self.upper


def hermite_hadamard_check(f, s: float, iv: Interval) -> HermiteHadamard:
    """The two sides of the s-convex Hermite-Hadamard sandwich and the mean."""
    iv.require_nonneg("the s-convex Hermite-Hadamard inequality")
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s}")
    fa, fb = float(f.eval(iv.a)), float(f.eval(iv.b))
    return HermiteHadamard(
        lower=math.pow(2.0, s - 1.0) * float(f.eval(iv.midpoint)),
        mean=f.mean_integral(iv),
        upper=(fa + fb) / (s + 1.0),
    )
