"""Error bounds for the generalized three-point rule.

Three families, all built on the same kernel split of ``[0, 1]``:

* :func:`bound_power_mean` for s-convex ``|f'|**q`` with ``q >= 1``, weighting
  the kernel moments by ``t**s`` and ``(1-t)**s``;
* :func:`bound_holder_convex` for s-convex ``|f'|**q`` with ``q > 1``, using
  ``p``-th kernel moments and the interior node value ``|f'(node)|``;
* :func:`bound_holder_concave` for s-concave ``|f'|**q`` with ``q > 1``, using
  ``|f'|`` at the midpoints of the two sub-intervals.

On a case tie every applicable case is evaluated and the smallest is returned.
"""

from __future__ import annotations

import math
from typing import Callable

from ..errors import DomainError
from .moments import (
    c1,
    c2,
    c3,
    c4,
    classify_case,
    gamma1,
    gamma2,
    holder_moments,
    nonneg,
)
from .types import (
    Bound,
    Case,
    ConvexityClass,
    DerivativeData,
    Interval,
    Method,
    Mode,
    RuleParams,
)


def _outer(gamma: float, q: float) -> float:
    # exponent 1 - 1/q vanishes at q == 1; never evaluate 0**0
    if q == 1.0:
        return 1.0
    return math.pow(gamma, 1.0 - 1.0 / q)


def _root(x: float, r: float) -> float:
    return x if r == 1.0 else math.pow(x, 1.0 / r)


def _check_hypothesis(cls: ConvexityClass, mode: Mode, iv: Interval) -> None:
    if cls.mode is not mode:
        raise DomainError(f"this bound assumes |f'|^q is {mode.value}, got {cls.mode.value}")
    if cls.s < 1.0:
        iv.require_nonneg()


def _tightest(params: RuleParams, evaluate: Callable[[Case], Bound]) -> Bound:
    info = classify_case(params)
    bounds = [evaluate(case) for case in info.applicable]
    best = min(bounds, key=lambda bd: bd.value)
    return Bound(
        best.value,
        best.method,
        best.case_id,
        best.components,
        cases_evaluated=info.applicable,
    )


# (gamma, coefficient on |f'(b)|^q, coefficient on |f'(a)|^q) for each kernel
def _power_mean_coefficients(params: RuleParams, s: float, case: Case):
    a, lam = params.alpha, params.lam
    m = 1.0 - a
    if case is Case.III:
        left = ("gamma1", gamma1(a, lam), "c3", c3(a, lam, s), "c4", c4(a, lam, s))
    else:
        left = ("gamma2", gamma2(a, lam), "c1", c1(a, lam, s), "c2", c2(a, lam, s))
    if case is Case.II:
        right = ("gamma1", gamma1(m, lam), "c4", c4(m, lam, s), "c3", c3(m, lam, s))
    else:
        right = ("gamma2", gamma2(m, lam), "c2", c2(m, lam, s), "c1", c1(m, lam, s))
    return left, right


def bound_power_mean(
    params: RuleParams, cls: ConvexityClass, d: DerivativeData, iv: Interval
) -> Bound:
    """Power-mean bound on ``|I_f|`` when ``|f'|**q`` is s-convex, ``q >= 1``.

    Each kernel contributes ``gamma**(1-1/q) * (c_b*|f'(b)|**q + c_a*|f'(a)|**q)**(1/q)``
    and the sum is scaled by ``b - a``. Which gamma/c pair a kernel uses
    depends on the case (see :func:`classify_case`).
    """
    _check_hypothesis(cls, Mode.S_CONVEX, iv)
    d.need("d_a", "d_b")
    s, q = cls.s, cls.q
    fb = math.pow(d.d_b, q)
    fa = math.pow(d.d_a, q)

    def evaluate(case: Case) -> Bound:
        comps = [("factor:length", iv.length)]
        for side, (gname, g, bname, cb, aname, ca) in zip(
            ("left", "right"), _power_mean_coefficients(params, s, case)
        ):
            g = nonneg(g, f"{gname} ({side})")
            cb = nonneg(cb, f"{bname} ({side})")
            ca = nonneg(ca, f"{aname} ({side})")
            comps += [
                (f"{side}:{gname}", g),
                (f"{side}:{bname}", cb),
                (f"{side}:{aname}", ca),
                (f"term:{side}", _outer(g, q) * _root(cb * fb + ca * fa, q)),
            ]
        return Bound.build(Method.POWER_MEAN, case, comps)

    return _tightest(params, evaluate)


def power_mean_q1(params: RuleParams, s: float, d: DerivativeData, iv: Interval) -> Bound:
    """The ``q = 1`` form, collected as coefficients of ``|f'(b)|`` and ``|f'(a)|``."""
    cls = ConvexityClass(s, 1.0)
    _check_hypothesis(cls, Mode.S_CONVEX, iv)
    d.need("d_a", "d_b")
    s = cls.s

    def evaluate(case: Case) -> Bound:
        (_, _, _, lb, _, la), (_, _, _, rb, _, ra) = _power_mean_coefficients(params, s, case)
        return Bound.build(
            Method.POWER_MEAN,
            case,
            [
                ("factor:length", iv.length),
                ("term:b", nonneg(lb + rb, "b-coefficient") * d.d_b),
                ("term:a", nonneg(la + ra, "a-coefficient") * d.d_a),
            ],
        )

    return _tightest(params, evaluate)


def _eps_pair(params: RuleParams, p: float, case: Case) -> tuple[float, float]:
    left = holder_moments(params, p)
    right = holder_moments(params.mirrored(), p)
    e_left = left.eps2 if case is Case.III else left.eps1
    e_right = right.eps2 if case is Case.II else right.eps1
    return nonneg(e_left, "eps (left)"), nonneg(e_right, "eps (right)")


def _holder_bound(method, params, cls, iv, weight_left, weight_right, extra_factor):
    p, q = cls.p, cls.q

    def evaluate(case: Case) -> Bound:
        e_left, e_right = _eps_pair(params, p, case)
        comps = [
            ("factor:length", iv.length),
            ("factor:kernel", math.pow(1.0 / (p + 1.0), 1.0 / p)),
            extra_factor,
            ("left:eps", e_left),
            ("right:eps", e_right),
            ("left:weight", weight_left),
            ("right:weight", weight_right),
            ("term:left", math.pow(e_left, 1.0 / p) * math.pow(weight_left, 1.0 / q)),
            ("term:right", math.pow(e_right, 1.0 / p) * math.pow(weight_right, 1.0 / q)),
        ]
        return Bound.build(method, case, comps)

    return _tightest(params, evaluate)


def bound_holder_convex(
    params: RuleParams, cls: ConvexityClass, d: DerivativeData, iv: Interval
) -> Bound:
    """Hoelder bound on ``|I_f|`` when ``|f'|**q`` is s-convex, ``q > 1``.

    ``(b-a) * (1/(p+1))**(1/p) * (1/(s+1))**(1/q)`` times
    ``eps_left**(1/p) * C**(1/q) + eps_right**(1/p) * D**(1/q)`` with
    ``C = (1-alpha)(|f'(node)|**q + |f'(a)|**q)`` and
    ``D = alpha(|f'(node)|**q + |f'(b)|**q)``.
    """
    _check_hypothesis(cls, Mode.S_CONVEX, iv)
    cls.require_holder()
    d.need("d_a", "d_b", "d_mix")
    q = cls.q
    mix = math.pow(d.d_mix, q)
    weight_c = (1.0 - params.alpha) * (mix + math.pow(d.d_a, q))
    weight_d = params.alpha * (mix + math.pow(d.d_b, q))
    factor = ("factor:convexity", math.pow(1.0 / (cls.s + 1.0), 1.0 / q))
    return _holder_bound(Method.HOLDER_CONVEX, params, cls, iv, weight_c, weight_d, factor)


def bound_holder_concave(
    params: RuleParams, cls: ConvexityClass, d: DerivativeData, iv: Interval
) -> Bound:
    """Hoelder bound on ``|I_f|`` when ``|f'|**q`` is s-concave, ``q > 1``.

    Same shape as :func:`bound_holder_convex` with prefactor ``2**((s-1)/q)``
    and weights ``E = (1-alpha)|f'(lo)|**q``, ``F = alpha|f'(hi)|**q`` where
    ``lo``/``hi`` are the midpoints of ``[a, node]`` and ``[node, b]``.
    """
    _check_hypothesis(cls, Mode.S_CONCAVE, iv)
    cls.require_holder()
    d.need("d_lo", "d_hi")
    q = cls.q
    weight_e = (1.0 - params.alpha) * math.pow(d.d_lo, q)
    weight_f = params.alpha * math.pow(d.d_hi, q)
    factor = ("factor:concavity", math.pow(2.0, (cls.s - 1.0) / q))
    return _holder_bound(Method.HOLDER_CONCAVE, params, cls, iv, weight_e, weight_f, factor)


def bound_for(method: Method, params, cls, d, iv) -> Bound:
    """Dispatch one of the three general bounds by method tag."""
    try:
        fn = _GENERAL[method]
    except KeyError:
        raise DomainError(f"{method.value} is not a general three-point bound") from None
    return fn(params, cls, d, iv)


_GENERAL = {
    Method.POWER_MEAN: bound_power_mean,
    Method.HOLDER_CONVEX: bound_holder_convex,
    Method.HOLDER_CONCAVE: bound_holder_concave,
}
