"""Earlier error bounds that the s-convex results generalize or improve.

Each function transcribes its own closed form with its own coefficient
formulas. They never call the coefficient helpers in :mod:`.moments`, so
agreement between the two is a real cross-check.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from .moments import classify_case, nonneg
from .types import Bound, Case, ConvexityClass, DerivativeData, Interval, Method, Mode, RuleParams


def _outer(x: float, q: float) -> float:
    return 1.0 if q == 1.0 else math.pow(x, 1.0 - 1.0 / q)


def _root(x: float, q: float) -> float:
    return x if q == 1.0 else math.pow(x, 1.0 / q)


def _convex_coefficients(alpha: float, lam: float) -> dict[str, float]:
    al = alpha * lam
    m = 1.0 - alpha
    r = 1.0 - lam * m  # 1 - lam*(1 - alpha)
    g1 = m * (al - m / 2.0)
    return {
        "gamma1": g1,
        "gamma2": al**2 - g1,
        "upsilon1": (1.0 - m**2) / 2.0 - alpha * r,
        "upsilon2": (1.0 + m**2) / 2.0 - (lam + 1.0) * m * r,
        "mu1": (al**3 + m**3) / 3.0 - al * m**2 / 2.0,
        "mu2": (1.0 + alpha**3 + (1.0 - al) ** 3) / 3.0 - (1.0 - al) / 2.0 * (1.0 + alpha**2),
        "mu3": al * m**2 / 2.0 - m**3 / 3.0,
        "mu4": (al - 1.0) * (1.0 - alpha**2) / 2.0 + (1.0 - alpha**3) / 3.0,
        "eta1": (1.0 - m**3) / 3.0 - r / 2.0 * alpha * (2.0 - alpha),
        "eta2": lam * m * alpha**2 / 2.0 - alpha**3 / 3.0,
        "eta3": r**3 / 3.0 - r / 2.0 * (1.0 + m**2) + (1.0 + m**3) / 3.0,
        "eta4": (lam * m) ** 3 / 3.0 - lam * m * alpha**2 / 2.0 + alpha**3 / 3.0,
    }


_CONVEX_TABLE = {
    Case.I: (("gamma2", "mu1", "mu2"), ("upsilon2", "eta3", "eta4")),
    Case.II: (("gamma2", "mu1", "mu2"), ("upsilon1", "eta1", "eta2")),
    Case.III: (("gamma1", "mu3", "mu4"), ("upsilon2", "eta3", "eta4")),
}


def classic_convex(params: RuleParams, q: float, d: DerivativeData, iv: Interval) -> Bound:
    """Three-point bound for convex ``|f'|**q`` (the ``s = 1`` predecessor).

    Uses the gamma/upsilon/mu/eta coefficients of the convex-case result.
    """
    if q < 1.0:
        raise DomainError(f"q must be >= 1, got {q}")
    d.need("d_a", "d_b")
    k = _convex_coefficients(params.alpha, params.lam)
    fb = math.pow(d.d_b, q)
    fa = math.pow(d.d_a, q)
    info = classify_case(params)
    best = None
    for case in info.applicable:
        comps = [("factor:length", iv.length)]
        for side, (g, cb, ca) in zip(("left", "right"), _CONVEX_TABLE[case]):
            gv, cbv, cav = (nonneg(k[n], n) for n in (g, cb, ca))
            comps += [
                (f"{side}:{g}", gv),
                (f"{side}:{cb}", cbv),
                (f"{side}:{ca}", cav),
                (f"term:{side}", _outer(gv, q) * _root(cbv * fb + cav * fa, q)),
            ]
        bd = Bound.build(Method.CLASSIC_CONVEX, case, comps, cases_evaluated=info.applicable)
        if best is None or bd.value < best.value:
            best = bd
    return best


def _need_s_convex(cls: ConvexityClass, iv: Interval) -> None:
    if cls.mode is not Mode.S_CONVEX:
        raise DomainError("earlier midpoint/Simpson/trapezoid bounds assume s-convex |f'|^q")
    iv.require_nonneg("the earlier s-convex bounds")


def classic_midpoint(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Midpoint bound for s-convex ``|f'|**q``, ``q >= 1``."""
    _need_s_convex(cls, iv)
    d.need("d_a", "d_b")
    s, q = cls.s, cls.q
    k = math.pow(2.0, 1.0 - s)
    fa, fb = math.pow(d.d_a, q), math.pow(d.d_b, q)
    return Bound.build(
        Method.CLASSIC_MIDPOINT,
        None,
        [
            ("factor:scale", iv.length / 8.0),
            ("factor:convexity", _root(2.0 / ((s + 1.0) * (s + 2.0)), q)),
            ("term:first", _root((k + 1.0) * fb + k * fa, q)),
            ("term:second", _root((k + 1.0) * fa + k * fb, q)),
        ],
    )


def classic_midpoint_holder(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Midpoint bound for s-convex ``|f'|**q`` via Hoelder, ``q > 1``."""
    _need_s_convex(cls, iv)
    cls.require_holder()
    d.need("d_a", "d_b")
    s, q, p = cls.s, cls.q, cls.p
    k = math.pow(2.0, 1.0 - s)
    fa, fb = math.pow(d.d_a, q), math.pow(d.d_b, q)
    return Bound.build(
        Method.CLASSIC_MIDPOINT_HOLDER,
        None,
        [
            ("factor:scale", iv.length / 4.0),
            ("factor:kernel", math.pow(1.0 / (p + 1.0), 1.0 / p)),
            ("factor:convexity", math.pow(1.0 / (s + 1.0), 2.0 / q)),
            ("term:first", math.pow((k + s + 1.0) * fa + k * fb, 1.0 / q)),
            ("term:second", math.pow((k + s + 1.0) * fb + k * fa, 1.0 / q)),
        ],
    )


def classic_simpson_holder(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Simpson bound for s-convex ``|f'|**q``, ``q > 1``; ``d_mix`` at the midpoint."""
    _need_s_convex(cls, iv)
    cls.require_holder()
    d.need("d_a", "d_b", "d_mix")
    s, q, p = cls.s, cls.q, cls.p
    mid = math.pow(d.d_mix, q)
    return Bound.build(
        Method.CLASSIC_SIMPSON_HOLDER,
        None,
        [
            ("factor:scale", iv.length / 12.0),
            ("factor:kernel", math.pow((1.0 + math.pow(2.0, p + 1.0)) / (3.0 * (p + 1.0)), 1.0 / p)),
            ("term:first", math.pow((mid + math.pow(d.d_a, q)) / (s + 1.0), 1.0 / q)),
            ("term:second", math.pow((mid + math.pow(d.d_b, q)) / (s + 1.0), 1.0 / q)),
        ],
    )


def classic_trapezoid_holder(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Trapezoid bound for s-convex ``|f'|**q``, ``s`` in (0, 1), ``q > 1``."""
    _need_s_convex(cls, iv)
    cls.require_holder()
    if not cls.s < 1.0:
        raise DomainError("this trapezoid bound is stated for s in (0, 1) only")
    d.need("d_a", "d_b", "d_mix")
    s, q = cls.s, cls.q
    mid = math.pow(d.d_mix, q)
    return Bound.build(
        Method.CLASSIC_TRAPEZOID_HOLDER,
        None,
        [
            ("factor:scale", iv.length / 2.0),
            ("factor:kernel", math.pow((q - 1.0) / (2.0 * (2.0 * q - 1.0)), (q - 1.0) / q)),
            ("factor:convexity", math.pow(1.0 / (s + 1.0), 1.0 / q)),
            ("term:first", math.pow(mid + math.pow(d.d_a, q), 1.0 / q)),
            ("term:second", math.pow(mid + math.pow(d.d_b, q), 1.0 / q)),
        ],
    )


def improvement_coefficients(s: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Coefficient pairs ``(new, old)`` showing the power-mean midpoint bound is tighter.

    Returns ``((s+1)/2, 1)`` and ``((2**(s+2)-s-3)/2, (2**(1-s)+1)/2**(1-s))``;
    in each pair the first entry must not exceed the second.
    """
    k = math.pow(2.0, 1.0 - s)
    return ((s + 1.0) / 2.0, 1.0), ((math.pow(2.0, s + 2.0) - s - 3.0) / 2.0, (k + 1.0) / k)
