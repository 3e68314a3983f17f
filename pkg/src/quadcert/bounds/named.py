"""Closed forms for the midpoint, trapezoid and Simpson rules.

These are the general bounds specialized by hand at ``alpha = 1/2`` with
``lam`` = 0, 1 and 1/3. They are written out independently so the test suite
can check them against the general formulas.
"""

from __future__ import annotations

import enum
import math

from ..errors import DomainError, UnsupportedRuleError
from . import classical
from .types import Bound, ConvexityClass, DerivativeData, Interval, Method, Mode, RuleParams


class Rule(enum.Enum):
    MIDPOINT = "midpoint"
    TRAPEZOID = "trapezoid"
    SIMPSON = "simpson"

    @property
    def params(self) -> RuleParams:
        return RuleParams(0.5, _LAMBDA[self])


_LAMBDA = {Rule.MIDPOINT: 0.0, Rule.TRAPEZOID: 1.0, Rule.SIMPSON: 1.0 / 3.0}


def _root(x: float, q: float) -> float:
    return x if q == 1.0 else math.pow(x, 1.0 / q)


def _convex(cls: ConvexityClass, iv: Interval) -> None:
    if cls.mode is not Mode.S_CONVEX:
        raise DomainError("bound assumes s-convex |f'|^q")
    if cls.s < 1.0:
        iv.require_nonneg()


# -- power-mean family -------------------------------------------------------


def simpson_power_mean(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    _convex(cls, iv)
    d.need("d_a", "d_b")
    s, q = cls.s, cls.q
    den = 3.0 * math.pow(6.0, s + 1.0) * (s + 1.0) * (s + 2.0)
    x = ((2.0 * s + 1.0) * math.pow(3.0, s + 1.0) + 2.0) / den
    y = (
        2.0 * math.pow(5.0, s + 2.0)
        + (s - 4.0) * math.pow(6.0, s + 1.0)
        - (2.0 * s + 7.0) * math.pow(3.0, s + 1.0)
    ) / den
    fa, fb = math.pow(d.d_a, q), math.pow(d.d_b, q)
    outer = 1.0 if q == 1.0 else math.pow(5.0 / 36.0, 1.0 - 1.0 / q)
    return Bound.build(
        Method.POWER_MEAN,
        None,
        [
            ("factor:scale", iv.length / 2.0),
            ("factor:outer", outer),
            ("coef:near", x),
            ("coef:far", y),
            ("term:first", _root(x * fb + y * fa, q)),
            ("term:second", _root(y * fb + x * fa, q)),
        ],
    )


def midpoint_power_mean(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    _convex(cls, iv)
    d.need("d_a", "d_b")
    s, q = cls.s, cls.q
    k = math.pow(2.0, 1.0 - s)
    near = k * (s + 1.0) / 2.0
    far = k * (math.pow(2.0, s + 2.0) - s - 3.0) / 2.0
    fa, fb = math.pow(d.d_a, q), math.pow(d.d_b, q)
    return Bound.build(
        Method.POWER_MEAN,
        None,
        [
            ("factor:scale", iv.length / 8.0),
            ("factor:convexity", _root(2.0 / ((s + 1.0) * (s + 2.0)), q)),
            ("coef:near", near),
            ("coef:far", far),
            ("term:first", _root(near * fb + far * fa, q)),
            ("term:second", _root(near * fa + far * fb, q)),
        ],
    )


def _trapezoid_power_mean(cls, d, iv, far) -> Bound:
    _convex(cls, iv)
    d.need("d_a", "d_b")
    s, q = cls.s, cls.q
    fa, fb = math.pow(d.d_a, q), math.pow(d.d_b, q)
    return Bound.build(
        Method.POWER_MEAN,
        None,
        [
            ("factor:scale", iv.length / 8.0),
            ("factor:convexity", _root(math.pow(2.0, 1.0 - s) / ((s + 1.0) * (s + 2.0)), q)),
            ("coef:far", far),
            ("term:first", _root(fb + fa * far, q)),
            ("term:second", _root(fa + fb * far, q)),
        ],
    )


def trapezoid_power_mean(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Power-mean bound at ``(1/2, 1)``; far-endpoint weight ``s*2**(s+1) + 1``."""
    s = cls.s
    return _trapezoid_power_mean(cls, d, iv, s * math.pow(2.0, s + 1.0) + 1.0)


def trapezoid_power_mean_coarse(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Same shape with the larger weight ``2**(s+1) + 1``.

    Never below :func:`trapezoid_power_mean`; the two agree at ``s = 1``.
    """
    return _trapezoid_power_mean(cls, d, iv, math.pow(2.0, cls.s + 1.0) + 1.0)


# -- Hoelder family, s-convex ------------------------------------------------


def _holder_terms(cls: ConvexityClass, d: DerivativeData):
    d.need("d_a", "d_b", "d_mix")
    s, q = cls.s, cls.q
    mid = math.pow(d.d_mix, q)
    return [
        ("term:first", math.pow((mid + math.pow(d.d_a, q)) / (s + 1.0), 1.0 / q)),
        ("term:second", math.pow((mid + math.pow(d.d_b, q)) / (s + 1.0), 1.0 / q)),
    ]


def simpson_holder(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    _convex(cls, iv)
    cls.require_holder()
    p = cls.p
    kernel = math.pow((1.0 + math.pow(2.0, p + 1.0)) / (3.0 * (p + 1.0)), 1.0 / p)
    comps = [("factor:scale", iv.length / 12.0), ("factor:kernel", kernel)]
    return Bound.build(Method.HOLDER_CONVEX, None, comps + _holder_terms(cls, d))


def midpoint_holder(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    _convex(cls, iv)
    cls.require_holder()
    p = cls.p
    comps = [("factor:scale", iv.length / 4.0), ("factor:kernel", math.pow(1.0 / (p + 1.0), 1.0 / p))]
    return Bound.build(Method.HOLDER_CONVEX, None, comps + _holder_terms(cls, d))


# the trapezoid specialization has exactly the midpoint form
trapezoid_holder = midpoint_holder


# -- Hoelder family, s-concave -----------------------------------------------


def _concave_terms(cls: ConvexityClass, d: DerivativeData, iv: Interval):
    if cls.mode is not Mode.S_CONCAVE:
        raise DomainError("bound assumes s-concave |f'|^q")
    if cls.s < 1.0:
        iv.require_nonneg()
    cls.require_holder()
    d.need("d_lo", "d_hi")
    p = cls.p
    return [
        ("factor:scale", iv.length / 4.0),
        ("factor:kernel", math.pow(1.0 / (p + 1.0), 1.0 / p)),
        ("term:upper", d.d_hi),
        ("term:lower", d.d_lo),
    ]


def quarter_node_concave(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """Midpoint or trapezoid bound for s-concave ``|f'|**q``.

    Both rules share this form. ``d_lo``/``d_hi`` are ``|f'|`` at
    ``(3a+b)/4`` and ``(a+3b)/4``.
    """
    comps = _concave_terms(cls, d, iv)
    comps.insert(2, ("factor:concavity", math.pow(0.5, (1.0 - cls.s) / cls.q)))
    return Bound.build(Method.HOLDER_CONCAVE, None, comps)


def quarter_node_concave_s1(cls: ConvexityClass, d: DerivativeData, iv: Interval) -> Bound:
    """:func:`quarter_node_concave` without the ``s`` factor (exact at ``s = 1``)."""
    return Bound.build(Method.HOLDER_CONCAVE, None, _concave_terms(cls, d, iv))


def central_node_concave(q: float, d_center: float, iv: Interval) -> Bound:
    """Coarser concave bound using only ``|f'((a+b)/2)|``.

    Valid for either rule when ``|f'|**q`` is concave, because then
    ``|f'((3a+b)/4)| + |f'((a+3b)/4)| <= 2 |f'((a+b)/2)|``.
    """
    cls = ConvexityClass(1.0, q, Mode.S_CONCAVE)
    cls.require_holder()
    p = cls.p
    return Bound.build(
        Method.HOLDER_CONCAVE,
        None,
        [
            ("factor:scale", iv.length / 2.0),
            ("factor:kernel", math.pow(1.0 / (p + 1.0), 1.0 / p)),
            ("term:center", float(d_center)),
        ],
    )


_TABLE = {
    (Rule.SIMPSON, Method.POWER_MEAN): simpson_power_mean,
    (Rule.MIDPOINT, Method.POWER_MEAN): midpoint_power_mean,
    (Rule.TRAPEZOID, Method.POWER_MEAN): trapezoid_power_mean,
    (Rule.SIMPSON, Method.HOLDER_CONVEX): simpson_holder,
    (Rule.MIDPOINT, Method.HOLDER_CONVEX): midpoint_holder,
    (Rule.TRAPEZOID, Method.HOLDER_CONVEX): trapezoid_holder,
    (Rule.MIDPOINT, Method.HOLDER_CONCAVE): quarter_node_concave,
    (Rule.TRAPEZOID, Method.HOLDER_CONCAVE): quarter_node_concave,
    (Rule.MIDPOINT, Method.CLASSIC_MIDPOINT): classical.classic_midpoint,
    (Rule.MIDPOINT, Method.CLASSIC_MIDPOINT_HOLDER): classical.classic_midpoint_holder,
    (Rule.SIMPSON, Method.CLASSIC_SIMPSON_HOLDER): classical.classic_simpson_holder,
    (Rule.TRAPEZOID, Method.CLASSIC_TRAPEZOID_HOLDER): classical.classic_trapezoid_holder,
}


def supported_pairs() -> list[tuple[Rule, Method]]:
    pairs = list(_TABLE)
    pairs += [(rule, Method.CLASSIC_CONVEX) for rule in Rule]
    return pairs


def named_rule_bound(
    rule: Rule, method: Method, cls: ConvexityClass, d: DerivativeData, iv: Interval
) -> Bound:
    """Closed-form bound for a named rule.

    Derivative data must be sampled at ``alpha = 1/2`` nodes: ``d_mix`` at
    ``(a+b)/2`` and ``d_lo``/``d_hi`` at ``(3a+b)/4``/``(a+3b)/4``.
    """
    rule, method = Rule(rule), Method(method)
    if method is Method.CLASSIC_CONVEX:
        if cls.mode is not Mode.S_CONVEX or cls.s != 1.0:
            raise DomainError("the convex three-point bound needs s = 1 and convex |f'|^q")
        return classical.classic_convex(rule.params, cls.q, d, iv)
    try:
        fn = _TABLE[(rule, method)]
    except KeyError:
        raise UnsupportedRuleError(
            f"no closed form for the {rule.value} rule with method {method.value}"
        ) from None
    return fn(cls, d, iv)
