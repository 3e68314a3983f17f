"""Pick the tightest applicable bound for a rule."""

from __future__ import annotations

from typing import Iterable, Optional

from ..errors import DomainError
from . import classical, general
from .named import Rule
from .types import Bound, ConvexityClass, DerivativeData, Interval, Method, Mode, RuleParams


def _named_rule(params: RuleParams) -> Optional[Rule]:
    for rule in Rule:
        if rule.params == params:
            return rule
    return None


def _applicable(method: Method, params, cls, d, iv) -> Optional[str]:
    """Reason the method does not apply, or None when it does."""
    convex = cls.mode is Mode.S_CONVEX
    rule = _named_rule(params)
    if method is Method.POWER_MEAN:
        ok = convex and d.d_a is not None and d.d_b is not None
    elif method is Method.HOLDER_CONVEX:
        ok = convex and cls.q > 1.0 and d.d_mix is not None
    elif method is Method.HOLDER_CONCAVE:
        ok = not convex and cls.q > 1.0 and d.d_lo is not None and d.d_hi is not None
    elif method is Method.CLASSIC_CONVEX:
        ok = convex and cls.s == 1.0
    elif method is Method.CLASSIC_MIDPOINT:
        ok = convex and rule is Rule.MIDPOINT and iv.nonneg
    elif method is Method.CLASSIC_MIDPOINT_HOLDER:
        ok = convex and rule is Rule.MIDPOINT and cls.q > 1.0 and iv.nonneg
    elif method is Method.CLASSIC_SIMPSON_HOLDER:
        ok = convex and rule is Rule.SIMPSON and cls.q > 1.0 and d.d_mix is not None and iv.nonneg
    elif method is Method.CLASSIC_TRAPEZOID_HOLDER:
        ok = (
            convex
            and rule is Rule.TRAPEZOID
            and cls.q > 1.0
            and cls.s < 1.0
            and d.d_mix is not None
            and iv.nonneg
        )
    else:  # pragma: no cover - exhaustive over Method
        ok = False
    if cls.s < 1.0 and not iv.nonneg:
        ok = False
    return None if ok else f"{method.value} hypotheses not met"


def _evaluate(method: Method, params, cls, d, iv) -> Bound:
    if method is Method.CLASSIC_CONVEX:
        return classical.classic_convex(params, cls.q, d, iv)
    if method is Method.CLASSIC_MIDPOINT:
        return classical.classic_midpoint(cls, d, iv)
    if method is Method.CLASSIC_MIDPOINT_HOLDER:
        return classical.classic_midpoint_holder(cls, d, iv)
    if method is Method.CLASSIC_SIMPSON_HOLDER:
        return classical.classic_simpson_holder(cls, d, iv)
    if method is Method.CLASSIC_TRAPEZOID_HOLDER:
        return classical.classic_trapezoid_holder(cls, d, iv)
    return general.bound_for(method, params, cls, d, iv)


def best_bound(
    params: RuleParams,
    cls: ConvexityClass,
    d: DerivativeData,
    iv: Interval,
    methods: Iterable[Method],
) -> Bound:
    """Evaluate every applicable method and return the smallest bound.

    The returned bound carries all evaluated bounds in ``candidates``, in the
    order the methods were given. Earlier midpoint/Simpson/trapezoid results
    only apply when ``params`` is exactly that rule.
    """
    methods = [Method(m) for m in dict.fromkeys(methods)]
    found = []
    for method in methods:
        if _applicable(method, params, cls, d, iv) is None:
            found.append(_evaluate(method, params, cls, d, iv))
    if not found:
        names = ", ".join(m.value for m in methods) or "(none)"
        raise DomainError(f"no requested method applies to a {cls.mode.value} hypothesis: {names}")
    best = min(found, key=lambda bd: bd.value)
    return Bound(
        best.value,
        best.method,
        best.case_id,
        best.components,
        cases_evaluated=best.cases_evaluated,
        candidates=tuple(found),
    )
