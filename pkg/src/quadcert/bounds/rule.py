"""The generalized three-point rule and its signed remainder."""

from __future__ import annotations

from .types import Interval, RuleParams


def rule_value(fn, params: RuleParams, iv: Interval) -> float:
    """``lam*(alpha*f(a) + (1-alpha)*f(b)) + (1-lam)*f(alpha*a + (1-alpha)*b)``."""
    al, lam = params.alpha, params.lam
    ends = al * float(fn(iv.a)) + (1.0 - al) * float(fn(iv.b))
    return lam * ends + (1.0 - lam) * float(fn(params.node(iv)))


def rule_error(f, params: RuleParams, iv: Interval) -> float:
    """Signed remainder: rule value minus the mean of ``f`` over ``[a, b]``.

    ``f`` needs an ``eval`` callable and a ``mean_integral(iv)`` method (see
    :class:`quadcert.zoo.TestFunction`); the mean is exact when the function
    knows its antiderivative and comes from the numeric oracle otherwise.
    """
    return rule_value(f.eval, params, iv) - f.mean_integral(iv)
