"""Weighted arithmetic, arithmetic and p-logarithmic means.

The two checks at the bottom apply the three-point bounds to ``t**(s+1)``,
which turns each bound into an inequality between these means.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .bounds.moments import c1, c2, c3, c4, classify_case, gamma1, gamma2, holder_moments, nonneg
from .bounds.types import Case, ConvexityClass, RuleParams
from .errors import DomainError


class MeanKind(enum.Enum):
    WEIGHTED_ARITH = "weighted-arith"
    ARITH = "arith"
    PLOG = "p-log"


@dataclass(frozen=True)
class MeanValue:
    kind: MeanKind
    value: float
    params: dict = field(default_factory=dict)


def weighted_arith(alpha: float, a: float, b: float) -> float:
    """``alpha*a + (1-alpha)*b``."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha * a + (1.0 - alpha) * b


def arith(a: float, b: float) -> float:
    return (a + b) / 2.0


def p_log(a: float, b: float, p: float) -> float:
    """p-logarithmic mean ``((b**(p+1) - a**(p+1)) / ((p+1)(b-a)))**(1/p)``."""
    if p in (-1.0, 0.0):
        raise DomainError("the p-logarithmic mean is undefined for p in {-1, 0}")
    if not 0.0 < a < b:
        raise DomainError(f"need 0 < a < b, got a={a}, b={b}")
    inner = (math.pow(b, p + 1.0) - math.pow(a, p + 1.0)) / ((p + 1.0) * (b - a))
    return math.pow(inner, 1.0 / p)


def mean(kind: MeanKind, **kw) -> MeanValue:
    kind = MeanKind(kind)
    fn = {MeanKind.WEIGHTED_ARITH: weighted_arith, MeanKind.ARITH: arith, MeanKind.PLOG: p_log}[kind]
    return MeanValue(kind, fn(**kw), dict(kw))


@dataclass(frozen=True)
class PropositionReport:
    lhs: float
    rhs: float
    holds: bool
    case: Case


def _check_args(a, b, s, q, strict_q):
    if not 0.0 < a < b:
        raise DomainError(f"need 0 < a < b, got a={a}, b={b}")
    if strict_q and not q > 1.0:
        raise DomainError(f"need q > 1, got {q}")
    if q < 1.0:
        raise DomainError(f"need q >= 1, got {q}")
    # t**(q*s) is s-convex for every q >= 1: q*s-convex when q*s < 1, and
    # nonnegative convex (hence s-convex) otherwise
    if not 0.0 < s < 1.0:
        raise DomainError(f"need s in (0, 1), got s={s}")


def means_remainder(a: float, b: float, alpha: float, lam: float, s: float) -> float:
    """``lam*A_alpha(a^(s+1), b^(s+1)) + (1-lam)*A_alpha(a,b)^(s+1) - L_(s+1)(a,b)^(s+1)``."""
    e = s + 1.0
    return (
        lam * weighted_arith(alpha, math.pow(a, e), math.pow(b, e))
        + (1.0 - lam) * math.pow(weighted_arith(alpha, a, b), e)
        - math.pow(p_log(a, b, e), e)
    )


def _pick(info, evaluate):
    vals = [(evaluate(c), c) for c in info.applicable]
    return min(vals, key=lambda vc: vc[0])


def proposition_power_mean_check(a, b, alpha, lam, s, q, tol=1e-10) -> PropositionReport:
    """Power-mean bound applied to ``t**(s+1)``, written with means."""
    _check_args(a, b, s, q, strict_q=False)
    params = RuleParams(alpha, lam)
    m = 1.0 - alpha
    bs, as_ = math.pow(b, s * q), math.pow(a, s * q)
    outer = (lambda g: 1.0) if q == 1.0 else (lambda g: math.pow(g, 1.0 - 1.0 / q))

    def part(g, cb, ca):
        g, cb, ca = nonneg(g, "gamma"), nonneg(cb, "c_b"), nonneg(ca, "c_a")
        return outer(g) * math.pow(cb * bs + ca * as_, 1.0 / q)

    def evaluate(case):
        if case is Case.III:
            left = part(gamma1(alpha, lam), c3(alpha, lam, s), c4(alpha, lam, s))
        else:
            left = part(gamma2(alpha, lam), c1(alpha, lam, s), c2(alpha, lam, s))
        if case is Case.II:
            right = part(gamma1(m, lam), c4(m, lam, s), c3(m, lam, s))
        else:
            right = part(gamma2(m, lam), c2(m, lam, s), c1(m, lam, s))
        return (b - a) * (s + 1.0) * (left + right)

    rhs, case = _pick(classify_case(params), evaluate)
    lhs = abs(means_remainder(a, b, alpha, lam, s))
    return PropositionReport(lhs, rhs, lhs <= rhs + tol, case)


def proposition_holder_check(a, b, alpha, lam, s, q, tol=1e-10) -> PropositionReport:
    """Hoelder bound applied to ``t**(s+1)``, written with means."""
    _check_args(a, b, s, q, strict_q=True)
    params = RuleParams(alpha, lam)
    p = ConvexityClass(s, q).p
    node = math.pow(weighted_arith(alpha, a, b), s * q)
    weight_c = (1.0 - alpha) * (node + math.pow(a, s * q))
    weight_d = alpha * (node + math.pow(b, s * q))
    left_eps = holder_moments(params, p)
    right_eps = holder_moments(params.mirrored(), p)

    def evaluate(case):
        el = nonneg(left_eps.eps2 if case is Case.III else left_eps.eps1, "eps")
        er = nonneg(right_eps.eps2 if case is Case.II else right_eps.eps1, "eps")
        combo = math.pow(el, 1.0 / p) * math.pow(weight_c, 1.0 / q) + math.pow(
            er, 1.0 / p
        ) * math.pow(weight_d, 1.0 / q)
        scale = (b - a) * math.pow(1.0 / (p + 1.0), 1.0 / p) * math.pow(s + 1.0, 1.0 - 1.0 / q)
        return scale * combo

    rhs, case = _pick(classify_case(params), evaluate)
    lhs = abs(means_remainder(a, b, alpha, lam, s))
    return PropositionReport(lhs, rhs, lhs <= rhs + tol, case)


PROPOSITION_ENDPOINTS = ((1.0, 2.0), (1.0, 3.0), (0.5, 4.0))
PROPOSITION_WEIGHTS = (0.0, 0.25, 0.5, 0.75, 1.0)
PROPOSITION_S = (0.1, 0.2, 0.3, 0.45)
PROPOSITION_Q = (1.0, 1.5, 2.0, 3.0)


def proposition_grid(holder: bool = False):
    """``(a, b, alpha, lam, s, q)`` tuples of the standard sweep."""
    for a, b in PROPOSITION_ENDPOINTS:
        for alpha in PROPOSITION_WEIGHTS:
            for lam in PROPOSITION_WEIGHTS:
                for s in PROPOSITION_S:
                    for q in PROPOSITION_Q:
                        if holder and q == 1.0:
                            continue
                        yield a, b, alpha, lam, s, q


def proposition_sweep(tol: float = 1e-10) -> list[tuple[str, tuple, PropositionReport]]:
    out = [("power-mean", g, proposition_power_mean_check(*g, tol=tol)) for g in proposition_grid()]
    out += [("holder", g, proposition_holder_check(*g, tol=tol)) for g in proposition_grid(holder=True)]
    return out
