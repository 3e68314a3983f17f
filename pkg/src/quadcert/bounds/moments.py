"""Case classification and closed-form kernel moments.

The error representation splits ``[0, 1]`` at ``1 - alpha`` into two kernels,

    K1(t) = |t - alpha*lam|              on [0, 1 - alpha]
    K2(t) = |t - 1 + lam*(1 - alpha)|    on [1 - alpha, 1]

and ``K2`` is ``K1`` with ``alpha`` replaced by ``1 - alpha`` after the change
of variable ``t -> 1 - t``. Every coefficient below is an integral of ``K1``
against ``1``, ``t**s``, ``(1 - t)**s`` or ``K1**(p - 1)``.
"""

from __future__ import annotations

import math

from ..errors import DomainError, MomentSignError
from .types import S_MIN, Case, CaseInfo, HolderMoments, MomentSet, RuleParams

# round-off allowance when a moment that is zero in exact arithmetic is consumed
_SIGN_SLACK = 1e-12


def nonneg(x: float, label: str) -> float:
    """Clamp round-off negatives to zero; anything larger is a bug."""
    if x >= 0.0:
        return x
    if x >= -_SIGN_SLACK:
        return 0.0
    raise MomentSignError(f"{label} = {x!r} is negative on its branch of use")


def left_branch_small(params: RuleParams) -> bool:
    """True when ``alpha*lam <= 1 - alpha`` (kernel K1 changes sign inside)."""
    return params.alpha * params.lam <= 1.0 - params.alpha


def right_branch_small(params: RuleParams) -> bool:
    """True when ``lam*(1 - alpha) <= alpha``, i.e. ``1-alpha <= 1-lam*(1-alpha)``."""
    return params.lam * (1.0 - params.alpha) <= params.alpha


def classify_case(params: RuleParams) -> CaseInfo:
    """Which ordering of ``alpha*lam``, ``1-alpha``, ``1-lam*(1-alpha)`` holds.

    Case I:   alpha*lam <= 1-alpha <= 1-lam*(1-alpha)
    Case II:  alpha*lam <= 1-lam*(1-alpha) <= 1-alpha
    Case III: 1-alpha <= alpha*lam <= 1-lam*(1-alpha)

    ``alpha*lam <= 1-lam*(1-alpha)`` always holds because ``lam <= 1``, so the
    three cases are exhaustive. On a tie every case whose (non-strict)
    conditions hold is listed in ``applicable``; ``case`` is the first of them.
    """
    al = params.alpha * params.lam
    oma = 1.0 - params.alpha
    lo = params.lam * oma
    left_tie = al == oma
    right_tie = lo == params.alpha
    applicable = []
    if al <= oma and lo <= params.alpha:
        applicable.append(Case.I)
    if lo >= params.alpha:
        applicable.append(Case.II)
    if al >= oma:
        applicable.append(Case.III)
    return CaseInfo(applicable[0], tuple(applicable), left_tie, right_tie)


def _check_s(s: float) -> float:
    s = float(s)
    if not S_MIN <= s <= 1.0:
        raise DomainError(f"s must lie in [{S_MIN:g}, 1], got {s}")
    return s


def gamma1(alpha: float, lam: float) -> float:
    return (1.0 - alpha) * (alpha * lam - (1.0 - alpha) / 2.0)


def gamma2(alpha: float, lam: float) -> float:
    return (alpha * lam) ** 2 - gamma1(alpha, lam)


def c1(alpha: float, lam: float, s: float) -> float:
    al = alpha * lam
    oma = 1.0 - alpha
    return (
        math.pow(al, s + 2.0) * 2.0 / ((s + 1.0) * (s + 2.0))
        - al * math.pow(oma, s + 1.0) / (s + 1.0)
        + math.pow(oma, s + 2.0) / (s + 2.0)
    )


def c2(alpha: float, lam: float, s: float) -> float:
    r = 1.0 - alpha * lam
    return (
        math.pow(r, s + 2.0) * 2.0 / ((s + 1.0) * (s + 2.0))
        - r * (1.0 + math.pow(alpha, s + 1.0)) / (s + 1.0)
        + (1.0 + math.pow(alpha, s + 2.0)) / (s + 2.0)
    )


def c3(alpha: float, lam: float, s: float) -> float:
    oma = 1.0 - alpha
    return alpha * lam * math.pow(oma, s + 1.0) / (s + 1.0) - math.pow(oma, s + 2.0) / (s + 2.0)


def c4(alpha: float, lam: float, s: float) -> float:
    return (
        (alpha * lam - 1.0) * (1.0 - math.pow(alpha, s + 1.0)) / (s + 1.0)
        + (1.0 - math.pow(alpha, s + 2.0)) / (s + 2.0)
    )


def kernel_moments(params: RuleParams, s: float) -> MomentSet:
    """All six power-mean coefficients at ``(alpha, lam, s)``.

    On the branch ``alpha*lam <= 1-alpha``:
        gamma2 = int_0^{1-alpha} K1,  c1 = int K1 t^s,  c2 = int K1 (1-t)^s
    and on ``alpha*lam >= 1-alpha`` the same integrals are gamma1, c3, c4.
    """
    s = _check_s(s)
    a, lam = params.alpha, params.lam
    return MomentSet(
        gamma1=gamma1(a, lam),
        gamma2=gamma2(a, lam),
        c1=c1(a, lam, s),
        c2=c2(a, lam, s),
        c3=c3(a, lam, s),
        c4=c4(a, lam, s),
    )


def _pow_branch(base: float, expo: float) -> float:
    # NaN marks an off-branch evaluation; tiny negatives are boundary round-off
    if base < -_SIGN_SLACK:
        return math.nan
    return math.pow(max(base, 0.0), expo)


def holder_moments(params: RuleParams, p: float) -> HolderMoments:
    """``eps1`` and ``eps2`` so that ``int_0^{1-alpha} K1**p = eps/(p+1)``.

    ``eps1`` applies when ``alpha*lam <= 1-alpha``, ``eps2`` otherwise. The
    value for the other branch is NaN except on the boundary, where both agree.
    """
    p = float(p)
    if not p > 1.0 or not math.isfinite(p):
        raise DomainError(f"p must be a finite number > 1, got {p}")
    al = params.alpha * params.lam
    oma = 1.0 - params.alpha
    head = math.pow(al, p + 1.0)
    eps1 = head + _pow_branch(oma - al, p + 1.0)
    eps2 = head - _pow_branch(al - oma, p + 1.0)
    return HolderMoments(eps1=eps1, eps2=eps2)


def kernel_abs_moment(params: RuleParams) -> float:
    """``int_0^{1-alpha} K1`` on whichever branch applies."""
    if left_branch_small(params):
        return gamma2(params.alpha, params.lam)
    return gamma1(params.alpha, params.lam)


def kernel_pow_moment(params: RuleParams, p: float) -> float:
    """``(p+1) * int_0^{1-alpha} K1**p`` on whichever branch applies."""
    eps = holder_moments(params, p)
    return eps.eps1 if left_branch_small(params) else eps.eps2
