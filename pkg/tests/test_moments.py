import math

import pytest
from hypothesis import given, settings, strategies as st

from quadcert.bounds import Case, RuleParams, classify_case, holder_moments, kernel_moments
from quadcert.bounds.moments import (
    c1,
    c2,
    gamma2,
    kernel_abs_moment,
    kernel_pow_moment,
    left_branch_small,
)
from quadcert.errors import DomainError
from quadcert.oracle import MomentKind, moment_integral_numeric

unit = st.floats(0.0, 1.0, allow_nan=False)
expo = st.floats(0.05, 1.0, allow_nan=False)


# exact values from symbolic integration of |t - alpha*lam| * weight
@pytest.mark.parametrize(
    "fn, args, expected",
    [
        (gamma2, (0.5, 1 / 3), 5 / 72),
        (c1, (0.5, 1 / 3, 1.0), 29 / 1296),
        (c2, (0.5, 1 / 3, 1.0), 61 / 1296),
    ],
)
def test_spot_values(fn, args, expected):
    assert fn(*args) == pytest.approx(expected, abs=1e-12)


def test_eps1_simpson_p2():
    assert holder_moments(RuleParams(0.5, 1 / 3), 2.0).eps1 == pytest.approx(1 / 24, abs=1e-12)


def test_large_branch_value():
    # alpha = 1/2, lam = 1: kernel 1/2 - t on [0, 1/2] with weight t
    m = kernel_moments(RuleParams(0.5, 1.0), 1.0)
    assert m.c3 == pytest.approx(1 / 48, abs=1e-14)
    assert m.c1 == pytest.approx(1 / 48, abs=1e-14)  # tie: both branches agree


@pytest.mark.parametrize(
    "alpha, lam, case, applicable",
    [
        (0.5, 1 / 3, Case.I, (Case.I,)),
        (0.5, 1.0, Case.I, (Case.I, Case.II, Case.III)),
        (0.0, 0.0, Case.I, (Case.I, Case.II)),
        (0.3, 0.8, Case.II, (Case.II,)),
        (0.9, 0.5, Case.III, (Case.III,)),
    ],
)
def test_classify_case(alpha, lam, case, applicable):
    info = classify_case(RuleParams(alpha, lam))
    assert info.case is case
    assert info.applicable == applicable


@given(unit, unit)
def test_some_case_always_applies(alpha, lam):
    info = classify_case(RuleParams(alpha, lam))
    assert info.case in info.applicable
    # cases II and III at once would need 1 - alpha < alpha*lam and lam*(1-alpha) > alpha
    assert not ({Case.II, Case.III} <= set(info.applicable)) or info.on_boundary


@settings(max_examples=60, deadline=None)
@given(unit, unit, expo)
def test_moments_match_quadrature(alpha, lam, s):
    params = RuleParams(alpha, lam)
    m = kernel_moments(params, s)
    small = left_branch_small(params)
    g, ct, co = (m.gamma2, m.c1, m.c2) if small else (m.gamma1, m.c3, m.c4)
    assert g == pytest.approx(moment_integral_numeric(MomentKind.ABS, alpha, lam), abs=1e-10)
    assert ct == pytest.approx(moment_integral_numeric(MomentKind.ABS_TS, alpha, lam, s), abs=1e-10)
    assert co == pytest.approx(moment_integral_numeric(MomentKind.ABS_ONE_MINUS_TS, alpha, lam, s), abs=1e-10)
    for v in (g, ct, co):
        assert v >= -1e-12  # round-off slack also used when bounds consume them


@settings(max_examples=40, deadline=None)
@given(unit, unit, st.floats(1.05, 5.0))
def test_holder_moment_matches_quadrature(alpha, lam, p):
    params = RuleParams(alpha, lam)
    numeric = moment_integral_numeric(MomentKind.ABS_POW, alpha, lam, p)
    assert kernel_pow_moment(params, p) / (p + 1.0) == pytest.approx(numeric, abs=1e-10)


@given(unit, unit)
def test_abs_moment_is_branch_selected(alpha, lam):
    params = RuleParams(alpha, lam)
    assert kernel_abs_moment(params) == pytest.approx(
        moment_integral_numeric(MomentKind.ABS, alpha, lam), abs=1e-12
    )


def test_off_branch_holder_moment_is_nan():
    e = holder_moments(RuleParams(0.5, 1 / 3), 2.0)
    assert math.isnan(e.eps2)


@pytest.mark.parametrize("p", [1.0, 0.5])
def test_holder_moment_needs_p_above_one(p):
    with pytest.raises(DomainError):
        holder_moments(RuleParams(0.5, 0.5), p)


@pytest.mark.parametrize("alpha, lam", [(-0.1, 0.5), (0.5, 1.5), (float("nan"), 0.2)])
def test_rule_params_validated(alpha, lam):
    with pytest.raises(DomainError):
        RuleParams(alpha, lam)
