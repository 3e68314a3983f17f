import math

import pytest
from hypothesis import given, strategies as st

from quadcert import means
from quadcert.errors import DomainError


@pytest.mark.parametrize(
    "alpha, a, b, expected",
    [(0.25, 1.0, 3.0, 2.5), (1.0, 4.0, 9.0, 4.0), (0.5, 2.0, 6.0, 4.0)],
)
def test_weighted_arith(alpha, a, b, expected):
    assert means.weighted_arith(alpha, a, b) == expected


def test_arith():
    assert means.arith(1.0, 3.0) == 2.0
    assert means.arith(0.0, 1.0) == 0.5


@pytest.mark.parametrize(
    "a, b, p, expected",
    [
        (1.0, 2.0, 1.0, 1.5),
        (1.0, 2.0, 2.0, math.sqrt(7 / 3)),
        (1.0, 4.0, 0.5, (14 / 9) ** 2),
    ],
)
def test_p_log(a, b, p, expected):
    assert means.p_log(a, b, p) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("a, b, p", [(1.0, 2.0, 0.0), (1.0, 2.0, -1.0), (2.0, 1.0, 1.0), (0.0, 1.0, 1.0)])
def test_p_log_domain(a, b, p):
    with pytest.raises(DomainError):
        means.p_log(a, b, p)


@given(st.floats(0.1, 5.0), st.floats(0.01, 5.0), st.floats(0.1, 4.0))
def test_p_log_between_endpoints(a, w, p):
    b = a + w
    assert a * (1 - 1e-12) <= means.p_log(a, b, p) <= b * (1 + 1e-12)


def test_mean_dispatch():
    mv = means.mean("p-log", a=1.0, b=2.0, p=1.0)
    assert mv.kind is means.MeanKind.PLOG and mv.value == pytest.approx(1.5)


@pytest.mark.parametrize(
    "check, args",
    [
        (means.proposition_power_mean_check, (1.0, 2.0, 0.5, 1 / 3, 0.4, 2.0)),
        (means.proposition_power_mean_check, (1.0, 2.0, 0.5, 1.0, 0.3, 1.0)),
        (means.proposition_holder_check, (1.0, 2.0, 0.5, 1 / 3, 0.4, 2.0)),
        (means.proposition_holder_check, (1.0, 3.0, 0.7, 0.2, 0.2, 3.0)),
    ],
)
def test_propositions_hold(check, args):
    rep = check(*args)
    assert rep.holds
    assert 0.0 <= rep.lhs <= rep.rhs


def test_trapezoid_remainder_value():
    # lam = 1, alpha = 1/2: (a^1.3 + b^1.3)/2 - (b^2.3 - a^2.3)/(2.3 (b - a))
    lhs = abs((1 + 2**1.3) / 2 - (2**2.3 - 1) / 2.3)
    rep = means.proposition_power_mean_check(1.0, 2.0, 0.5, 1.0, 0.3, 1.0)
    assert rep.lhs == pytest.approx(lhs, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.0, 0.4, 1.0])
def test_shrinking_interval(alpha):
    eps = 1e-4
    rep = means.proposition_power_mean_check(2.0 - eps, 2.0, alpha, 1.0, 0.3, 1.0)
    assert rep.lhs < 1e-3 and rep.rhs < 1e-3 and rep.holds


def test_holder_check_needs_q_above_one():
    with pytest.raises(DomainError):
        means.proposition_holder_check(1.0, 2.0, 0.5, 0.5, 0.3, 1.0)


@pytest.mark.parametrize("s", [0.0, 1.0, 1.2])
def test_s_range_enforced(s):
    with pytest.raises(DomainError):
        means.proposition_power_mean_check(1.0, 2.0, 0.5, 0.5, s, 1.0)


def test_full_sweep_holds():
    res = means.proposition_sweep()
    assert len(res) == 3 * 25 * 4 * 4 + 3 * 25 * 4 * 3
    assert all(r.holds for _, _, r in res)
