import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadcert import zoo
from quadcert.bounds import Interval, RuleParams
from quadcert.errors import DomainError, OracleError
from quadcert.oracle import (
    MomentKind,
    hermite_hadamard_check,
    integrate,
    kernel_identity_residual,
    moment_integral_numeric,
    sconvexity_probe,
)


def test_integrate_polynomial():
    res = integrate(lambda x: x**3, Interval(0.0, 2.0))
    assert res.value == pytest.approx(4.0, abs=1e-12)
    assert res.abs_error_estimate <= 1e-10
    assert res.evaluations > 0


def test_integrate_with_kink_breakpoint():
    res = integrate(lambda x: abs(x - 0.3), Interval(0.0, 1.0), points=(0.3, 5.0))
    assert res.value == pytest.approx(0.045 + 0.245, abs=1e-13)


def test_integrate_reports_failure():
    with pytest.raises(OracleError) as info:
        integrate(lambda x: 1.0 / x, Interval(0.0, 1.0), tol=1e-12, max_subintervals=5)
    assert math.isfinite(info.value.abs_error) or math.isinf(info.value.abs_error)


def test_integrate_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        integrate(lambda x: x, Interval(0.0, 1.0), tol=0.0)


def test_moment_kernel_beyond_range():
    # alpha*lam > 1 - alpha: the kernel never changes sign
    alpha, lam = 0.8, 0.9
    c = alpha * lam
    exact = c * 0.2 - 0.2**2 / 2
    assert moment_integral_numeric(MomentKind.ABS, alpha, lam) == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize(
    "g, s, iv, concave, passed",
    [
        (lambda x: np.sqrt(x), 0.5, Interval(0.0, 4.0), False, True),
        (lambda x: x**2, 1.0, Interval(0.0, 3.0), False, True),
        (lambda x: np.sqrt(x), 1.0, Interval(0.0, 4.0), True, True),
        (lambda x: np.sqrt(x), 1.0, Interval(0.0, 4.0), False, False),
        (lambda x: -x * x, 1.0, Interval(0.0, 2.0), False, False),
        (lambda x: 1.0 + 0.0 * x, 0.5, Interval(0.0, 1.0), True, False),
    ],
)
def test_sconvexity_probe(g, s, iv, concave, passed):
    verdict = sconvexity_probe(g, s, iv, n=21, concave=concave)
    assert verdict.passed is passed
    if not passed:
        x, y, w = verdict.witness
        assert iv.a <= x <= iv.b and iv.a <= y <= iv.b and 0.0 <= w <= 1.0
        assert verdict.excess > 0.0


def test_probe_accepts_scalar_only_callables():
    assert sconvexity_probe(lambda x: math.sqrt(x), 0.5, Interval(0.0, 1.0), n=9).passed


def test_probe_needs_nonnegative_interval():
    with pytest.raises(DomainError):
        sconvexity_probe(lambda x: x * x, 1.0, Interval(-1.0, 1.0))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([f.id for f in zoo.catalog()]),
    st.floats(0.0, 1.0),
    st.floats(0.0, 1.0),
    st.floats(0.0, 1.0),
    st.floats(0.05, 1.0),
)
def test_kernel_identity(fid, alpha, lam, u, w):
    f = zoo.lookup(fid)
    lo, hi = f.domain.a, f.domain.b
    a = lo + u * (hi - lo) * 0.9
    b = min(hi, a + w * (hi - a))
    if b <= a:
        return
    assert kernel_identity_residual(f, RuleParams(alpha, lam), Interval(a, b)) <= 1e-8


def test_hermite_hadamard_sharp_for_sqrt():
    f = zoo.make_power_s(1.0, 0.5)
    hh = hermite_hadamard_check(f, 0.5, Interval(0.0, 1.0))
    assert hh.mean == pytest.approx(2 / 3, abs=1e-12)
    assert hh.upper == pytest.approx(2 / 3, abs=1e-12)
    assert hh.lower == pytest.approx(0.5, abs=1e-12)
    assert hh.ordered or hh.mean - hh.upper < 1e-12


@pytest.mark.parametrize("fid", ["power-s0.5", "power-s0.3-beta2"])
@pytest.mark.parametrize("a, b", [(0.0, 1.0), (0.5, 3.0), (2.0, 9.0)])
def test_hermite_hadamard_ordering(fid, a, b):
    f = zoo.lookup(fid)
    hh = hermite_hadamard_check(f, f.certificate.s, Interval(a, b))
    assert hh.lower <= hh.mean + 1e-12
    assert hh.mean <= hh.upper + 1e-12
