import math

import pytest

from quadcert import harness
from quadcert.bounds import DerivativeData, Interval, Method
from quadcert.errors import ConfigError, DomainError


def test_fuzz_is_deterministic():
    cfg = harness.FuzzConfig(trials=200, seed=3)
    one, two = harness.fuzz_verify(cfg), harness.fuzz_verify(cfg)
    assert one.rows == two.rows
    assert one.rows != harness.fuzz_verify(harness.FuzzConfig(trials=200, seed=4)).rows


def test_fuzz_small_campaign_clean():
    rep = harness.fuzz_verify(harness.FuzzConfig(trials=500, seed=11))
    assert rep.trials_run == 500
    assert rep.passed and not rep.failures
    lo, med, hi = rep.tightness_stats
    assert 0.0 <= lo <= med <= hi <= 1.0
    assert rep.worst_case["trial"] in {r.trial for r in rep.rows}


def test_fuzz_pins_boundary_parameters():
    rep = harness.fuzz_verify(harness.FuzzConfig(trials=400, seed=1))
    pinned = [r for r in rep.rows if (r.trial + 1) % 100 == 0]
    assert len(pinned) == 4
    assert {(r.alpha, r.lam) for r in pinned} == {(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.0, 0.0)}


def test_fuzz_respects_restrictions():
    cfg = harness.FuzzConfig(trials=100, seed=2, function_ids=("square",), methods=(Method.HOLDER_CONVEX,), q_set=(2.0,))
    rep = harness.fuzz_verify(cfg)
    assert {r.fn for r in rep.rows} == {"square"}
    assert {r.method for r in rep.rows} == {Method.HOLDER_CONVEX}
    assert {r.q for r in rep.rows} == {2.0}


def test_convex_s_sampled_below_certificate():
    cfg = harness.FuzzConfig(trials=200, seed=5, function_ids=("power1-s0.4-q2",))
    rep = harness.fuzz_verify(cfg)
    assert all(r.s <= 0.8 for r in rep.rows)


def test_concave_s_is_certificate_value():
    cfg = harness.FuzzConfig(trials=50, seed=5, function_ids=("sqrt-deriv",))
    assert all(r.s == 1.0 and r.q > 1.0 for r in harness.fuzz_verify(cfg).rows)


def test_incompatible_pairing_rejected():
    with pytest.raises(ConfigError, match="sqrt-deriv"):
        harness.fuzz_pairings(harness.FuzzConfig(function_ids=("sqrt-deriv",), methods=(Method.POWER_MEAN,)))


def test_concave_needs_s_one_in_range():
    with pytest.raises(ConfigError):
        harness.fuzz_pairings(harness.FuzzConfig(function_ids=("log-deriv",), s_range=(0.1, 0.9)))


def test_function_level_certificates_not_fuzzable():
    with pytest.raises(ConfigError):
        harness.fuzz_pairings(harness.FuzzConfig(function_ids=("power-s0.5",)))


def test_unknown_function_rejected():
    with pytest.raises(DomainError):
        harness.fuzz_pairings(harness.FuzzConfig(function_ids=("nope",)))


@pytest.mark.parametrize(
    "kw",
    [
        {"trials": 0},
        {"alpha_range": (0.5, 0.2)},
        {"lambda_range": (0.0, 1.5)},
        {"s_range": (0.0, 1.0)},
        {"q_set": (0.5,)},
        {"methods": (Method.CLASSIC_CONVEX,)},
    ],
)
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        harness.FuzzConfig(**kw)


def test_violation_detection_with_false_bound(monkeypatch):
    from quadcert.bounds import Bound

    def tiny(*args, **kw):
        return Bound.build(Method.POWER_MEAN, None, [("term:x", 1e-6)])

    monkeypatch.setattr(harness, "bound_for", tiny)
    rep = harness.fuzz_verify(harness.FuzzConfig(trials=20, seed=0, methods=(Method.POWER_MEAN,),
                                                 function_ids=("square",)))
    assert not rep.passed
    v = rep.violations[0]
    assert v.gap == pytest.approx(v.lhs - v.rhs)


def test_reduction_check_clean():
    rep = harness.reduction_check(seed=4)
    assert rep.passed
    labels = {r.label for r in rep.rows}
    assert "s=1 power-mean vs convex case" in labels
    assert sum(r.label == "s=1 power-mean vs convex case" for r in rep.rows) == 9 * 9 * 3


def test_reduction_check_catches_mismatch():
    out = harness._Collector(1e-12)
    out.add("x", {}, 1.0, 1.0 + 1e-9)
    assert not out.report().passed


def test_tightness_compare_default_grid():
    rows = harness.tightness_compare()
    assert rows and not any(r.anomaly for r in rows)
    assert {(r.alpha, r.lam) for r in rows} == {(0.5, 0.0), (0.5, 1.0)}


def test_tightness_compare_flags_anomaly():
    # no real anomaly exists; a negative slack makes equality count as one
    pt = harness.GridPoint(1.0, 1.0, DerivativeData(1.0, 1.0), Interval(0.0, 1.0))
    rows = harness.tightness_compare([pt], slack=-1e-3)
    assert rows[0].ratio == pytest.approx(1.0) and rows[0].anomaly


def test_coefficient_inequalities_hold():
    assert all(a and b for _, a, b in harness.coefficient_inequalities(100))


def test_ratio_edge_cases():
    assert harness.ratio(0.0, 0.0) == 0.0
    assert math.isinf(harness.ratio(1.0, 0.0))
