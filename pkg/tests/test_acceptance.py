"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary so they show up in a plain ``pytest`` run.
"""

import subprocess
import sys
import time

from quadcert import harness, means, zoo
from quadcert.bounds import Interval, RuleParams, holder_moments
from quadcert.bounds.moments import c1, gamma2
from quadcert.oracle import hermite_hadamard_check

RESULTS: dict[int, str] = {}


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_1_coefficients_match_quadrature():
    t0 = time.perf_counter()
    rows = harness.coefficient_campaign(steps=20)
    worst = max(r.error for r in rows)
    spots = [
        abs(gamma2(0.5, 1 / 3) - 5 / 72),
        abs(c1(0.5, 1 / 3, 1.0) - 29 / 1296),
        abs(holder_moments(RuleParams(0.5, 1 / 3), 2.0).eps1 - 1 / 24),
    ]
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and max(spots) <= 1e-12 and elapsed < 10.0
    record(1, "coefficient oracle", ok,
           f"{len(rows)} comparisons, max diff {worst:.2e}, spot diff {max(spots):.1e}, {elapsed:.2f}s")


def test_2_soundness_fuzz():
    t0 = time.perf_counter()
    rep = harness.fuzz_verify(harness.FuzzConfig(trials=10_000, seed=2024, tol=1e-8))
    elapsed = time.perf_counter() - t0
    methods = {r.method for r in rep.rows}
    ok = (
        rep.trials_run == 10_000
        and not rep.violations
        and not rep.failures
        and methods == set(harness.GENERAL_METHODS)
        and elapsed < 30.0
    )
    record(2, "soundness fuzz", ok,
           f"{rep.trials_run} trials, {len(rep.violations)} violations, "
           f"max ratio {rep.tightness_stats[2]:.4f}, {elapsed:.2f}s")


def test_3_s1_reduction():
    rep = harness.reduction_check(seed=2024, tol=1e-12)
    rows = [r for r in rep.rows if r.label == "s=1 power-mean vs convex case"]
    bad = [r for r in rows if not r.ok]
    ok = len(rows) == 9 * 9 * 3 and not bad
    worst = max(abs(r.value - r.reference) for r in rows)
    record(3, "s=1 reduction", ok, f"{len(rows)} grid points, {len(bad)} mismatches, max diff {worst:.2e}")


def test_4_specializations():
    rep = harness.reduction_check(seed=2024, tol=1e-12)
    rows = [r for r in rep.rows if r.label != "s=1 power-mean vs convex case"]
    bad = [r for r in rows if not r.ok]
    labels = {r.label for r in rows}
    ok = not bad and len(labels) >= 12
    record(4, "specialization equalities", ok,
           f"{len(rows)} checks over {len(labels)} forms, {len(bad)} mismatches")


def test_5_kernel_identity():
    res = harness.identity_campaign(configs=100, seed=2024)
    worst = max(r for _, _, r in res)
    fns = {fid for fid, _, _ in res}
    ok = worst <= 1e-8 and fns == {f.id for f in zoo.catalog()}
    record(5, "kernel identity", ok, f"{len(res)} configurations over {len(fns)} functions, max residual {worst:.2e}")


def test_6_hermite_hadamard_sharpness():
    f = zoo.make_power_s(1.0, 0.5)
    hh = hermite_hadamard_check(f, 0.5, Interval(0.0, 1.0))
    ok = (
        abs(hh.mean - 2 / 3) <= 1e-12
        and abs(hh.upper - 2 / 3) <= 1e-12
        and abs(hh.lower - 0.5) <= 1e-12
        and hh.lower <= hh.upper
    )
    record(6, "Hermite-Hadamard sharpness", ok,
           f"lower {hh.lower:.15g}, mean {hh.mean:.15g}, upper {hh.upper:.15g}")


def test_7_improvements():
    coeff = harness.coefficient_inequalities(100)
    broken = [s for s, a, b in coeff if not (a and b)]
    rows = harness.tightness_compare()
    anomalies = [r for r in rows if r.anomaly]
    ok = not broken
    record(7, "improvement over earlier bounds", ok,
           f"{len(coeff) - len(broken)}/{len(coeff)} coefficient inequalities hold, "
           f"{len(anomalies)} anomalies in {len(rows)} bound comparisons")


def test_8_propositions():
    t0 = time.perf_counter()
    res = means.proposition_sweep()
    elapsed = time.perf_counter() - t0
    failed = [g for _, g, r in res if not r.holds]
    ok = not failed and elapsed < 10.0
    record(8, "mean inequalities", ok, f"{len(res)} grid points, {len(failed)} failures, {elapsed:.2f}s")


def test_9_determinism(tmp_path):
    paths = [tmp_path / "run1.csv", tmp_path / "run2.csv"]
    codes = []
    for path in paths:
        proc = subprocess.run(
            [sys.executable, "-m", "quadcert", "verify", "--trials", "1000", "--seed", "7",
             "--format", "csv", "--csv", str(path)],
            capture_output=True,
        )
        codes.append(proc.returncode)
    one, two = (p.read_bytes() for p in paths)
    ok = codes == [0, 0] and one == two and one.count(b"\n") == 1001
    record(9, "determinism", ok, f"exit codes {codes}, {len(one)} bytes, identical={one == two}")
