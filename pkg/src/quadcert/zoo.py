"""Test functions with exact derivatives and certified convexity metadata.

Every catalogued function is checked when the catalog is first built: its
derivative against central differences and its certificate against
:func:`quadcert.oracle.sconvexity_probe`.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .bounds.types import ConvexityClass, DerivativeData, Interval, Mode, RuleParams
from .errors import DomainError
from .oracle import integrate, sconvexity_probe


class Target(enum.Enum):
    F = "f"  # the certificate is about f itself
    ABS_DERIV_POW_Q = "abs-deriv-pow-q"  # ... about |f'|**q


@dataclass(frozen=True)
class Certificate:
    """``target`` is s-convex (or s-concave) with exponent ``s``.

    For derivative certificates the statement holds for every exponent in
    ``q_range``; ``q`` is the representative exponent.
    """

    mode: Mode
    s: float
    q: float
    applies_to: Target
    q_range: tuple[float, float] = None

    def __post_init__(self):
        if self.q_range is None:
            object.__setattr__(self, "q_range", (self.q, self.q))

    def admits(self, q: float) -> bool:
        lo, hi = self.q_range
        return lo <= q <= hi

    def admits_s(self, s: float) -> bool:
        # nonnegative s-convex functions are s'-convex for every s' <= s;
        # s-concavity does not transfer (for s < 1 it only admits g == 0)
        if self.mode is Mode.S_CONVEX:
            return 0.0 < s <= self.s
        return s == self.s


@dataclass(frozen=True)
class TestFunction:
    __test__ = False  # not a pytest class

    id: str
    eval: Callable = field(repr=False)
    deriv: Callable = field(repr=False)
    antiderivative: Optional[Callable] = field(repr=False)
    certificate: Certificate
    domain: Interval
    description: str = ""

    def exact_mean_integral(self, iv: Interval) -> Optional[float]:
        if self.antiderivative is None:
            return None
        F = self.antiderivative
        return (float(F(iv.b)) - float(F(iv.a))) / iv.length

    def mean_integral(self, iv: Interval, tol: float = 1e-12) -> float:
        exact = self.exact_mean_integral(iv)
        if exact is not None:
            return exact
        res = integrate(lambda x: float(self.eval(x)), iv, tol=tol, rel_tol=1e-13)
        return res.value / iv.length

    def probe_target(self, q: Optional[float] = None) -> Callable:
        if self.certificate.applies_to is Target.F:
            return self.eval
        q = self.certificate.q if q is None else q
        return lambda x: np.abs(self.deriv(x)) ** q

    def derivative_data(self, params: RuleParams, iv: Interval) -> DerivativeData:
        return DerivativeData.from_derivative(self.deriv, params, iv)

    def convexity_class(self, s: Optional[float] = None, q: Optional[float] = None) -> ConvexityClass:
        cert = self.certificate
        return ConvexityClass(cert.s if s is None else s, cert.q if q is None else q, cert.mode)


# -- families ----------------------------------------------------------------


def make_power_s(beta: float, s: float) -> TestFunction:
    """``beta * t**s`` on ``[0, inf)``, which is s-convex itself."""
    if not beta > 0.0 or not 0.0 < s < 1.0:
        raise DomainError(f"need beta > 0 and s in (0, 1), got beta={beta}, s={s}")
    tag = f"power-s{s:g}" if beta == 1.0 else f"power-s{s:g}-beta{beta:g}"
    return TestFunction(
        id=tag,
        eval=lambda t: beta * np.power(t, s),
        deriv=lambda t: beta * s * np.power(t, s - 1.0),
        antiderivative=lambda t: beta * math.pow(t, s + 1.0) / (s + 1.0),
        certificate=Certificate(Mode.S_CONVEX, s, 1.0, Target.F),
        domain=Interval(0.0, 10.0),
        description=f"{beta:g} t^{s:g}",
    )


def make_power_s1(s: float, q: float = 1.0) -> TestFunction:
    """``t**(s+1)``; ``|f'|**q = (s+1)**q t**(qs)`` is qs-convex when ``qs < 1``."""
    if not 0.0 < s < 1.0 or q < 1.0:
        raise DomainError(f"need s in (0, 1) and q >= 1, got s={s}, q={q}")
    if not q * s < 1.0:
        raise DomainError(f"certificate needs q*s < 1, got q*s = {q * s:g}")
    return TestFunction(
        id=f"power1-s{s:g}-q{q:g}",
        eval=lambda t: np.power(t, s + 1.0),
        deriv=lambda t: (s + 1.0) * np.power(t, s),
        antiderivative=lambda t: math.pow(t, s + 2.0) / (s + 2.0),
        certificate=Certificate(Mode.S_CONVEX, q * s, q, Target.ABS_DERIV_POW_Q),
        domain=Interval(0.0, 10.0),
        description=f"t^{s + 1:g}",
    )


class ConcaveKind(enum.Enum):
    SQRT_DERIV = "sqrt-deriv"
    LOG_DERIV = "log-deriv"


def make_concave_deriv(kind: ConcaveKind) -> TestFunction:
    """Functions whose ``|f'|**q`` is concave (``s = 1``) for ``1 <= q <= 2``."""
    kind = ConcaveKind(kind)
    if kind is ConcaveKind.SQRT_DERIV:
        # |f'|^2 = x is linear
        return TestFunction(
            id=kind.value,
            eval=lambda x: (2.0 / 3.0) * np.power(x, 1.5),
            deriv=lambda x: np.sqrt(x),
            antiderivative=lambda x: (4.0 / 15.0) * math.pow(x, 2.5),
            certificate=Certificate(Mode.S_CONCAVE, 1.0, 2.0, Target.ABS_DERIV_POW_Q, (1.0, 2.0)),
            domain=Interval(0.0, 10.0),
            description="(2/3) x^(3/2)",
        )
    # (ln x)^q is concave where ln x >= q - 1, i.e. on [e, e^3] for q <= 2
    return TestFunction(
        id=kind.value,
        eval=lambda x: x * np.log(x) - x,
        deriv=lambda x: np.log(x),
        antiderivative=lambda x: x * x * math.log(x) / 2.0 - 0.75 * x * x,
        certificate=Certificate(Mode.S_CONCAVE, 1.0, 2.0, Target.ABS_DERIV_POW_Q, (1.0, 2.0)),
        domain=Interval(math.e, math.exp(3.0)),
        description="x ln x - x",
    )


def _convex_derivative(id, eval, deriv, antiderivative, domain, description) -> TestFunction:
    # |f'| convex and >= 0 makes |f'|^q convex for all q >= 1
    return TestFunction(
        id=id,
        eval=eval,
        deriv=deriv,
        antiderivative=antiderivative,
        certificate=Certificate(Mode.S_CONVEX, 1.0, 1.0, Target.ABS_DERIV_POW_Q, (1.0, math.inf)),
        domain=domain,
        description=description,
    )


def _square() -> TestFunction:
    return _convex_derivative(
        "square", lambda x: x * x, lambda x: 2.0 * x, lambda x: x**3 / 3.0,
        Interval(0.0, 10.0), "x^2",
    )


def _cube() -> TestFunction:
    return _convex_derivative(
        "cube", lambda x: x**3, lambda x: 3.0 * x * x, lambda x: x**4 / 4.0,
        Interval(0.0, 5.0), "x^3",
    )


def _exp() -> TestFunction:
    return _convex_derivative(
        "exp", np.exp, np.exp, math.exp, Interval(0.0, 5.0), "e^x",
    )


# -- registration ------------------------------------------------------------


def check_derivative(f: TestFunction, n: int = 100, rtol: float = 1e-6) -> Optional[float]:
    """First interior point where central differences disagree with ``deriv``."""
    lo, hi = f.domain.a, f.domain.b
    pad = 0.01 * (hi - lo)
    for x in np.linspace(lo + pad, hi - pad, n):
        h = 1e-5 * max(1.0, abs(x))
        fd = (float(f.eval(x + h)) - float(f.eval(x - h))) / (2.0 * h)
        d = float(f.deriv(x))
        if abs(fd - d) > rtol * max(1.0, abs(d)):
            return float(x)
    return None


def probe_exponents(cert: Certificate) -> list[float]:
    lo, hi = cert.q_range
    if math.isinf(hi):
        hi = lo + 3.0
    return sorted({lo, cert.q, 0.5 * (lo + hi), hi})


def check_certificate(f: TestFunction, n: int = 41) -> list[tuple[float, object]]:
    """Probe verdicts for each representative exponent; empty when all pass."""
    cert = f.certificate
    concave = cert.mode is Mode.S_CONCAVE
    exps = [None] if cert.applies_to is Target.F else probe_exponents(cert)
    failures = []
    for q in exps:
        verdict = sconvexity_probe(f.probe_target(q), cert.s, f.domain, n=n, concave=concave)
        if not verdict.passed:
            failures.append((q, verdict))
    return failures


def register(f: TestFunction) -> TestFunction:
    bad = check_derivative(f)
    if bad is not None:
        raise DomainError(f"{f.id}: derivative disagrees with finite differences at x = {bad}")
    failures = check_certificate(f)
    if failures:
        raise DomainError(f"{f.id}: certificate rejected by probe: {failures[0]}")
    return f


@functools.lru_cache(maxsize=None)
def _catalog() -> tuple[TestFunction, ...]:
    entries = [
        make_power_s(1.0, 0.5),
        make_power_s(2.0, 0.3),
        make_power_s1(0.4, 2.0),
        make_power_s1(0.2, 3.0),
        make_power_s1(0.3, 1.0),
        make_power_s1(0.45, 1.5),
        make_concave_deriv(ConcaveKind.SQRT_DERIV),
        make_concave_deriv(ConcaveKind.LOG_DERIV),
        _square(),
        _cube(),
        _exp(),
    ]
    return tuple(register(f) for f in entries)


def catalog() -> list[TestFunction]:
    """All registered functions, validated on first use."""
    return list(_catalog())


def lookup(fn_id: str) -> TestFunction:
    for f in _catalog():
        if f.id == fn_id:
            return f
    known = ", ".join(f.id for f in _catalog())
    raise DomainError(f"unknown function id {fn_id!r}; known: {known}")


def derivative_certified() -> list[TestFunction]:
    return [f for f in _catalog() if f.certificate.applies_to is Target.ABS_DERIV_POW_Q]
