"""Value types for the three-point quadrature error bounds.

All types are frozen dataclasses validated at construction, so any instance
that exists satisfies its invariants.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import DomainError

#: Smallest accepted convexity exponent; ``t**s`` kernels degrade below it.
S_MIN = 1e-6


def _finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a = _finite("a", self.a)
        b = _finite("b", self.b)
        if not a < b:
            raise DomainError(f"interval needs a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def nonneg(self) -> bool:
        return self.a >= 0.0

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def require_nonneg(self, why: str = "s-convexity") -> None:
        if not self.nonneg:
            raise DomainError(f"{why} is defined on [0, inf); got a = {self.a}")

    def contains(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b


@dataclass(frozen=True)
class RuleParams:
    """Weights of the three-point rule.

    ``alpha`` places the interior node at ``alpha*a + (1-alpha)*b`` and splits
    the endpoint weights; ``lam`` blends endpoint and interior evaluations.
    ``(1/2, 0)`` is the midpoint rule, ``(1/2, 1)`` the trapezoid rule and
    ``(1/2, 1/3)`` Simpson's rule.
    """

    alpha: float
    lam: float

    def __post_init__(self):
        for name in ("alpha", "lam"):
            x = _finite(name, getattr(self, name))
            if not 0.0 <= x <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {x}")
            object.__setattr__(self, name, x)

    def mirrored(self) -> "RuleParams":
        """Parameters ``(1 - alpha, lam)`` describing the right-hand kernel."""
        return RuleParams(1.0 - self.alpha, self.lam)

    def node(self, iv: Interval) -> float:
        return self.alpha * iv.a + (1.0 - self.alpha) * iv.b


class Mode(enum.Enum):
    S_CONVEX = "s-convex"
    S_CONCAVE = "s-concave"


@dataclass(frozen=True)
class ConvexityClass:
    """Hypothesis on ``|f'|**q``: s-convex or s-concave with exponent ``s``."""

    s: float
    q: float
    mode: Mode = Mode.S_CONVEX

    def __post_init__(self):
        s = _finite("s", self.s)
        q = _finite("q", self.q)
        if not S_MIN <= s <= 1.0:
            raise DomainError(f"s must lie in [{S_MIN:g}, 1], got {s}")
        if q < 1.0:
            raise DomainError(f"q must be >= 1, got {q}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def p(self) -> float:
        """Conjugate exponent ``q/(q-1)``; infinite for ``q == 1``."""
        if self.q == 1.0:
            return math.inf
        return self.q / (self.q - 1.0)

    def require_holder(self) -> None:
        if not self.q > 1.0:
            raise DomainError(f"Hoelder-type bounds need q > 1, got q = {self.q}")


@dataclass(frozen=True)
class DerivativeData:
    """Magnitudes ``|f'|`` at the nodes the bounds consume.

    ``d_mix`` is taken at the rule's interior node ``alpha*a + (1-alpha)*b``;
    ``d_lo`` and ``d_hi`` at the midpoints of ``[a, node]`` and ``[node, b]``.
    """

    d_a: float
    d_b: float
    d_mix: Optional[float] = None
    d_lo: Optional[float] = None
    d_hi: Optional[float] = None

    def __post_init__(self):
        for name in ("d_a", "d_b", "d_mix", "d_lo", "d_hi"):
            x = getattr(self, name)
            if x is None:
                continue
            x = _finite(name, x)
            if x < 0.0:
                raise DomainError(f"{name} must be >= 0, got {x}")
            object.__setattr__(self, name, x)

    def need(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise DomainError(f"derivative data lacks {', '.join(missing)}")

    @classmethod
    def from_derivative(cls, deriv, params: RuleParams, iv: Interval) -> "DerivativeData":
        """Sample ``|deriv|`` at every node any bound may need."""
        a, b, al = iv.a, iv.b, params.alpha
        return cls(
            d_a=abs(float(deriv(a))),
            d_b=abs(float(deriv(b))),
            d_mix=abs(float(deriv(params.node(iv)))),
            d_lo=abs(float(deriv(((1.0 - al) * b + (1.0 + al) * a) / 2.0))),
            d_hi=abs(float(deriv(((2.0 - al) * b + al * a) / 2.0))),
        )


@dataclass(frozen=True)
class MomentSet:
    """Closed-form kernel moments for the power-mean bound.

    ``gamma1``/``c3``/``c4`` describe the branch ``alpha*lam >= 1-alpha`` and
    ``gamma2``/``c1``/``c2`` the branch ``alpha*lam <= 1-alpha``. Off-branch
    values are returned as computed and may be negative.
    """

    gamma1: float
    gamma2: float
    c1: float
    c2: float
    c3: float
    c4: float


@dataclass(frozen=True)
class HolderMoments:
    """``eps1`` and ``eps2``; the off-branch one is NaN unless on the boundary."""

    eps1: float
    eps2: float


class Case(enum.Enum):
    """Ordering of ``alpha*lam``, ``1-alpha`` and ``1-lam*(1-alpha)``."""

    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class CaseInfo:
    case: Case
    applicable: tuple[Case, ...]
    left_tie: bool  # alpha*lam == 1 - alpha
    right_tie: bool  # lam*(1-alpha) == alpha

    @property
    def on_boundary(self) -> bool:
        return len(self.applicable) > 1


class Method(enum.Enum):
    POWER_MEAN = "power-mean"
    HOLDER_CONVEX = "holder-convex"
    HOLDER_CONCAVE = "holder-concave"
    # earlier results the new bounds are compared against
    CLASSIC_CONVEX = "classic-convex"
    CLASSIC_MIDPOINT = "classic-midpoint"
    CLASSIC_MIDPOINT_HOLDER = "classic-midpoint-holder"
    CLASSIC_SIMPSON_HOLDER = "classic-simpson-holder"
    CLASSIC_TRAPEZOID_HOLDER = "classic-trapezoid-holder"


@dataclass(frozen=True)
class Bound:
    """A computed right-hand side with an auditable breakdown.

    ``components`` holds labelled numbers. Labels starting with ``factor:``
    multiply, labels starting with ``term:`` add, and ``value`` is their
    product times sum. Any other label is informational.
    """

    value: float
    method: Method
    case_id: Optional[Case]
    components: tuple[tuple[str, float], ...]
    cases_evaluated: tuple[Case, ...] = ()
    candidates: tuple["Bound", ...] = field(default=(), compare=False)

    @staticmethod
    def recombine(components) -> float:
        prod = 1.0
        total = 0.0
        for label, x in components:
            if label.startswith("factor:"):
                prod *= x
            elif label.startswith("term:"):
                total += x
        return prod * total

    @classmethod
    def build(cls, method, case_id, components, **kw) -> "Bound":
        components = tuple((str(k), float(v)) for k, v in components)
        value = cls.recombine(components)
        if not value >= 0.0:
            raise DomainError(f"{method.value} bound evaluated to {value!r}")
        return cls(value, method, case_id, components, **kw)

    def component(self, label: str) -> float:
        for k, v in self.components:
            if k == label:
                return v
        raise KeyError(label)
